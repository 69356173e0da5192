###############################################################################
#                                                                             #
#    This program is free software: you can redistribute it and/or modify     #
#    it under the terms of the GNU General Public License as published by     #
#    the Free Software Foundation, either version 3 of the License, or        #
#    (at your option) any later version.                                      #
#                                                                             #
#    This program is distributed in the hope that it will be useful,          #
#    but WITHOUT ANY WARRANTY; without even the implied warranty of           #
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the            #
#    GNU General Public License for more details.                             #
#                                                                             #
#    You should have received a copy of the GNU General Public License        #
#    along with this program. If not, see <http://www.gnu.org/licenses/>.     #
#                                                                             #
###############################################################################
"""
Exact linear algebra on integer matrices.

Matrices are numpy arrays with dtype=object so that entries stay Python ints or
Fractions; nothing here touches floating point.
"""
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from seifertc.errors import DegenerateFormError


def as_fraction_matrix(A) -> np.ndarray:
    """Copy of A with every entry converted to Fraction."""
    A = np.asarray(A)
    out = np.empty(A.shape, dtype=object)
    for idx, value in np.ndenumerate(A):
        out[idx] = Fraction(int(value)) if not isinstance(value, Fraction) else value
    return out


def _forward_eliminate(X: np.ndarray, Y: np.ndarray = None) -> int:
    """
    In-place Gaussian elimination to upper triangular form.

    Rows below the pivot are only touched where they have a non-zero entry in
    the pivot column, which keeps plumbing matrices (trees) cheap.

    Returns:
        - sign (int): +1/-1 for the row swaps performed, 0 if a zero pivot
          stopped the elimination.
    """
    n = X.shape[0]
    sign = 1
    for i in range(n):
        if X[i, i] == 0:
            for j in range(i + 1, n):
                if X[j, i] != 0:
                    X[[i, j]] = X[[j, i]]
                    if Y is not None:
                        Y[[i, j]] = Y[[j, i]]
                    sign = -sign
                    break
            else:
                return 0
        for j in range(i + 1, n):
            if X[j, i] != 0:
                f = X[j, i] / X[i, i]
                X[j, i:] = X[j, i:] - f * X[i, i:]
                if Y is not None:
                    Y[j] = Y[j] - f * Y[i]
    return sign


def determinant(A) -> int:
    """Exact determinant of a square integer matrix."""
    X = as_fraction_matrix(A)
    n = X.shape[0]
    if n == 0:
        return 1
    sign = _forward_eliminate(X)
    if sign == 0:
        return 0
    det = Fraction(sign)
    for i in range(n):
        det *= X[i, i]
    assert det.denominator == 1
    return int(det)


def symmetric_pivots(A) -> List[Fraction]:
    """
    Pivots of symmetric elimination without row exchanges (the D of A = L D L^T).

    Stops early at a zero pivot, so a short list means A is not definite.
    """
    X = as_fraction_matrix(A)
    n = X.shape[0]
    pivots = []
    for i in range(n):
        if X[i, i] == 0:
            break
        pivots.append(X[i, i])
        for j in range(i + 1, n):
            if X[j, i] != 0:
                f = X[j, i] / X[i, i]
                X[j, i:] = X[j, i:] - f * X[i, i:]
    return pivots


def is_negative_definite_matrix(A) -> bool:
    n = np.asarray(A).shape[0]
    pivots = symmetric_pivots(A)
    return len(pivots) == n and all(p < 0 for p in pivots)


def solve(A, b) -> np.ndarray:
    """
    Solve A x = b exactly.

    Raises:
        DegenerateFormError: if A is singular.
    """
    X = as_fraction_matrix(A)
    n = X.shape[0]
    Y = as_fraction_matrix(np.asarray(b).reshape(n, -1))
    if _forward_eliminate(X, Y) == 0:
        raise DegenerateFormError('matrix is not invertible')
    x = np.empty(Y.shape, dtype=object)
    for i in range(n - 1, -1, -1):
        acc = Y[i].copy()
        for j in range(i + 1, n):
            if X[i, j] != 0:
                acc = acc - X[i, j] * x[j]
        x[i] = acc / X[i, i]
    return x.reshape(np.asarray(b).shape)


def inverse(A) -> np.ndarray:
    n = np.asarray(A).shape[0]
    return solve(A, np.eye(n, dtype=int))


def inverse_quadratic_form(A, v) -> Fraction:
    """v^T A^-1 v."""
    x = solve(A, v)
    return sum((Fraction(int(a)) * b for a, b in zip(v, x)), Fraction(0))


# Smith-type normal form

def exgcd(a: int, b: int) -> np.ndarray:
    """
    Extended gcd as a row operation.

    Returns a 2x2 integer matrix M with det M = 1 and M @ [a, b] = [gcd(a, b), 0].
    """
    a_sign = -1 if a < 0 else 1
    b_sign = -1 if b < 0 else 1
    a, b = a * a_sign, b * b_sign
    M = np.array([[b, 0, 1],
                  [a, 1, 0]], dtype=object)
    while M[1, 0] != 0:
        q = M[0, 0] // M[1, 0]
        M[0] -= q * M[1]
        M = M[::-1]
    g = M[0, 0]
    M = M[:, 1:] * np.array([a_sign, b_sign], dtype=object)
    if g != 0:
        M[1] = [-b_sign * b // g, a_sign * a // g]
    else:
        M = np.eye(2, dtype=object)
    return M


def _inverse_2x2(M: np.ndarray) -> np.ndarray:
    return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]], dtype=object)


def smith_form(A) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Diagonalise an integer matrix by unimodular row and column operations.

    Returns (S, D, T, S_inv) with A == S @ D @ T, D diagonal, S and T of
    determinant 1 and S @ S_inv == I. The diagonal is not normalised to the
    divisibility chain; membership questions only need a diagonal form.
    """
    A = np.asarray(A)
    D = A.astype(object).copy()
    rows, cols = D.shape
    S = np.eye(rows, dtype=object)
    S_inv = np.eye(rows, dtype=object)
    T = np.eye(cols, dtype=object)

    def clear_col(i):
        if (D[i + 1:, i] == 0).all():
            return False
        for j in range(i + 1, rows):
            if D[j, i] == 0:
                continue
            M = exgcd(D[i, i], D[j, i])
            D[[i, j]] = M @ D[[i, j]]
            S[:, [i, j]] = S[:, [i, j]] @ _inverse_2x2(M)
            S_inv[[i, j]] = M @ S_inv[[i, j]]
        return True

    def clear_row(i):
        if (D[i, i + 1:] == 0).all():
            return False
        for j in range(i + 1, cols):
            if D[i, j] == 0:
                continue
            M = exgcd(D[i, i], D[i, j]).T
            D[:, [i, j]] = D[:, [i, j]] @ M
            T[[i, j]] = _inverse_2x2(M) @ T[[i, j]]
        return True

    for i in range(min(rows, cols)):
        clear_col(i)
        while clear_row(i) and clear_col(i):
            pass
    assert (S @ D @ T == A).all()
    return S, D, T, S_inv


def lattice_residue(S_inv: np.ndarray, D: np.ndarray, x) -> Tuple[int, ...]:
    """
    Class of the integer vector x in Z^n / A Z^n, given A's Smith data.

    Coordinates of S_inv @ x are reduced modulo the diagonal; a zero diagonal
    entry keeps the coordinate as it is.
    """
    y = S_inv @ np.asarray(x, dtype=object)
    diag = [D[i, i] if i < min(D.shape) else 0 for i in range(len(y))]
    return tuple(int(c) % abs(int(d)) if d != 0 else int(c) for c, d in zip(y, diag))


# Formatting

def format_rational(q) -> str:
    q = Fraction(q)
    return f'{q.numerator}/{q.denominator}'


def format_grouped(values, groups) -> str:
    """
    Grouped display of a vector, e.g. '1 | -2 -1 -1 | 1 -1 | 67'.

    groups is a list of group sizes summing to len(values); long runs of zeros
    are shortened to 0^n.
    """
    out, start = [], 0
    for size in groups:
        chunk = [int(x) for x in values[start:start + size]]
        start += size
        out.append(' '.join(_compress_zeros(chunk)))
    return ' | '.join(c for c in out if c)


def _compress_zeros(chunk: List[int]) -> List[str]:
    tokens, run = [], 0
    for x in chunk + [None]:
        if x == 0:
            run += 1
            continue
        if run > 3:
            tokens.append(f'0^{run}')
        else:
            tokens.extend(['0'] * run)
        run = 0
        if x is not None:
            tokens.append(str(x))
    return tokens
