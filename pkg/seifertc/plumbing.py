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
Seifert data, negative continued fractions and star-shaped plumbing graphs.

Vertex numbering is 1-based everywhere in the public API: vertex 1 is the
centre, then every leg in the declared order, each from the centre outward.
"""
import logging
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from seifertc.errors import NotCharacteristicError, ParseError
from seifertc.utils import determinant, is_negative_definite_matrix, lattice_residue, smith_form, format_rational

logger = logging.getLogger(__name__)


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or 'p' (unicode minus accepted)."""
    cleaned = text.strip().replace('−', '-').strip('()')
    if not re.fullmatch(r'[+-]?\d+(/[+-]?\d+)?', cleaned):
        raise ParseError(f'not a rational number: {text!r}')
    try:
        return Fraction(cleaned)
    except ZeroDivisionError:
        raise ParseError(f'zero denominator in {text!r}')


@dataclass(frozen=True)
class SeifertData:
    """
    Normalised Seifert invariants M(e0; r_1, ..., r_n) with every r_i in (0, 1).

    Textual form is 'e0;p1/q1,p2/q2,...', e.g. '-1;3/8,8/13,1/69'.
    """
    e0: int
    ratios: Tuple[Fraction, ...] = field(default_factory=tuple)

    def __post_init__(self):
        ratios = tuple(Fraction(r) for r in self.ratios)
        if not ratios:
            raise ValueError('Seifert data needs at least one ratio')
        for r in ratios:
            if not 0 < r < 1:
                raise ValueError(f'ratio {r} is outside the open interval (0, 1)')
        object.__setattr__(self, 'e0', int(self.e0))
        object.__setattr__(self, 'ratios', ratios)

    @property
    def n(self) -> int:
        return len(self.ratios)

    @classmethod
    def from_string(cls, text: str) -> 'SeifertData':
        cleaned = text.strip().replace('−', '-').replace(' ', '')
        if cleaned.startswith('M('):
            cleaned = cleaned[1:]
        cleaned = cleaned.strip('()')
        if ';' not in cleaned:
            raise ParseError(f'expected "e0;p1/q1,..." but got {text!r}')
        head, tail = cleaned.split(';', 1)
        if not re.fullmatch(r'[+-]?\d+', head):
            raise ParseError(f'Euler weight must be an integer, got {head!r}')
        if not tail:
            raise ParseError(f'no ratios given in {text!r}')
        ratios = tuple(parse_rational(part) for part in tail.split(','))
        try:
            return cls(int(head), ratios)
        except ValueError as e:
            raise ParseError(str(e))

    def __str__(self) -> str:
        return f'{self.e0};' + ','.join(format_rational(r) for r in self.ratios)

    def record(self) -> dict:
        return {'e0': self.e0, 'ratios': [format_rational(r) for r in self.ratios]}


# Negative continued fractions

def leg_framings(r) -> List[int]:
    """
    Framings of the leg attached for the ratio r in (0, 1).

    This is the expansion -1/r = m_1 - 1/(m_2 - 1/(... - 1/m_s)) with every
    m_i <= -2, which is unique.

    Args:
        - r (Fraction): ratio strictly between 0 and 1.

    Returns:
        - list of framings m_1, ..., m_s, from the centre outward.
    """
    r = Fraction(r)
    if not 0 < r < 1:
        raise ValueError(f'ratio {r} is outside the open interval (0, 1)')
    x = 1 / r
    entries = []
    while True:
        a = math.ceil(x)
        entries.append(-a)
        if a == x:
            return entries
        x = 1 / (a - x)


def evaluate_negcf(entries: Sequence[int]) -> Fraction:
    """Value of m_1 - 1/(m_2 - 1/(... - 1/m_s))."""
    if not entries:
        raise ValueError('empty continued fraction')
    value = Fraction(entries[-1])
    for m in reversed(entries[:-1]):
        value = m - 1 / value
    return value


def riemenschneider_points(entries: Sequence[int]) -> int:
    """Number of dots in the point diagram of an expansion: sum of (-m_i - 1)."""
    return sum(-m - 1 for m in entries)


# Plumbing graphs

@dataclass(frozen=True)
class PlumbingGraph:
    """
    Star-shaped plumbing graph.

    Legs are stored from the vertex adjacent to the centre outward. The graph is
    hashable so that derived data (matrix, Smith form) can be cached per graph.
    """
    center_framing: int
    legs: Tuple[Tuple[int, ...], ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, 'center_framing', int(self.center_framing))
        object.__setattr__(self, 'legs', tuple(tuple(int(m) for m in leg) for leg in self.legs))
        if any(len(leg) == 0 for leg in self.legs):
            raise ValueError('legs must contain at least one vertex')

    @property
    def size(self) -> int:
        return 1 + sum(len(leg) for leg in self.legs)

    @property
    def framings(self) -> Tuple[int, ...]:
        return (self.center_framing,) + tuple(m for leg in self.legs for m in leg)

    @property
    def groups(self) -> List[int]:
        """Group sizes for display: the centre, then one group per leg."""
        return [1] + [len(leg) for leg in self.legs]

    def leg_vertices(self, leg: int) -> List[int]:
        """1-based vertex indices of leg number `leg` (0-based)."""
        start = 2 + sum(len(l) for l in self.legs[:leg])
        return list(range(start, start + len(self.legs[leg])))

    def edges(self) -> List[Tuple[int, int]]:
        out = []
        for i in range(len(self.legs)):
            previous = 1
            for v in self.leg_vertices(i):
                out.append((previous, v))
                previous = v
        return out

    def degree(self, v: int) -> int:
        if v == 1:
            return len(self.legs)
        if not 1 < v <= self.size:
            raise IndexError(f'vertex {v} is not in a graph of size {self.size}')
        for i in range(len(self.legs)):
            vertices = self.leg_vertices(i)
            if v in vertices:
                return 1 if v == vertices[-1] else 2

    def record(self) -> dict:
        return {'center': self.center_framing, 'legs': [list(leg) for leg in self.legs]}


def standard_graph(data: SeifertData) -> PlumbingGraph:
    return PlumbingGraph(data.e0, tuple(tuple(leg_framings(r)) for r in data.ratios))


def dual_seifert(data: SeifertData) -> SeifertData:
    """Seifert data of the orientation reversal: (-e0 - n; 1 - r_1, ..., 1 - r_n)."""
    return SeifertData(-data.e0 - data.n, tuple(1 - r for r in data.ratios))


def permute_legs(data: SeifertData, order: Sequence[int]) -> SeifertData:
    """Same manifold with the ratios listed in a different order (0-based permutation)."""
    if sorted(order) != list(range(data.n)):
        raise ValueError(f'{order} is not a permutation of the legs')
    return SeifertData(data.e0, tuple(data.ratios[i] for i in order))


def permute_vector(v, g: PlumbingGraph, order: Sequence[int]) -> np.ndarray:
    """Re-index a vector on g to the graph whose legs are taken in `order`."""
    v = as_vector(v)
    pieces = [v[:1]] + [v[np.array(g.leg_vertices(i)) - 1] for i in order]
    return np.concatenate(pieces)


@lru_cache(maxsize=256)
def _matrix(g: PlumbingGraph) -> np.ndarray:
    Q = np.diag(np.array(g.framings, dtype=np.int64))
    for a, b in g.edges():
        Q[a - 1, b - 1] = Q[b - 1, a - 1] = 1
    Q.setflags(write=False)
    return Q


def intersection_matrix(g: PlumbingGraph) -> np.ndarray:
    """
    Integer intersection matrix Q of g: framings on the diagonal, 1 for every
    edge, 0 elsewhere. A fresh copy is returned on every call.
    """
    return _matrix(g).copy()


def as_vector(values) -> np.ndarray:
    return np.array([int(x) for x in values], dtype=np.int64)


def is_characteristic(v, g: PlumbingGraph) -> bool:
    """
    True iff v_i = m(i) (mod 2) for every vertex.

    Raises:
        NotCharacteristicError: if the length of v is not |g|.
    """
    v = as_vector(v)
    if len(v) != g.size:
        raise NotCharacteristicError(f'vector has {len(v)} coordinates but the graph has {g.size} vertices')
    return bool(np.all((v - np.array(g.framings)) % 2 == 0))


def check_characteristic(v, g: PlumbingGraph) -> np.ndarray:
    """Return v as an integer array, raising NotCharacteristicError unless it is characteristic."""
    if not is_characteristic(v, g):
        raise NotCharacteristicError(f'{list(as_vector(v))} is not characteristic on {g.record()}')
    return as_vector(v)


@lru_cache(maxsize=256)
def _smith_data(g: PlumbingGraph):
    S, D, T, S_inv = smith_form(_matrix(g))
    return S_inv, D


def spinc_key(v, g: PlumbingGraph) -> Tuple[int, ...]:
    """
    Hashable label of the Spin^c class of a characteristic vector.

    Two characteristic vectors share a label iff their difference is 2 Q x for
    an integer vector x.
    """
    v = check_characteristic(v, g)
    reference = np.array(g.framings) % 2
    x = (v - reference) // 2
    S_inv, D = _smith_data(g)
    return lattice_residue(S_inv, D, x)


def spinc_keys(vectors, g: PlumbingGraph) -> List[Tuple[int, ...]]:
    """spinc_key for every row of a 2D array of characteristic vectors at once."""
    V = np.asarray(vectors, dtype=np.int64).reshape(-1, g.size)
    reference = np.array(g.framings, dtype=np.int64) % 2
    if np.any((V - reference) % 2 != 0):
        raise NotCharacteristicError(f'not every vector is characteristic on {g.record()}')
    S_inv, D = _smith_data(g)
    Y = ((V - reference) // 2).astype(object) @ S_inv.T
    diag = [D[i, i] for i in range(g.size)]
    return [tuple(int(c) % abs(int(d)) if d != 0 else int(c) for c, d in zip(row, diag)) for row in Y]


def same_spinc(v, w, g: PlumbingGraph) -> bool:
    return spinc_key(v, g) == spinc_key(w, g)


def graph_determinant(g: PlumbingGraph) -> int:
    return determinant(_matrix(g))


def spinc_class_count(g: PlumbingGraph) -> int:
    """|det Q|, the number of Spin^c classes; 0 stands for infinitely many."""
    return abs(graph_determinant(g))


def count_bad_vertices(g: PlumbingGraph) -> int:
    """Vertices whose framing satisfies -m(v) < degree(v)."""
    return sum(1 for v, m in enumerate(g.framings, start=1) if -m < g.degree(v))


def is_negative_definite(g: PlumbingGraph) -> bool:
    return is_negative_definite_matrix(_matrix(g))
