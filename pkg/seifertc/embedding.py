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
Blow-up bookkeeping in CP^2 # N(-CP^2) and the magic C vector.

Homology classes are written a h + sum b_i e_i with h^2 = 1, e_i^2 = -1. The
standard graph G of M(-1; r_1, ..., r_n) and the standard graph G* of the
orientation reversal are realised as disjoint configurations of curves; a
characteristic vector K on G is extended to a class alpha h + sum alpha_i e_i
with every sign in {+1, -1}, and its restriction to G* is the magic C.
"""
import itertools
import logging
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from seifertc.errors import ScheduleError, UnsatisfiableError
from seifertc.globals import MAX_BRUTE_FORCE_BLOWUPS
from seifertc.plumbing import (SeifertData, as_vector, check_characteristic, dual_seifert, intersection_matrix,
                               standard_graph)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomologyClass:
    """a h + sum_i b_i e_i; e-coefficients past the end of the tuple are zero."""
    h: int
    e: Tuple[int, ...] = ()

    def coefficient(self, i: int) -> int:
        """Coefficient of e_i (1-based)."""
        return self.e[i - 1] if 1 <= i <= len(self.e) else 0

    def pairing(self, other: 'HomologyClass') -> int:
        return self.h * other.h - sum(a * b for a, b in zip(self.e, other.e))

    def minus(self, i: int) -> 'HomologyClass':
        """This class minus e_i."""
        e = list(self.e) + [0] * max(0, i - len(self.e))
        e[i - 1] -= 1
        return HomologyClass(self.h, tuple(e))

    @classmethod
    def exceptional(cls, i: int) -> 'HomologyClass':
        return cls(0, (0,) * (i - 1) + (1,))

    def padded(self, n: int) -> List[int]:
        return list(self.e) + [0] * (n - len(self.e))

    def __str__(self) -> str:
        terms = [] if self.h == 0 else [f'{self.h}h']
        terms += [f'{b:+d}e{i}' for i, b in enumerate(self.e, start=1) if b != 0]
        return ' '.join(terms) if terms else '0'


class Role(Enum):
    G_VERTEX = 'G'
    DUAL_VERTEX = 'G*'
    CONSUMED = 'consumed'


@dataclass(frozen=True)
class Curve:
    name: str
    cls: HomologyClass
    role: Role = Role.CONSUMED
    position: Optional[int] = None


@dataclass(frozen=True)
class BlowupConfiguration:
    """
    Named curves in CP^2 blown up N times.

    Every move returns a new configuration; instances are never mutated.
    """
    curves: Tuple[Curve, ...]
    n_blowups: int

    def curve(self, name: str) -> Curve:
        for c in self.curves:
            if c.name == name:
                return c
        raise KeyError(name)

    def pairing(self, a: str, b: str) -> int:
        return self.curve(a).cls.pairing(self.curve(b).cls)

    def _with(self, updates: Dict[str, Curve], extra: Sequence[Curve] = (), n_blowups: int = None) -> 'BlowupConfiguration':
        curves = tuple(updates.get(c.name, c) for c in self.curves) + tuple(extra)
        return BlowupConfiguration(curves, self.n_blowups if n_blowups is None else n_blowups)

    def tag(self, name: str, role: Role, position: Optional[int] = None) -> 'BlowupConfiguration':
        return self._with({name: replace(self.curve(name), role=role, position=position)})

    def tagged(self, role: Role) -> List[Curve]:
        """Curves with the given role, sorted by vertex position."""
        return sorted((c for c in self.curves if c.role is role), key=lambda c: c.position)

    def gram(self, role: Role, other: Optional[Role] = None) -> np.ndarray:
        rows = self.tagged(role)
        cols = rows if other is None else self.tagged(other)
        return np.array([[a.cls.pairing(b.cls) for b in cols] for a in rows], dtype=np.int64).reshape(len(rows), len(cols))

    def record(self) -> dict:
        return {
            'N': self.n_blowups,
            'curves': [{'name': c.name, 'role': c.role.value, 'position': c.position, 'h': c.cls.h,
                        'e': c.cls.padded(self.n_blowups)} for c in self.curves],
        }


def init_configuration(n_legs: int) -> BlowupConfiguration:
    """
    n lines through a point p plus a line l missing p, after blowing up p.

    The lines l1..ln become h - e1 (square 0), the exceptional curve e1 has
    square -1 and l = h keeps square +1.
    """
    if n_legs < 1:
        raise ValueError('need at least one line through the base point')
    lines = tuple(Curve(f'l{i}', HomologyClass(1, (-1,))) for i in range(1, n_legs + 1))
    curves = lines + (Curve('e1', HomologyClass.exceptional(1)), Curve('l', HomologyClass(1, ())))
    return BlowupConfiguration(curves, 1)


def blow_up_intersection(cfg: BlowupConfiguration, a: str, b: str) -> Tuple[BlowupConfiguration, str]:
    """
    Blow up a transverse intersection point of curves a and b.

    Both classes lose the new e_N, their pairing and both squares drop by one,
    and a new (-1)-curve e_N meeting each of them once is added.

    Returns:
        - the new configuration and the name of the new exceptional curve.

    Raises:
        ValueError: if a and b do not intersect.
    """
    if cfg.pairing(a, b) < 1:
        raise ValueError(f'curves {a} and {b} are disjoint')
    n = cfg.n_blowups + 1
    name = f'e{n}'
    ca, cb = cfg.curve(a), cfg.curve(b)
    updated = {a: replace(ca, cls=ca.cls.minus(n)), b: replace(cb, cls=cb.cls.minus(n))}
    logger.debug(f'blow up {a} x {b} -> {name}')
    return cfg._with(updated, [Curve(name, HomologyClass.exceptional(n))], n), name


def blow_up_point_on(cfg: BlowupConfiguration, a: str) -> Tuple[BlowupConfiguration, str]:
    """Blow up a generic point of curve a; only a's square changes."""
    n = cfg.n_blowups + 1
    name = f'e{n}'
    ca = cfg.curve(a)
    return cfg._with({a: replace(ca, cls=ca.cls.minus(n))}, [Curve(name, HomologyClass.exceptional(n))], n), name


def _leg_moves(g_target: Sequence[int], d_target: Sequence[int]) -> List[str]:
    """
    Blow-up moves that grow the pair ([-2], [-2]) into (g_target, d_target).

    Move 'g' blows up the junction curve against the last vertex of the G side
    (which loses one from its framing) and appends a -2 to the dual side; move
    'd' does the same with the roles exchanged. The moves are recovered by
    undoing them from the target.
    """
    g, d = list(g_target), list(d_target)
    moves = []
    while not (g == [-2] and d == [-2]):
        g_grew = len(g) > 1 and g[-1] == -2
        d_grew = len(d) > 1 and d[-1] == -2
        if g_grew == d_grew:
            raise ScheduleError(f'legs {list(g_target)} and {list(d_target)} are not dual expansions')
        if g_grew:
            g.pop()
            d[-1] += 1
            moves.append('d')
        else:
            d.pop()
            g[-1] += 1
            moves.append('g')
        if g[-1] > -2 or d[-1] > -2:
            raise ScheduleError(f'legs {list(g_target)} and {list(d_target)} are not dual expansions')
    return moves[::-1]


@lru_cache(maxsize=64)
def build_embedding(data: SeifertData) -> BlowupConfiguration:
    """
    Realise the standard graphs of M and -M as disjoint curve configurations.

    The centre of G is the exceptional curve e1, the centre of G* is the line
    l after it has been blown up once at each l_i. Each leg then starts from
    l_i and the exceptional curve of l x l_i, and grows by the dual chain moves
    of _leg_moves. The configuration is checked against both standard graphs
    before it is returned.

    Raises:
        ValueError: if e0 != -1.
        ScheduleError: if a post-condition fails; carries the configuration.
    """
    if data.e0 != -1:
        raise ValueError(f'embedding needs e0 = -1, got {data.e0}')
    graph, dual = standard_graph(data), standard_graph(dual_seifert(data))
    cfg = init_configuration(data.n)
    cfg = cfg.tag('e1', Role.G_VERTEX, 1).tag('l', Role.DUAL_VERTEX, 1)

    first_dual = []
    for i in range(1, data.n + 1):
        cfg, name = blow_up_intersection(cfg, f'l{i}', 'l')
        first_dual.append(name)

    for i, (line, start) in enumerate(zip(range(1, data.n + 1), first_dual)):
        g_chain, d_chain = [f'l{line}'], [start]
        cfg, junction = blow_up_intersection(cfg, g_chain[0], d_chain[0])
        for move in _leg_moves(graph.legs[i], dual.legs[i]):
            side = g_chain if move == 'g' else d_chain
            other = d_chain if move == 'g' else g_chain
            cfg, new_junction = blow_up_intersection(cfg, junction, side[-1])
            other.append(junction)
            junction = new_junction
        for name, v in zip(g_chain, graph.leg_vertices(i)):
            cfg = cfg.tag(name, Role.G_VERTEX, v)
        for name, v in zip(d_chain, dual.leg_vertices(i)):
            cfg = cfg.tag(name, Role.DUAL_VERTEX, v)

    _check_embedding(cfg, graph, dual)
    logger.info(f'embedded {data}: |G| = {graph.size}, |G*| = {dual.size}, N = {cfg.n_blowups}')
    return cfg


def _check_embedding(cfg: BlowupConfiguration, graph, dual) -> None:
    if not np.array_equal(cfg.gram(Role.G_VERTEX), intersection_matrix(graph)):
        raise ScheduleError('G curves do not realise the standard graph', cfg)
    if not np.array_equal(cfg.gram(Role.DUAL_VERTEX), intersection_matrix(dual)):
        raise ScheduleError('G* curves do not realise the dual standard graph', cfg)
    if np.any(cfg.gram(Role.G_VERTEX, Role.DUAL_VERTEX) != 0):
        raise ScheduleError('G and G* curves intersect', cfg)
    if 1 + cfg.n_blowups != graph.size + dual.size:
        raise ScheduleError(f'rank mismatch: 1 + {cfg.n_blowups} != {graph.size} + {dual.size}', cfg)


# Sign assignments

@dataclass(frozen=True)
class SignAssignment:
    alpha: int
    alphas: Tuple[int, ...]

    def evaluate(self, cls: HomologyClass) -> int:
        """alpha h(v) - sum_i alpha_i e_i(v)."""
        return self.alpha * cls.h - sum(a * b for a, b in zip(self.alphas, cls.e))

    def negated(self) -> 'SignAssignment':
        return SignAssignment(-self.alpha, tuple(-a for a in self.alphas))

    def record(self) -> dict:
        return {'alpha': self.alpha, 'alphas': list(self.alphas)}


def _constraints(cfg: BlowupConfiguration, K) -> List[Tuple[Dict[int, int], int]]:
    """One linear equation per G vertex over the variables (alpha, alpha_1, ..., alpha_N)."""
    out = []
    for curve, target in zip(cfg.tagged(Role.G_VERTEX), K):
        coeffs = {0: curve.cls.h} if curve.cls.h else {}
        coeffs.update({i: -b for i, b in enumerate(curve.cls.e, start=1) if b})
        out.append((coeffs, int(target)))
    return out


class _SignSearch:
    """Depth-first search with unit propagation, smallest value (-1) first."""

    def __init__(self, n_vars: int, constraints):
        self.n_vars = n_vars
        self.constraints = constraints
        self.values = [0] * n_vars
        self.watch = [[] for _ in range(n_vars)]
        for ci, (coeffs, _) in enumerate(constraints):
            for var in coeffs:
                self.watch[var].append(ci)

    def _status(self, ci: int):
        coeffs, target = self.constraints[ci]
        residual, free = target, []
        for var, c in coeffs.items():
            if self.values[var]:
                residual -= c * self.values[var]
            else:
                free.append((var, c))
        slack = sum(abs(c) for _, c in free)
        ok = abs(residual) <= slack and (slack - residual) % 2 == 0
        return ok, residual, slack, free

    def _propagate(self, queue: List[int], trail: List[int]) -> bool:
        while queue:
            ci = queue.pop()
            ok, residual, slack, free = self._status(ci)
            if not ok:
                return False
            if free and abs(residual) == slack:
                sign = 1 if residual > 0 else -1
                for var, c in free:
                    self.values[var] = sign * (1 if c > 0 else -1)
                    trail.append(var)
                    queue.extend(self.watch[var])
        return True

    def _undo(self, trail: List[int]) -> None:
        for var in trail:
            self.values[var] = 0

    def run(self) -> bool:
        if not self._propagate(list(range(len(self.constraints))), []):
            return False
        return self._search(0)

    def _search(self, var: int) -> bool:
        while var < self.n_vars and self.values[var]:
            var += 1
        if var == self.n_vars:
            return True
        for value in (-1, 1):
            trail = [var]
            self.values[var] = value
            if self._propagate(list(self.watch[var]), trail) and self._search(var + 1):
                return True
            self._undo(trail)
        return False


def solve_signs(cfg: BlowupConfiguration, K) -> SignAssignment:
    """
    Lexicographically smallest (alpha, alpha_1, ..., alpha_N) in {-1, +1}
    with alpha h(v) - sum alpha_i e_i(v) = K_v for every G vertex v.

    Raises:
        UnsatisfiableError: if no such signs exist.
    """
    K = as_vector(K)
    n_vertices = len(cfg.tagged(Role.G_VERTEX))
    if n_vertices != len(K):
        raise ValueError(f'K has {len(K)} coordinates but G has {n_vertices} vertices')
    constraints = _constraints(cfg, K)
    search = _SignSearch(cfg.n_blowups + 1, constraints)
    if not search.run():
        raise UnsatisfiableError(f'{list(K)} does not extend to a sign assignment')
    # variables in no constraint stay at the smallest value
    values = [v or -1 for v in search.values]
    return SignAssignment(values[0], tuple(values[1:]))


def enumerate_sign_solutions(cfg: BlowupConfiguration, K) -> List[SignAssignment]:
    """Every sign assignment restricting to K, by exhaustive search (small N only)."""
    if cfg.n_blowups > MAX_BRUTE_FORCE_BLOWUPS:
        raise ValueError(f'brute force is limited to N <= {MAX_BRUTE_FORCE_BLOWUPS}, got {cfg.n_blowups}')
    K = as_vector(K)
    n = cfg.n_blowups
    rows = [[c.cls.h] + [-b for b in c.cls.padded(n)] for c in cfg.tagged(Role.G_VERTEX)]
    A = np.array(rows, dtype=np.int64)
    signs = np.array(list(itertools.product((-1, 1), repeat=n + 1)), dtype=np.int64)
    hits = np.flatnonzero(np.all(signs @ A.T == K, axis=1))
    return [SignAssignment(int(signs[i, 0]), tuple(int(x) for x in signs[i, 1:])) for i in hits]


def restrict(cfg: BlowupConfiguration, signs: SignAssignment, role: Role = Role.DUAL_VERTEX) -> np.ndarray:
    """Values of the extended class on the curves of one role, in vertex order."""
    return as_vector(signs.evaluate(c.cls) for c in cfg.tagged(role))


def magic_c(data: SeifertData, K, signs: Optional[SignAssignment] = None) -> np.ndarray:
    """
    Magic C on the dual standard graph for the characteristic vector K on G.

    Raises:
        NotCharacteristicError: if K is not characteristic on G.
        UnsatisfiableError: if K admits no sign assignment.
    """
    K = check_characteristic(K, standard_graph(data))
    cfg = build_embedding(data)
    if signs is None:
        signs = solve_signs(cfg, K)
    C = restrict(cfg, signs)
    return check_characteristic(C, standard_graph(dual_seifert(data)))
