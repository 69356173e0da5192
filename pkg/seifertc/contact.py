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
Contact surgery presentations of M(-1; r1, r2, r3) and their rotation data.

The presentation is a Legendrian torus link T(5,-5) with two contact (+1)
components and three (-1) components, one per leg, followed by a chain of
Legendrian unknots per leg. Rotation numbers are listed per G vertex outside
the centre: the torus link component of leg i, then its chain outward.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from seifertc.globals import (FAMILY_CAPTION_RATIOS, FAMILY_CEILING, FAMILY_GROUPED_RATIOS, LSPACE_THRESHOLD,
                              TORUS_KNOT)
from seifertc.plumbing import SeifertData, as_vector, check_characteristic, spinc_key, standard_graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SurgeryPresentation:
    """tb numbers of the surgery diagram; the two (+1) unknots are counted, not listed."""
    torus_link_tb: Tuple[int, ...]
    leg_tb: Tuple[Tuple[int, ...], ...]
    plus_one_count: int = 2

    @property
    def components(self) -> List[int]:
        """tb of every enumerated component, in rotation-vector order."""
        out = []
        for t, chain in zip(self.torus_link_tb[self.plus_one_count:], self.leg_tb):
            out.append(t)
            out.extend(chain)
        return out

    def record(self) -> dict:
        return {'torus_link_tb': list(self.torus_link_tb), 'leg_tb': [list(c) for c in self.leg_tb],
                'plus_one_count': self.plus_one_count}


def ls_presentation(data: SeifertData) -> SurgeryPresentation:
    """
    tb data of the surgery presentation of M(-1; r1, r2, r3).

    Leg i with framings (m_1, ..., m_k) puts tb = m_1 on the i-th (-1)
    component of the torus link and a chain of k - 1 unknots with tb
    m_2 + 1, ..., m_k + 1.
    """
    if data.e0 != -1 or data.n != 3:
        raise ValueError(f'surgery presentation needs M(-1; r1, r2, r3), got {data}')
    legs = standard_graph(data).legs
    return SurgeryPresentation(torus_link_tb=(-1, -1) + tuple(leg[0] for leg in legs),
                               leg_tb=tuple(tuple(m + 1 for m in leg[1:]) for leg in legs))


def rotation_range(t: int) -> List[int]:
    """Rotation numbers of a Legendrian unknot with tb = t: t+1, t+3, ..., -t-1."""
    if t > -1:
        raise ValueError(f'tb must be at most -1, got {t}')
    return list(range(t + 1, -t, 2))


def rotation_ranges(p: SurgeryPresentation) -> List[List[int]]:
    return [rotation_range(t) for t in p.components]


@dataclass(frozen=True)
class StructureCandidate:
    """A rotation assignment on the presentation of `data`, with its characteristic vector on G."""
    data: SeifertData
    rotations: Tuple[int, ...]
    k_vector: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'rotations', tuple(int(r) for r in self.rotations))
        object.__setattr__(self, 'k_vector', k_vector_of(self.data, self.rotations))

    def record(self) -> dict:
        return {'seifert': str(self.data), 'rotations': list(self.rotations)}


def _first_leg_vertices(data: SeifertData) -> List[int]:
    graph = standard_graph(data)
    return [graph.leg_vertices(i)[0] for i in range(data.n)]


def k_vector_of(data: SeifertData, rotations: Sequence[int]) -> np.ndarray:
    """
    Characteristic vector on G with centre coordinate 1.

    The first vertex of each leg carries the rotation of its torus link
    component minus one; chain vertices carry their rotation.

    Raises:
        ValueError: if a rotation is outside its range.
    """
    p = ls_presentation(data)
    components = p.components
    if len(rotations) != len(components):
        raise ValueError(f'expected {len(components)} rotations, got {len(rotations)}')
    for i, (r, t) in enumerate(zip(rotations, components), start=1):
        if r not in rotation_range(t):
            raise ValueError(f'rotation {r} of component {i} is outside the range for tb {t}')
    K = np.array([1] + [int(r) for r in rotations], dtype=np.int64)
    K[np.array(_first_leg_vertices(data)) - 1] -= 1
    return check_characteristic(K, standard_graph(data))


def k_vector(c: StructureCandidate) -> np.ndarray:
    return c.k_vector.copy()


def candidate_from_k_vector(data: SeifertData, K) -> StructureCandidate:
    """
    Inverse of k_vector: read rotations back from a vector on G.

    Raises:
        ValueError: if the centre coordinate is not 1 or a rotation is out of range.
    """
    K = as_vector(K)
    graph = standard_graph(data)
    if len(K) != graph.size:
        raise ValueError(f'vector has {len(K)} coordinates but G has {graph.size} vertices')
    if K[0] != 1:
        raise ValueError(f'centre coordinate must be 1, got {K[0]}')
    rotations = K[1:].copy()
    rotations[np.array(_first_leg_vertices(data)) - 2] += 1
    return StructureCandidate(data, tuple(int(r) for r in rotations))


def conjugate(c: StructureCandidate) -> StructureCandidate:
    """All rotations negated; k_vector(conjugate(c)) = -k_vector(c) - 2 Q e_1."""
    return StructureCandidate(c.data, tuple(-r for r in c.rotations))


def enumerate_candidates(data: SeifertData, spinc_filter=None) -> Iterator[StructureCandidate]:
    """
    Every rotation assignment within range, in lexicographic order.

    Args:
        - data (SeifertData): M(-1; r1, r2, r3).
        - spinc_filter: optional characteristic vector on G; only candidates in its
          Spin^c class are returned.
    """
    graph = standard_graph(data)
    key = None if spinc_filter is None else spinc_key(spinc_filter, graph)
    emitted = 0
    for rotations in itertools.product(*rotation_ranges(ls_presentation(data))):
        candidate = StructureCandidate(data, rotations)
        if key is not None and spinc_key(candidate.k_vector, graph) != key:
            continue
        emitted += 1
        yield candidate
    logger.debug(f'{emitted} candidates on {data}')


def candidate_count(data: SeifertData) -> int:
    return int(np.prod([len(r) for r in rotation_ranges(ls_presentation(data))]))


def complementary_legs(data: SeifertData) -> bool:
    """True iff two distinct legs have ratios summing to 1."""
    return any(a + b == 1 for a, b in itertools.combinations(data.ratios, 2))


# The S^3_k(T(8,13)) family

def torus_surgery_seifert(k: int, grouped: bool = False) -> SeifertData:
    """
    Seifert data of k-surgery on T(8,13): M(-1; 3/8, 8/13, 1/(104-k)).

    With grouped=True the first two legs are swapped, (8/13, 3/8, ...), which
    is the leg order the family's displayed vectors K_k, C_k and V_k use.
    """
    if k >= FAMILY_CEILING:
        raise ValueError(f'k must be below {FAMILY_CEILING}, got {k}')
    ratios = FAMILY_GROUPED_RATIOS if grouped else FAMILY_CAPTION_RATIOS
    return SeifertData(-1, tuple(ratios) + (Fraction(1, FAMILY_CEILING - k),))


def family_parameter(data: SeifertData) -> Optional[int]:
    """k if data is S^3_k(T(8,13)) with the legs in any order, otherwise None."""
    if data.e0 != -1 or data.n != 3:
        return None
    rest = list(data.ratios)
    for r in FAMILY_CAPTION_RATIOS:
        if r not in rest:
            return None
        rest.remove(r)
    last = rest[0]
    if last.numerator != 1:
        return None
    return FAMILY_CEILING - last.denominator


def brieskorn_label(k: int) -> str:
    p, q = TORUS_KNOT
    if k == -1:
        return f'Sigma({p},{q},{p * q + 1})'
    if k == 1:
        return f'-Sigma({p},{q},{p * q - 1})'
    return f'S^3_{k}(T({p},{q}))'


def is_lspace_family(k: int) -> bool:
    return k >= LSPACE_THRESHOLD
