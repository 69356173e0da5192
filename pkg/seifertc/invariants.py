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
Tightness and vanishing decisions built from magic C and the full path.

Nothing here computes Floer homology. c_hat_nonzero is the full-path test on
the magic C, the c+ verdict checks the computable links of the grading-gap
inequality chain, and classify_tight groups candidates on L-spaces by the
full path of their magic C.
"""
import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from multiprocessing.dummy import Pool as ThreadPool
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from seifertc.contact import (StructureCandidate, candidate_from_k_vector, complementary_legs, conjugate,
                              enumerate_candidates, family_parameter, is_lspace_family, torus_surgery_seifert)
from seifertc.embedding import build_embedding, magic_c
from seifertc.errors import CapExceededError, DegenerateFormError, UnsatisfiableError
from seifertc.fullpath import canonical_form, ends_correctly, full_path_equiv, grading
from seifertc.globals import (DEFAULT_TIE_BREAK, DEFAULT_WALK_CAP, FAMILY_CEILING, FAMILY_GRADING_SHIFT,
                              GRADING_BOUND, GRADING_GAP_RANGE, INDEFINITE_SHIFT, MAX_SEARCH_VECTORS)
from seifertc.plumbing import (SeifertData, as_vector, dual_seifert, is_negative_definite, permute_legs,
                               permute_vector, same_spinc, spinc_key, spinc_keys, standard_graph)
from seifertc.utils import format_rational

logger = logging.getLogger(__name__)


class CPlusStatus(Enum):
    ZERO_BY_DEFINITENESS = 'ZeroByDefiniteness'
    ZERO_BY_GRADING_GAP = 'ZeroByGradingGap'
    UNDETERMINED = 'Undetermined'
    ZERO_EXTERNALLY_JUSTIFIED = 'ZeroExternallyJustified'


# Closed forms for S^3_k(T(8,13)), legs in grouped order (8/13, 3/8, 1/(104-k))

def family_graphs(k: int):
    """(G, G*) of the grouped family member."""
    data = torus_surgery_seifert(k, grouped=True)
    return standard_graph(data), standard_graph(dual_seifert(data))


def build_Kk(k: int) -> np.ndarray:
    """(1 | -2 -1 -1 | 1 -1 | 102-k) on G."""
    if k > FAMILY_CEILING - 2:
        raise ValueError(f'K_k needs k <= {FAMILY_CEILING - 2}, got {k}')
    return as_vector([1, -2, -1, -1, 1, -1, FAMILY_CEILING - 2 - k])


def build_Ck(k: int) -> np.ndarray:
    """(-2 | -1 -1 0 | 2 1 -2 | 2 0^(102-k)) on G*."""
    if k > FAMILY_CEILING - 2:
        raise ValueError(f'C_k needs k <= {FAMILY_CEILING - 2}, got {k}')
    return as_vector([-2, -1, -1, 0, 2, 1, -2, 2] + [0] * (FAMILY_CEILING - 2 - k))


def build_Vk(k: int) -> np.ndarray:
    """(1, 0, -1, -1, -1, -1, 52 - k(1 + 2 floor(36/k))) on G, for 1 <= k <= 35."""
    low, high = GRADING_GAP_RANGE
    if not low <= k <= high:
        raise ValueError(f'V_k is defined for {low} <= k <= {high}, got {k}')
    return as_vector([1, 0, -1, -1, -1, -1, 52 - k * (1 + 2 * (36 // k))])


def closed_form_grading(k: int) -> Fraction:
    """(-k^2 + 153k - 5184)/(4k)."""
    if k == 0:
        raise ValueError('the closed form has a pole at k = 0')
    return Fraction(-k * k + 153 * k - 5184, 4 * k)


def family_candidate(k: int, conjugated: bool = False) -> StructureCandidate:
    """The structure xi_k read off K_k (or its conjugate)."""
    c = candidate_from_k_vector(torus_surgery_seifert(k, grouped=True), build_Kk(k))
    return conjugate(c) if conjugated else c


def family_structure(c: StructureCandidate) -> Optional[int]:
    """k when c is xi_k or its conjugate on S^3_k(T(8,13)), legs in any order."""
    k = family_parameter(c.data)
    if k is None or k > FAMILY_CEILING - 2:
        return None
    grouped = torus_surgery_seifert(k, grouped=True)
    graph = standard_graph(c.data)
    for order in itertools.permutations(range(c.data.n)):
        if permute_legs(c.data, order) != grouped:
            continue
        K = permute_vector(c.k_vector, graph, order)
        for target in (family_candidate(k), family_candidate(k, conjugated=True)):
            if np.array_equal(K, target.k_vector):
                return k
    return None


# Decisions

def tight_certificate(C, dual_graph, cap: int = DEFAULT_WALK_CAP) -> bool:
    """The full path of a magic C ends correctly."""
    return ends_correctly(C, dual_graph, cap)


def c_hat_nonzero(c: StructureCandidate, cap: int = DEFAULT_WALK_CAP) -> bool:
    """
    Combinatorial surrogate of c_hat != 0: the magic C of the candidate's
    characteristic vector has a full path that ends correctly on G*.
    """
    C = magic_c(c.data, c.k_vector)
    return tight_certificate(C, standard_graph(dual_seifert(c.data)), cap)


@dataclass
class CPlusVerdict:
    status: CPlusStatus
    chain: List[Tuple[str, Fraction]] = field(default_factory=list)
    assumptions: List[str] = field(default_factory=list)
    note: str = ''


_CHAIN_ASSUMPTIONS = [
    '-min over S of M(V) < d: correction-term bound with odd d - M(V), not computed here',
]


def c_plus_verdict(k: int, cap: int = DEFAULT_WALK_CAP, tie_break: str = DEFAULT_TIE_BREAK) -> CPlusVerdict:
    """
    Vanishing of c+ for xi_k on S^3_k(T(8,13)).

    k <= -1: G is negative definite, so c+ = rho*(c_hat) = 0.
    1 <= k <= 35: checks M(C_k) < -15/2 < -M_G(V_k) exactly, that V_k lies in
    the Spin^c class of K_k on G and that its full path ends correctly there.
    A failed check gives Undetermined.
    k = 0: c+ = 0 holds on external grounds and is only reported.
    """
    high = GRADING_GAP_RANGE[1]
    if k > high:
        raise ValueError(f'the c+ argument covers k <= {high}, got {k}')
    graph, dual = family_graphs(k)
    if k == 0:
        return CPlusVerdict(CPlusStatus.ZERO_EXTERNALLY_JUSTIFIED,
                            note='k = 0: C_0 is non-torsion on the boundary; not computed')
    if k < 0:
        if is_negative_definite(graph):
            return CPlusVerdict(CPlusStatus.ZERO_BY_DEFINITENESS, note='G is negative definite')
        return CPlusVerdict(CPlusStatus.UNDETERMINED, note='G is not negative definite')

    m_c = grading(build_Ck(k), dual, FAMILY_GRADING_SHIFT)
    bound = -grading(build_Vk(k), graph, INDEFINITE_SHIFT)
    chain = [('M(C_k)', m_c), ('bound', GRADING_BOUND), ('-M_G(V_k)', bound)]
    failures = []
    if not m_c < GRADING_BOUND:
        failures.append(f'M(C_k) = {format_rational(m_c)} is not below {format_rational(GRADING_BOUND)}')
    if not GRADING_BOUND < bound:
        failures.append(f'-M_G(V_k) = {format_rational(bound)} is not above {format_rational(GRADING_BOUND)}')
    if not same_spinc(build_Vk(k), build_Kk(k), graph):
        failures.append('V_k is not in the Spin^c class of K_k on G')
    try:
        if not ends_correctly(build_Vk(k), graph, cap, tie_break):
            failures.append('the full path of V_k does not end correctly')
    except CapExceededError:
        failures.append(f'the full path of V_k exceeded {cap} steps')
    if failures:
        logger.warning(f'c+ chain failed at k = {k}: ' + '; '.join(failures))
        return CPlusVerdict(CPlusStatus.UNDETERMINED, chain, list(_CHAIN_ASSUMPTIONS), '; '.join(failures))
    return CPlusVerdict(CPlusStatus.ZERO_BY_GRADING_GAP, chain, list(_CHAIN_ASSUMPTIONS))


@dataclass
class GradingEstimate:
    value: Fraction
    argmin: np.ndarray
    n_searched: int
    n_in_class: int
    n_ending: int


def min_grading_estimate(k: int, cap: int = 2000, tie_break: str = DEFAULT_TIE_BREAK) -> GradingEstimate:
    """
    Bounded search for min M_G(V) over V in the Spin^c class of K_k whose full
    path ends correctly on G.

    Searches every characteristic vector with coordinates in [m(i), -m(i) - 2],
    together with V_k when it is in the class. Walks that hit the cap are left out.
    """
    graph, _ = family_graphs(k)
    m = np.array(graph.framings, dtype=np.int64)
    ranges = [range(mi, -mi - 1, 2) for mi in m]
    n_searched = int(np.prod([len(r) for r in ranges]))
    if n_searched > MAX_SEARCH_VECTORS:
        raise ValueError(f'{n_searched} vectors exceed the search limit of {MAX_SEARCH_VECTORS}')
    box = np.array(list(itertools.product(*ranges)), dtype=np.int64)
    target = spinc_key(build_Kk(k), graph)
    members = [v for v, key in zip(box, spinc_keys(box, graph)) if key == target]
    if spinc_key(build_Vk(k), graph) == target:
        members.append(build_Vk(k))

    best, best_v, n_ending = None, None, 0
    for v in members:
        try:
            if not ends_correctly(v, graph, cap, tie_break):
                continue
        except CapExceededError:
            logger.debug(f'skipping {list(v)}: cap reached')
            continue
        n_ending += 1
        value = grading(v, graph, INDEFINITE_SHIFT)
        if best is None or value < best:
            best, best_v = value, v
    logger.info(f'k = {k}: {len(members)} of {n_searched} box vectors in class, {n_ending} end correctly')
    return GradingEstimate(best, best_v, n_searched, len(members), n_ending)


# Reports

@dataclass
class InvariantReport:
    seifert: str
    rotations: List[int]
    c_hat_nonzero: bool
    c_plus_status: CPlusStatus
    grading_of_C: Optional[Fraction]
    bound_chain: List[Tuple[str, Fraction]]
    fillability_obstructed: bool
    conjugate_distinct: Optional[bool]
    notes: List[str] = field(default_factory=list)

    def record(self) -> dict:
        return {
            'seifert': self.seifert,
            'rotations': list(self.rotations),
            'c_hat_nonzero': self.c_hat_nonzero,
            'c_plus_status': self.c_plus_status.value,
            'grading_of_C': None if self.grading_of_C is None else format_rational(self.grading_of_C),
            'bound_chain': [{'label': label, 'value': format_rational(v)} for label, v in self.bound_chain],
            'fillability_obstructed': self.fillability_obstructed,
            'conjugate_distinct': self.conjugate_distinct,
            'notes': list(self.notes),
        }


def full_report(c: StructureCandidate, cap: int = DEFAULT_WALK_CAP) -> InvariantReport:
    """Every decision available for one candidate."""
    data = c.data
    dual = standard_graph(dual_seifert(data))
    C = magic_c(data, c.k_vector)
    notes = []

    c_hat = tight_certificate(C, dual, cap)
    k = family_structure(c)
    if k is not None and k <= GRADING_GAP_RANGE[1]:
        verdict = c_plus_verdict(k, cap)
        notes.extend(verdict.assumptions)
        if verdict.note:
            notes.append(verdict.note)
    else:
        verdict = CPlusVerdict(CPlusStatus.UNDETERMINED)
        notes.append('no c+ argument available for this input')

    shift = FAMILY_GRADING_SHIFT if k is not None else Fraction(0)
    try:
        m_c = grading(C, dual, shift)
    except DegenerateFormError:
        m_c = None
        notes.append('Q of G* is degenerate; no grading')

    try:
        distinct = not full_path_equiv(C, -C, dual, cap)
    except CapExceededError:
        distinct = None
        notes.append('conjugate comparison exceeded the step cap')

    return InvariantReport(seifert=str(data), rotations=list(c.rotations), c_hat_nonzero=c_hat,
                           c_plus_status=verdict.status, grading_of_C=m_c, bound_chain=verdict.chain,
                           fillability_obstructed=not complementary_legs(data), conjugate_distinct=distinct,
                           notes=notes)


# Classification on L-spaces

@dataclass
class TightClass:
    representative: StructureCandidate
    magic_c: np.ndarray
    count: int
    spinc_id: int
    conjugate_of: Optional[int] = None
    members: List[StructureCandidate] = field(default_factory=list, repr=False)

    def record(self) -> dict:
        return {'representative': self.representative.record(), 'magic_c': [int(x) for x in self.magic_c],
                'count': self.count, 'spinc_id': self.spinc_id, 'conjugate_of': self.conjugate_of}


@dataclass
class Classification:
    seifert: str
    classes: List[TightClass]
    n_candidates: int
    n_tight: int
    skipped: List[StructureCandidate] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for i, cls in enumerate(self.classes):
            rows.append({'class': i, 'rotations': ' '.join(str(r) for r in cls.representative.rotations),
                         'magic_c': ' '.join(str(int(x)) for x in cls.magic_c), 'count': cls.count,
                         'spinc_id': cls.spinc_id, 'conjugate_of': cls.conjugate_of})
        return pd.DataFrame(rows, columns=['class', 'rotations', 'magic_c', 'count', 'spinc_id', 'conjugate_of'])

    def record(self) -> dict:
        return {'seifert': self.seifert, 'n_candidates': self.n_candidates, 'n_tight': self.n_tight,
                'skipped': [c.record() for c in self.skipped], 'classes': [c.record() for c in self.classes]}


def _examine(args):
    candidate, dual, cap, tie_break = args
    try:
        C = magic_c(candidate.data, candidate.k_vector)
    except UnsatisfiableError:
        return candidate, None, None
    if not ends_correctly(C, dual, cap, tie_break):
        return candidate, C, None
    return candidate, C, tuple(int(x) for x in canonical_form(C, dual, cap, tie_break))


def classify_tight(data: SeifertData, lspace_attestation: Optional[bool] = None, n_threads: int = 1,
                   cap: int = DEFAULT_WALK_CAP, tqdm_fn=None, tie_break: str = DEFAULT_TIE_BREAK) -> Classification:
    """
    Tight candidates on an L-space, grouped by the full path of their magic C.

    Args:
        - data (SeifertData): M(-1; r1, r2, r3).
        - lspace_attestation (bool): caller's statement that M is an L-space;
          derived from is_lspace_family when data is a T(8,13) surgery.
        - n_threads (int): worker threads for the candidate loop.
        - cap (int): step cap for every walk.
        - tqdm_fn: optional progress bar wrapper.
        - tie_break (str): candidate order for every walk.

    Returns:
        - Classification with one TightClass per full path, in order of first appearance.
    """
    if data.e0 == 0:
        raise NotImplementedError('classification for e0 = 0 is not implemented')
    if data.e0 != -1:
        raise ValueError(f'classification needs e0 = -1, got {data.e0}')
    if lspace_attestation is None:
        k = family_parameter(data)
        if k is None:
            raise ValueError('an L-space attestation is required outside the T(8,13) family')
        lspace_attestation = is_lspace_family(k)
    if not lspace_attestation:
        raise ValueError(f'{data} is not attested as an L-space')

    build_embedding(data)
    dual = standard_graph(dual_seifert(data))
    candidates = list(enumerate_candidates(data))
    jobs = [(c, dual, cap, tie_break) for c in candidates]
    index: Dict[Tuple[int, ...], int] = {}
    spinc_ids: Dict[Tuple[int, ...], int] = {}
    class_of: Dict[Tuple[int, ...], int] = {}
    ordered: List[TightClass] = []
    skipped = []
    n_tight = 0
    pool = ThreadPool(n_threads) if n_threads > 1 else None
    try:
        results = pool.imap(_examine, jobs) if pool is not None else map(_examine, jobs)
        if tqdm_fn is not None:
            results = tqdm_fn(results, total=len(jobs), desc='Classifying candidates')
        for candidate, C, key in results:
            if C is None:
                logger.warning(f'skipping {candidate.rotations}: no sign assignment')
                skipped.append(candidate)
                continue
            if key is None:
                continue
            n_tight += 1
            if key not in index:
                sid = spinc_ids.setdefault(spinc_key(C, dual), len(spinc_ids))
                index[key] = len(ordered)
                ordered.append(TightClass(candidate, as_vector(key), 0, sid))
            cls = ordered[index[key]]
            cls.count += 1
            cls.members.append(candidate)
            class_of[candidate.rotations] = index[key]
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    for cls in ordered:
        cls.conjugate_of = class_of.get(conjugate(cls.representative).rotations)
    logger.info(f'{data}: {n_tight} tight of {len(candidates)} candidates in {len(ordered)} classes')
    return Classification(str(data), ordered, len(candidates), n_tight, skipped)
