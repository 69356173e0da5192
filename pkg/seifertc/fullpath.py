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
The full-path algorithm on characteristic vectors.

A step at vertex i is allowed when v_i = -m(i) and sends v to v + 2 Q e_i.
A walk repeats steps until none is allowed; it ends well when every coordinate
then lies in [m(i), -m(i) - 2].
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from seifertc.errors import CapExceededError, IllegalStepError
from seifertc.globals import DEFAULT_TIE_BREAK, DEFAULT_WALK_CAP, TIE_BREAKS
from seifertc.plumbing import PlumbingGraph, as_vector, check_characteristic, intersection_matrix
from seifertc.utils import format_rational, inverse_quadratic_form

logger = logging.getLogger(__name__)


class WalkStatus(Enum):
    ENDS_WELL = 'EndsWell'
    BREAKS = 'Breaks'
    CAP_EXCEEDED = 'CapExceeded'


@dataclass
class WalkResult:
    status: WalkStatus
    terminal: np.ndarray
    trace: List[Tuple[int, np.ndarray]] = field(default_factory=list)
    n_steps: int = 0

    @property
    def steps(self) -> List[int]:
        return [i for i, _ in self.trace]

    def record(self) -> dict:
        return {
            'status': self.status.value,
            'steps': self.n_steps,
            'terminal': [int(x) for x in self.terminal],
            'trace': [{'step': int(i), 'vector': [int(x) for x in vec]} for i, vec in self.trace],
        }


def _framings(g: PlumbingGraph) -> np.ndarray:
    return np.array(g.framings, dtype=np.int64)


def in_terminal_range(v, g: PlumbingGraph) -> bool:
    """m(i) <= v_i <= -m(i) - 2 for all i."""
    m = _framings(g)
    v = as_vector(v)
    return bool(np.all((m <= v) & (v <= -m - 2)))


def step_candidates(v, g: PlumbingGraph) -> List[int]:
    """1-based vertices i with v_i = -m(i), in increasing order."""
    v = check_characteristic(v, g)
    return [int(i) + 1 for i in np.flatnonzero(v == -_framings(g))]


def reverse_step_candidates(v, g: PlumbingGraph) -> List[int]:
    """1-based vertices i with v_i = m(i); exactly the steps that -v may take."""
    v = check_characteristic(v, g)
    return [int(i) + 1 for i in np.flatnonzero(v == _framings(g))]


def step(v, i: int, g: PlumbingGraph) -> np.ndarray:
    """
    Take the step at vertex i (1-based): v + 2 Q e_i.

    Raises:
        IllegalStepError: unless v_i = -m(i).
    """
    v = check_characteristic(v, g)
    if not 1 <= i <= g.size or v[i - 1] != -g.framings[i - 1]:
        raise IllegalStepError(f'no step at vertex {i}: needs v_{i} = {-g.framings[i - 1] if 1 <= i <= g.size else "?"}')
    return v + 2 * intersection_matrix(g)[:, i - 1]


def reverse_step(v, i: int, g: PlumbingGraph) -> np.ndarray:
    """Undo a step: v - 2 Q e_i, allowed when v_i = m(i)."""
    v = check_characteristic(v, g)
    if not 1 <= i <= g.size or v[i - 1] != g.framings[i - 1]:
        raise IllegalStepError(f'no reverse step at vertex {i}')
    return v - 2 * intersection_matrix(g)[:, i - 1]


def _run(v: np.ndarray, g: PlumbingGraph, cap: int, tie_break: str, record_trace: bool,
         trace: List[Tuple[int, np.ndarray]], taken: int) -> WalkResult:
    if tie_break not in TIE_BREAKS:
        raise ValueError(f'tie_break must be one of {TIE_BREAKS}, got {tie_break!r}')
    Q = intersection_matrix(g)
    target = -_framings(g)
    v = v.copy()
    while True:
        candidates = np.flatnonzero(v == target)
        if len(candidates) == 0:
            break
        if taken >= cap:
            logger.warning(f'walk stopped at the cap of {cap} steps')
            return WalkResult(WalkStatus.CAP_EXCEEDED, v, trace, taken)
        i = candidates[0] if tie_break == 'smallest' else candidates[-1]
        v += 2 * Q[:, i]
        taken += 1
        if record_trace:
            trace.append((int(i) + 1, v.copy()))
    status = WalkStatus.ENDS_WELL if in_terminal_range(v, g) else WalkStatus.BREAKS
    logger.debug(f'walk {status.value} after {taken} steps')
    return WalkResult(status, v, trace, taken)


def walk(v, g: PlumbingGraph, cap: int = DEFAULT_WALK_CAP, tie_break: str = DEFAULT_TIE_BREAK,
         record_trace: bool = True) -> WalkResult:
    """
    Follow the full path forward from v until no step is allowed.

    Args:
        - v (array-like): characteristic vector on g.
        - g (PlumbingGraph): the plumbing graph.
        - cap (int): maximal number of steps before giving up with CapExceeded.
        - tie_break (str): 'smallest' or 'largest' candidate vertex first.
        - record_trace (bool): keep (vertex, vector) after every step.

    Returns:
        - WalkResult with status, terminal vector and trace.
    """
    v = check_characteristic(v, g)
    return _run(v, g, cap, tie_break, record_trace, [], 0)


def replay(v, g: PlumbingGraph, schedule: Sequence[int], cap: int = DEFAULT_WALK_CAP,
           tie_break: str = DEFAULT_TIE_BREAK) -> WalkResult:
    """Take the steps of `schedule` in order (each checked), then finish with walk."""
    v = check_characteristic(v, g)
    trace = []
    for i in schedule:
        v = step(v, i, g)
        trace.append((int(i), v.copy()))
    return _run(v, g, cap, tie_break, True, trace, len(trace))


def _definite(result: WalkResult, label: str) -> WalkResult:
    if result.status is WalkStatus.CAP_EXCEEDED:
        raise CapExceededError(f'walk from {label} exceeded the step cap', result)
    return result


def ends_correctly(c, g: PlumbingGraph, cap: int = DEFAULT_WALK_CAP, tie_break: str = DEFAULT_TIE_BREAK) -> bool:
    """Both walk(c) and walk(-c) end well."""
    c = check_characteristic(c, g)
    forward = _definite(walk(c, g, cap, tie_break, record_trace=False), 'c')
    if forward.status is not WalkStatus.ENDS_WELL:
        return False
    backward = _definite(walk(-c, g, cap, tie_break, record_trace=False), '-c')
    return backward.status is WalkStatus.ENDS_WELL


def canonical_form(c, g: PlumbingGraph, cap: int = DEFAULT_WALK_CAP, tie_break: str = DEFAULT_TIE_BREAK) -> np.ndarray:
    """Initial end of the full path through c: the negated terminal vector of walk(-c)."""
    c = check_characteristic(c, g)
    result = _definite(walk(-c, g, cap, tie_break, record_trace=False), '-c')
    return -result.terminal


def full_path_equiv(c1, c2, g: PlumbingGraph, cap: int = DEFAULT_WALK_CAP,
                    tie_break: str = DEFAULT_TIE_BREAK) -> bool:
    return bool(np.array_equal(canonical_form(c1, g, cap, tie_break), canonical_form(c2, g, cap, tie_break)))


# Gradings

def grading(v, g: PlumbingGraph, shift=Fraction(0)) -> Fraction:
    """
    (v^T Q^-1 v + |g|)/4 + shift, exactly.

    Raises:
        DegenerateFormError: if Q is singular.
    """
    v = check_characteristic(v, g)
    return (inverse_quadratic_form(intersection_matrix(g), v) + g.size) / 4 + Fraction(shift)


def calibrate_shift(samples: Iterable[Tuple[Sequence[int], PlumbingGraph, Fraction]]) -> Fraction:
    """
    The single shift s with grading(v, g, s) = target for every (v, g, target).

    Raises:
        ValueError: if the samples need different shifts; the message lists them.
    """
    shifts = {Fraction(target) - grading(v, g) for v, g, target in samples}
    if len(shifts) != 1:
        raise ValueError('no common shift: ' + ', '.join(sorted(format_rational(s) for s in shifts)))
    return shifts.pop()


def grading_differences(samples: Sequence[Tuple[Sequence[int], PlumbingGraph]]) -> List[Fraction]:
    """Consecutive differences of unshifted gradings; independent of any normalisation."""
    values = [grading(v, g) for v, g in samples]
    return [b - a for a, b in zip(values, values[1:])]
