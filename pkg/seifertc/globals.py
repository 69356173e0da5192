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

# Global parameters for seifertc
from fractions import Fraction

# Full-path walks
DEFAULT_WALK_CAP = 10 ** 6
DEFAULT_TIE_BREAK = 'smallest'
TIE_BREAKS = ('smallest', 'largest')

# Brute force limits
MAX_BRUTE_FORCE_BLOWUPS = 16
MAX_SEARCH_VECTORS = 200000

# Torus knot family S^3_k(T_{8,13}) = M(-1; 3/8, 8/13, 1/(104-k))
TORUS_KNOT = (8, 13)
FAMILY_CAPTION_RATIOS = (Fraction(3, 8), Fraction(8, 13))
FAMILY_GROUPED_RATIOS = (Fraction(8, 13), Fraction(3, 8))
FAMILY_CEILING = 104                # third ratio is 1/(104 - k), so k < 104
LSPACE_THRESHOLD = 83               # S^3_k(T_{8,13}) is an L-space iff k >= 83
GRADING_GAP_RANGE = (1, 35)         # grading-gap argument for c+ covers these k
GRADING_BOUND = Fraction(-15, 2)

# Shift turning (V^T Q^-1 V + |G|)/4 into (V^T Q^-1 V + |G| - 6)/4 on the indefinite graph G
INDEFINITE_SHIFT = Fraction(-6, 4)

# Shift that matches the closed form (-k^2 + 153k - 5184)/(4k) on the dual graphs
FAMILY_GRADING_SHIFT = Fraction(0)

# Displayed vectors of the -C_k branch at k = 35, in the grouping (centre | leg | leg | chain)
GOLDEN_MINUS_C_SCHEDULE = (7, 1, 2, 3, 4)
GOLDEN_MINUS_C_PREFIXES = (
    (2, 1, 1, 0, -2, 1, -2, -2),
    (-2, 3, 1, 0, 0, 1, -2, 0),
    (0, -1, -1, -2, 0, 1, -2, 0),
)
GOLDEN_C_SCHEDULE = (5, 6)
GOLDEN_C_AFTER_SCHEDULE = (0, -1, -1, 0, 0, -3, 0, 2)
GOLDEN_C_TERMINAL_HEAD = (0, 1, 1, 0, 0, 1, 0)

# Output formats
JSON_KWARGS = {'sort_keys': True, 'indent': 2}
