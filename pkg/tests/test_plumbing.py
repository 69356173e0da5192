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

import os
import shutil
import tempfile
import unittest
from fractions import Fraction

import numpy as np
from sciutil import *

u = SciUtil()

from seifertc.errors import NotCharacteristicError, ParseError
from seifertc.plumbing import *
from seifertc.utils import *


class TestClass(unittest.TestCase):

    @classmethod
    def setup_class(self):
        local = True
        # Create a base object since it will be the same for all the tests
        THIS_DIR = os.path.dirname(os.path.abspath(__file__))

        self.data_dir = os.path.join(THIS_DIR, 'test_data/')
        if local:
            self.tmp_dir = os.path.join(THIS_DIR, 'test_data/tmp/')
            if os.path.exists(self.tmp_dir):
                shutil.rmtree(self.tmp_dir)
            os.makedirs(self.tmp_dir)
        else:
            self.tmp_dir = tempfile.mkdtemp(prefix='test_data')

    @classmethod
    def teardown_class(self):
        shutil.rmtree(self.tmp_dir, ignore_errors=True)


def family(k):
    return SeifertData(-1, (Fraction(8, 13), Fraction(3, 8), Fraction(1, 104 - k)))


class TestSeifertData(TestClass):

    def test_parse(self):
        data = SeifertData.from_string('-1;3/8,8/13,1/69')
        assert data.e0 == -1
        assert data.ratios == (Fraction(3, 8), Fraction(8, 13), Fraction(1, 69))
        assert data.n == 3
        assert str(data) == '-1;3/8,8/13,1/69'

    def test_parse_variants(self):
        assert SeifertData.from_string('M(−1; 1/2, 1/2, 1/2)') == SeifertData(-1, (Fraction(1, 2),) * 3)
        assert SeifertData.from_string('(-2;5/13,5/8,68/69)').e0 == -2

    def test_parse_errors(self):
        for bad in ['-1', '-1;', '-1;3/2', '-1;1/0', 'a;1/2', '-1;1/2,x']:
            with self.assertRaises(ParseError):
                SeifertData.from_string(bad)
            u.dp(['Rejected', bad])

    def test_ratio_range(self):
        with self.assertRaises(ValueError):
            SeifertData(-1, (Fraction(1, 1),))
        with self.assertRaises(ValueError):
            SeifertData(-1, ())

    def test_record(self):
        assert family(35).record() == {'e0': -1, 'ratios': ['8/13', '3/8', '1/69']}


class TestContinuedFractions(TestClass):

    def test_leg_framings(self):
        assert leg_framings(Fraction(3, 8)) == [-3, -3]
        assert leg_framings(Fraction(8, 13)) == [-2, -3, -3]
        assert leg_framings(Fraction(5, 13)) == [-3, -3, -2]
        assert leg_framings(Fraction(5, 8)) == [-2, -3, -2]
        assert leg_framings(Fraction(1, 69)) == [-69]
        assert leg_framings(Fraction(68, 69)) == [-2] * 68

    def test_evaluate(self):
        assert evaluate_negcf([-3, -3]) == Fraction(-8, 3)
        assert evaluate_negcf([-2, -3, -3]) == Fraction(-13, 8)
        with self.assertRaises(ValueError):
            evaluate_negcf([])

    def test_points(self):
        # dual expansions have the same number of dots
        assert riemenschneider_points([-3, -3]) == riemenschneider_points([-2, -3, -2]) == 4
        assert riemenschneider_points([-69]) == riemenschneider_points([-2] * 68) == 68


class TestGraphs(TestClass):

    def test_family_graph(self):
        g = standard_graph(family(35))
        assert g.center_framing == -1
        assert g.legs == ((-2, -3, -3), (-3, -3), (-69,))
        assert g.size == 7
        assert g.groups == [1, 3, 2, 1]
        assert g.leg_vertices(1) == [5, 6]
        assert g.degree(1) == 3
        assert g.degree(4) == 1
        assert len(g.edges()) == 6

    def test_degree(self):
        g = standard_graph(family(35))
        assert [g.degree(v) for v in range(1, 8)] == [3, 2, 2, 1, 2, 1, 1]
        dual = standard_graph(dual_seifert(family(35)))
        Q = intersection_matrix(dual)
        for v in range(1, dual.size + 1):
            assert dual.degree(v) == int(np.count_nonzero(Q[v - 1])) - 1
        assert sum(dual.degree(v) for v in range(1, dual.size + 1)) == 2 * len(dual.edges())
        assert PlumbingGraph(-2, ()).degree(1) == 0
        with self.assertRaises(IndexError):
            g.degree(8)
        with self.assertRaises(IndexError):
            g.degree(0)

    def test_matrix(self):
        g = standard_graph(family(35))
        Q = intersection_matrix(g)
        assert (Q == Q.T).all()
        assert list(np.diag(Q)) == [-1, -2, -3, -3, -3, -3, -69]
        assert Q[0, 1] == Q[0, 4] == Q[0, 6] == 1
        assert Q[1, 2] == Q[2, 3] == Q[4, 5] == 1
        assert Q[0, 2] == 0
        # callers get their own copy
        Q[0, 0] = 5
        assert intersection_matrix(g)[0, 0] == -1

    def test_dual(self):
        dual = dual_seifert(family(35))
        assert dual == SeifertData(-2, (Fraction(5, 13), Fraction(5, 8), Fraction(68, 69)))
        gd = standard_graph(dual)
        assert gd.legs[0] == (-3, -3, -2)
        assert gd.legs[1] == (-2, -3, -2)
        assert gd.size == 75
        assert dual_seifert(dual) == family(35)

    def test_determinants(self):
        for k in [-10, -1, 1, 35, 90]:
            g = standard_graph(family(k))
            gd = standard_graph(dual_seifert(family(k)))
            assert graph_determinant(g) == k
            assert graph_determinant(gd) == (-1) ** (k % 2) * k
            assert spinc_class_count(g) == abs(k)
            u.dp(['k', k, 'det G', graph_determinant(g), 'det G*', graph_determinant(gd)])

    def test_definiteness(self):
        for k in [-10, -1]:
            assert is_negative_definite(standard_graph(family(k)))
            assert not is_negative_definite(standard_graph(dual_seifert(family(k))))
        for k in [1, 35, 98]:
            assert not is_negative_definite(standard_graph(family(k)))
            assert is_negative_definite(standard_graph(dual_seifert(family(k))))
        g0 = standard_graph(family(0))
        assert graph_determinant(g0) == 0
        assert spinc_class_count(g0) == 0
        assert not is_negative_definite(g0)

    def test_bad_vertices(self):
        assert count_bad_vertices(standard_graph(family(35))) == 1
        assert count_bad_vertices(standard_graph(dual_seifert(family(35)))) == 1
        assert count_bad_vertices(PlumbingGraph(-3, ((-2,), (-2,), (-2,)))) == 0

    def test_permute(self):
        data = family(35)
        swapped = permute_legs(data, (1, 0, 2))
        assert swapped.ratios[:2] == (Fraction(3, 8), Fraction(8, 13))
        K = [1, -2, -1, -1, 1, -1, 67]
        assert list(permute_vector(K, standard_graph(data), (1, 0, 2))) == [1, 1, -1, -2, -1, -1, 67]
        with self.assertRaises(ValueError):
            permute_legs(data, (0, 0, 1))


class TestCharacteristic(TestClass):

    def test_is_characteristic(self):
        g = standard_graph(family(35))
        assert is_characteristic([1, -2, -1, -1, 1, -1, 67], g)
        assert not is_characteristic([0] * 7, g)
        with self.assertRaises(NotCharacteristicError):
            is_characteristic([1, -2], g)
        with self.assertRaises(NotCharacteristicError):
            check_characteristic([0] * 7, g)

    def test_spinc_single_vertex(self):
        g = PlumbingGraph(-2, ())
        assert g.size == 1
        assert spinc_class_count(g) == 2
        assert same_spinc([0], [4], g)
        assert not same_spinc([0], [2], g)

    def test_spinc_keys_agree(self):
        g = standard_graph(family(35))
        rows = np.array([[1, -2, -1, -1, 1, -1, 67], [1, 0, -1, -1, -1, -1, -53], [-1, 0, 1, 1, 1, 1, 1]])
        assert spinc_keys(rows, g) == [spinc_key(r, g) for r in rows]

    def test_spinc_classes_of_small_graph(self):
        # every class has a representative in a box of side 2|det|
        g = PlumbingGraph(-1, ((-2,), (-2,), (-2,)))
        det = spinc_class_count(g)
        assert det == 4
        ranges = [range(m % 2, m % 2 + 2 * det, 2) for m in g.framings]
        box = [list(v) for v in np.array(np.meshgrid(*ranges, indexing='ij')).reshape(g.size, -1).T]
        assert len(set(spinc_keys(box, g))) == det


class TestUtils(TestClass):

    def test_determinant(self):
        assert determinant([[2, 1], [1, 2]]) == 3
        assert determinant([[0, 1], [1, 0]]) == -1
        assert determinant(np.zeros((0, 0), dtype=int)) == 1

    def test_solve(self):
        x = solve([[-2, 1], [1, -2]], [1, 0])
        assert list(x) == [Fraction(-2, 3), Fraction(-1, 3)]
        assert inverse_quadratic_form([[-2]], [2]) == -2

    def test_exgcd(self):
        for a, b in [(12, 18), (-4, 6), (7, -3), (0, 5)]:
            M = exgcd(a, b)
            top, bottom = M @ np.array([a, b], dtype=object)
            assert abs(top) == np.gcd(a, b)
            assert bottom == 0
            assert M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0] == 1

    def test_smith(self):
        Q = intersection_matrix(standard_graph(family(35)))
        S, D, T, S_inv = smith_form(Q)
        assert (S @ D @ T == Q).all()
        assert (S @ S_inv == np.eye(7, dtype=int)).all()
        diag = [abs(int(D[i, i])) for i in range(7)]
        assert int(np.prod(diag)) == 35

    def test_format(self):
        C = [-2, -1, -1, 0, 2, 1, -2, 2] + [0] * 67
        assert format_grouped(C, [1, 3, 3, 68]) == '-2 | -1 -1 0 | 2 1 -2 | 2 0^67'
        assert format_rational(Fraction(-527, 70)) == '-527/70'
        assert format_rational(3) == '3/1'
