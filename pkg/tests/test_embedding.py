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

from seifertc.contact import torus_surgery_seifert
from seifertc.embedding import *
from seifertc.embedding import _leg_moves
from seifertc.errors import NotCharacteristicError, ScheduleError, UnsatisfiableError
from seifertc.fullpath import canonical_form, ends_correctly, full_path_equiv
from seifertc.invariants import build_Ck, build_Kk
from seifertc.plumbing import SeifertData, dual_seifert, intersection_matrix, standard_graph


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


HALVES = SeifertData(-1, (Fraction(1, 2),) * 3)


def squares(cfg, role):
    return [c.cls.pairing(c.cls) for c in cfg.tagged(role)]


class TestHomology(TestClass):

    def test_pairing(self):
        h = HomologyClass(1)
        e2 = HomologyClass.exceptional(2)
        assert h.pairing(h) == 1
        assert e2.pairing(e2) == -1
        assert h.pairing(e2) == 0
        line = h.minus(1).minus(2)
        assert line.e == (-1, -1)
        assert line.pairing(line) == -1
        assert line.pairing(e2) == 1
        assert line.coefficient(2) == -1
        assert line.coefficient(5) == 0
        assert line.padded(4) == [-1, -1, 0, 0]
        assert str(line) == '1h -1e1 -1e2'


class TestBlowups(TestClass):

    def test_init(self):
        cfg = init_configuration(3)
        assert cfg.n_blowups == 1
        assert [c.name for c in cfg.curves] == ['l1', 'l2', 'l3', 'e1', 'l']
        assert cfg.pairing('l1', 'l1') == 0
        assert cfg.pairing('e1', 'e1') == -1
        assert cfg.pairing('l', 'l') == 1
        assert cfg.pairing('l1', 'e1') == 1
        assert cfg.pairing('l1', 'l2') == 0
        assert cfg.pairing('l1', 'l') == 1
        with self.assertRaises(ValueError):
            init_configuration(0)

    def test_blow_up_intersection(self):
        cfg = init_configuration(2)
        new, name = blow_up_intersection(cfg, 'l1', 'l')
        assert name == 'e2'
        assert new.n_blowups == 2
        assert new.pairing('l1', 'l1') == -1
        assert new.pairing('l', 'l') == 0
        assert new.pairing('l1', 'l') == 0
        assert new.pairing('e2', 'l1') == new.pairing('e2', 'l') == 1
        # the old configuration is untouched
        assert cfg.pairing('l1', 'l') == 1
        with self.assertRaises(ValueError):
            blow_up_intersection(new, 'l1', 'l')

    def test_blow_up_point(self):
        cfg, name = blow_up_point_on(init_configuration(1), 'e1')
        assert name == 'e2'
        assert cfg.pairing('e1', 'e1') == -2
        cfg, _ = blow_up_point_on(cfg, 'e1')
        assert cfg.pairing('e1', 'e1') == -3
        assert cfg.pairing('e2', 'e2') == -1

    def test_tags(self):
        cfg = init_configuration(1).tag('e1', Role.G_VERTEX, 1)
        assert [c.name for c in cfg.tagged(Role.G_VERTEX)] == ['e1']
        assert cfg.tagged(Role.DUAL_VERTEX) == []
        with self.assertRaises(KeyError):
            cfg.curve('e9')

    def test_leg_moves(self):
        assert _leg_moves([-2], [-2]) == []
        assert _leg_moves([-3], [-2, -2]) == ['g']
        assert len(_leg_moves([-3, -3], [-2, -3, -2])) == 3
        assert len(_leg_moves([-69], [-2] * 68)) == 67
        with self.assertRaises(ScheduleError):
            _leg_moves([-3], [-3])


class TestEmbedding(TestClass):

    def test_halves(self):
        cfg = build_embedding(HALVES)
        assert cfg.n_blowups == 7
        G = cfg.tagged(Role.G_VERTEX)
        D = cfg.tagged(Role.DUAL_VERTEX)
        assert G[0].cls == HomologyClass(0, (1,))
        assert G[1].cls.h == 1
        assert G[1].cls.padded(7) == [-1, -1, 0, 0, -1, 0, 0]
        assert D[0].cls.padded(7) == [0, -1, -1, -1, 0, 0, 0]
        assert D[1].cls.padded(7) == [0, 1, 0, 0, -1, 0, 0]
        assert squares(cfg, Role.G_VERTEX) == [-1, -2, -2, -2]
        assert squares(cfg, Role.DUAL_VERTEX) == [-2, -2, -2, -2]

    def test_family(self):
        for data in [torus_surgery_seifert(35, grouped=True), torus_surgery_seifert(35)]:
            cfg = build_embedding(data)
            graph, dual = standard_graph(data), standard_graph(dual_seifert(data))
            assert cfg.n_blowups == 81
            assert 1 + cfg.n_blowups == graph.size + dual.size
            assert (cfg.gram(Role.G_VERTEX) == intersection_matrix(graph)).all()
            assert (cfg.gram(Role.DUAL_VERTEX) == intersection_matrix(dual)).all()
            assert not cfg.gram(Role.G_VERTEX, Role.DUAL_VERTEX).any()
            u.dp(['Embedded', str(data), 'N', cfg.n_blowups])

    def test_record(self):
        rec = build_embedding(HALVES).record()
        assert rec['N'] == 7
        assert len(rec['curves']) == 1 + 3 + 1 + 6
        assert all(len(c['e']) == 7 for c in rec['curves'])

    def test_needs_minus_one(self):
        with self.assertRaises(ValueError):
            build_embedding(SeifertData(-2, (Fraction(1, 2),) * 3))


class TestSigns(TestClass):

    def test_solve(self):
        cfg = build_embedding(HALVES)
        signs = solve_signs(cfg, [1, -2, -2, -2])
        assert signs == SignAssignment(-1, (-1, -1, -1, -1, 1, 1, 1))
        assert list(restrict(cfg, signs, Role.G_VERTEX)) == [1, -2, -2, -2]
        assert list(restrict(cfg, signs)) == [-4, 2, 2, 2]

    def test_enumerate(self):
        cfg = build_embedding(HALVES)
        solutions = enumerate_sign_solutions(cfg, [1, -2, -2, -2])
        assert len(solutions) == 9
        smallest = min(solutions, key=lambda s: (s.alpha,) + s.alphas)
        assert smallest == solve_signs(cfg, [1, -2, -2, -2])
        assert len(enumerate_sign_solutions(cfg, [1, 0, -2, -2])) == 6

    def test_negated(self):
        cfg = build_embedding(HALVES)
        K = [1, 0, -2, 0]
        signs = solve_signs(cfg, K).negated()
        assert list(restrict(cfg, signs, Role.G_VERTEX)) == [-1, 0, 2, 0]

    def test_unsatisfiable(self):
        cfg = build_embedding(HALVES)
        with self.assertRaises(UnsatisfiableError):
            solve_signs(cfg, [3, -2, -2, -2])
        with self.assertRaises(UnsatisfiableError):
            solve_signs(cfg, [1, -2, -2, -6])
        assert enumerate_sign_solutions(cfg, [3, -2, -2, -2]) == []
        with self.assertRaises(ValueError):
            solve_signs(cfg, [1, -2])

    def test_brute_force_limit(self):
        cfg = build_embedding(torus_surgery_seifert(35, grouped=True))
        with self.assertRaises(ValueError):
            enumerate_sign_solutions(cfg, build_Kk(35))


class TestMagicC(TestClass):

    def test_halves(self):
        gd = standard_graph(dual_seifert(HALVES))
        assert list(magic_c(HALVES, [1, -2, -2, -2])) == [-4, 2, 2, 2]
        assert list(magic_c(HALVES, [1, 0, -2, -2])) == [-2, 0, 2, 2]
        assert list(magic_c(HALVES, [1, -2, 0, 0])) == [0, 2, 0, 0]
        assert not ends_correctly(magic_c(HALVES, [1, -2, -2, -2]), gd)
        assert ends_correctly(magic_c(HALVES, [1, 0, -2, -2]), gd)
        with self.assertRaises(NotCharacteristicError):
            magic_c(HALVES, [0, 0, 0, 0])

    def test_every_solution_same_path(self):
        cfg = build_embedding(HALVES)
        gd = standard_graph(dual_seifert(HALVES))
        K = [1, 0, -2, -2]
        outputs = [restrict(cfg, s) for s in enumerate_sign_solutions(cfg, K)]
        first = canonical_form(outputs[0], gd)
        for C in outputs:
            assert ends_correctly(C, gd)
            assert (canonical_form(C, gd) == first).all()

    def test_family(self):
        for k in [-10, -1, 1, 35, 90, 98]:
            data = torus_surgery_seifert(k, grouped=True)
            dual = standard_graph(dual_seifert(data))
            C = magic_c(data, build_Kk(k))
            head = [int(x) for x in C[:8]]
            assert head == [0, 1, 1, 2, 0, -1, 2, 0]
            assert not C[8:].any()
            assert full_path_equiv(C, build_Ck(k), dual)
            u.dp(['k', k, 'magic C', head])

    def test_conjugate_family(self):
        data = torus_surgery_seifert(35, grouped=True)
        dual = standard_graph(dual_seifert(data))
        Q = intersection_matrix(standard_graph(data))
        K_bar = -build_Kk(35) - 2 * Q[:, 0]
        assert list(K_bar) == [1, 0, 1, 1, -3, 1, -69]
        C = magic_c(data, K_bar)
        assert full_path_equiv(C, -build_Ck(35), dual)
        assert not full_path_equiv(C, build_Ck(35), dual)
