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

import io
import json
import os
import shutil
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

import yaml
from sciutil import *

u = SciUtil()

from seifertc.errors import ParseError
from seifertc.globals import JSON_KWARGS
from seifertc.interface import *
from seifertc.interface import _attach_values


class TestClass(unittest.TestCase):

    @classmethod
    def setup_class(self):
        local = True
        # Create a base object since it will be the same for all the tests
        THIS_DIR = os.path.dirname(os.path.abspath(__file__))

        self.data_dir = os.path.join(THIS_DIR, 'test_data/')
        self.config_path = os.path.join(THIS_DIR, '..', 'config.yml')
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


def run(argv):
    """Exit code and captured stdout/stderr of one CLI call."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = execute_seifertc(argv)
    return code, out.getvalue(), err.getvalue()


C35 = '-2|-1,-1,0|2,1,-2|2,0^67'
MINUS_C35 = '2|1,1,0|-2,-1,2|-2,0^67'


class TestParsing(TestClass):

    def test_vector(self):
        values, groups = parse_vector(C35)
        assert len(values) == 75
        assert groups == [1, 3, 3, 68]
        assert values[:8] == [-2, -1, -1, 0, 2, 1, -2, 2]
        assert parse_vector('(−2 | 0 1)') == ([-2, 0, 1], [1, 2])
        for bad in ['', '1|', '1|x', '1,2^a']:
            with self.assertRaises(ParseError):
                parse_vector(bad)

    def test_schedule_and_range(self):
        assert parse_schedule('7,1, 2 3,4') == [7, 1, 2, 3, 4]
        with self.assertRaises(ParseError):
            parse_schedule('7,a')
        assert parse_range('1..35') == range(1, 36)
        assert parse_range('-3..−1') == range(-3, 0)
        for bad in ['5..1', '1-35', '']:
            with self.assertRaises(ParseError):
                parse_range(bad)

    def test_attach_values(self):
        argv = ['fullpath', '--k', '35', '--vector', MINUS_C35, '--dual']
        assert _attach_values(argv) == ['fullpath', '--k', '35', f'--vector={MINUS_C35}', '--dual']

    def test_config(self):
        with open(self.config_path, 'r') as f:
            config = yaml.safe_load(f)
        check_config(config)
        config['k_min'] = 40
        with self.assertRaises(AssertionError):
            check_config(config)


class TestCommands(TestClass):

    def test_graph_json(self):
        code, out, _ = run(['graph', '--seifert', '-1;3/8,8/13,1/69', '--json'])
        assert code == 0
        record = json.loads(out)
        assert record['determinant'] == 35
        assert record['size'] == 7
        assert record['graph'] == {'center': -1, 'legs': [[-3, -3], [-2, -3, -3], [-69]]}
        assert not record['negative_definite']
        assert json.dumps(record, **JSON_KWARGS) == out.strip()

    def test_dual_text(self):
        code, out, _ = run(['dual', '--k', '35'])
        assert code == 0
        assert '|G| = 75' in out
        assert 'det = -35' in out
        assert 'negative definite: True' in out

    def test_fullpath_trace(self):
        code, out, _ = run(['fullpath', '--k', '35', '--dual', '--vector', MINUS_C35, '--trace',
                            '--tie-break', 'largest', '--json'])
        assert code == 0
        record = json.loads(out)
        assert [s['step'] for s in record['forward']['trace']] == [7, 1, 2, 3, 4]
        assert record['forward']['status'] == 'EndsWell'

    def test_fullpath_both_ends(self):
        code, out, _ = run(['fullpath', '--k', '35', '--dual', '--vector', C35, '--both-ends', '--json'])
        assert code == 0
        record = json.loads(out)
        assert record['ends_correctly']
        assert record['forward']['steps'] == 339
        assert record['backward']['steps'] == 5
        assert 'trace' not in record['forward']

    def test_fullpath_schedule(self):
        code, out, _ = run(['fullpath', '--k', '35', '--dual', '--vector', MINUS_C35, '--schedule', '7,1,2,3,4'])
        assert code == 0
        assert 'EndsWell after 5 steps' in out

    def test_magic_c(self):
        code, out, _ = run(['magic-c', '--k', '35', '--json'])
        assert code == 0
        record = json.loads(out)
        assert record['K'] == [1, -2, -1, -1, 1, -1, 67]
        assert record['magic_c'][:8] == [0, 1, 1, 2, 0, -1, 2, 0]
        assert record['ends_correctly']

    def test_magic_c_rotations(self):
        code, out, _ = run(['magic-c', '--seifert', '-1;1/2,1/2,1/2', '--rotations', '1|0|-2|-2', '--json'])
        assert code == 0
        assert json.loads(out)['magic_c'] == [-2, 0, 2, 2]

    def test_classify(self):
        code, out, _ = run(['classify', '--seifert', '-1;1/2,1/2,1/2', '--lspace', '--json'])
        assert code == 0
        record = json.loads(out)
        assert record['n_candidates'] == 8
        assert record['n_tight'] == 6
        assert len(record['classes']) == 3

    def test_report(self):
        code, out, _ = run(['report', '--k', '35', '--json'])
        assert code == 0
        record = json.loads(out)
        assert record['c_plus_status'] == 'ZeroByGradingGap'
        assert record['grading_of_C'] == '-527/70'
        code, out, _ = run(['report', '--range', '34..35', '--conjugate', '--json'])
        assert code == 0
        assert len(json.loads(out)['reports']) == 2

    def test_reproduce(self):
        code, out, _ = run(['reproduce', 'conjugates', '--range', '35..35'])
        assert code == 0
        assert 'k = 35: DISTINCT' in out
        code, out, _ = run(['reproduce', 'lemma6', '--json'])
        assert code == 0
        record = json.loads(out)
        assert record['passed']
        assert record['target'] == 'lemma6'
        code, out, _ = run(['reproduce', 'theorem2-table', '--range', '34..35'])
        assert code == 0
        assert 'theorem2-table: PASS' in out
        assert 'k = 35: M = -527/70' in out
        code, out, _ = run(['reproduce', 'golden-trace', '--k', '98'])
        assert code == 0
        assert 'lemma6: PASS' not in out
        assert 'golden-trace: PASS' in out


class TestExitCodes(TestClass):

    def test_usage_errors(self):
        assert run(['graph', '--seifert', 'garbage'])[0] == 2
        assert run(['fullpath', '--k', '35', '--vector', '1|x'])[0] == 2
        assert run([])[0] == 2
        assert run(['graph'])[0] == 2
        assert run(['reproduce', 'nothing'])[0] == 2

    def test_domain_errors(self):
        code, _, err = run(['fullpath', '--k', '35', '--dual', '--vector', '1|1,1,0|-2,-1,2|-2,0^67'])
        assert code == 1
        assert 'error' in err
        assert run(['magic-c', '--seifert', '-2;1/2,1/2,1/2', '--rotations', '1|0|0|0'])[0] == 1
        assert run(['classify', '--seifert', '-1;1/2,1/2,1/2'])[0] == 1
        assert run(['report', '--k', '35', '--rotations', '3|-2,-1,-1|1,-1|67'])[0] == 1
