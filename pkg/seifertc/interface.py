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
Contain argument parsers and renderers used for the command line interface
"""
# Import packages
import argparse
import json
import logging
import re
import sys
from typing import List, Sequence, Tuple

import numpy as np
import tqdm
import yaml

# Import local packages
from seifertc.contact import candidate_from_k_vector, conjugate, torus_surgery_seifert
from seifertc.embedding import build_embedding, magic_c, solve_signs
from seifertc.errors import ParseError, SeifertError
from seifertc.fullpath import canonical_form, ends_correctly, replay, walk
from seifertc.globals import DEFAULT_TIE_BREAK, DEFAULT_WALK_CAP, JSON_KWARGS, TIE_BREAKS
from seifertc.invariants import classify_tight, family_candidate, full_report
from seifertc.plumbing import (SeifertData, count_bad_vertices, dual_seifert, graph_determinant, intersection_matrix,
                               is_negative_definite, standard_graph)
from seifertc.reproduce import REPRODUCTIONS, reproduce_golden_trace, run_seifertc
from seifertc.utils import format_grouped

logger = logging.getLogger(__name__)

VALUE_FLAGS = ('--seifert', '--vector', '--rotations', '--schedule')
REPRODUCE_TARGETS = tuple(REPRODUCTIONS)


# Input parsing

def parse_vector(text: str) -> Tuple[List[int], List[int]]:
    """
    Parse grouped vector notation, e.g. '-2|-1,-1,0|2,1,-2|2,0^67'.

    Groups are separated by '|', entries by commas or spaces; 'x^n' repeats x
    n times. The unicode minus is accepted.

    Returns:
        - the flat list of entries and the list of group sizes.
    """
    cleaned = text.strip().replace('−', '-').strip('()')
    if not cleaned:
        raise ParseError('empty vector')
    values, groups = [], []
    for group in cleaned.split('|'):
        tokens = [t for t in re.split(r'[,\s]+', group.strip()) if t]
        if not tokens:
            raise ParseError(f'empty group in {text!r}')
        size = 0
        for token in tokens:
            match = re.fullmatch(r'([+-]?\d+)(?:\^(\d+))?', token)
            if not match:
                raise ParseError(f'bad vector entry {token!r}')
            repeat = int(match.group(2)) if match.group(2) else 1
            values.extend([int(match.group(1))] * repeat)
            size += repeat
        groups.append(size)
    return values, groups


def parse_schedule(text: str) -> List[int]:
    try:
        return [int(t) for t in re.split(r'[,\s]+', text.strip()) if t]
    except ValueError:
        raise ParseError(f'bad step schedule {text!r}')


def parse_range(text: str) -> range:
    """'A..B' inclusive."""
    match = re.fullmatch(r'\s*([+-]?\d+)\s*\.\.\s*([+-]?\d+)\s*', text.replace('−', '-'))
    if not match:
        raise ParseError(f'expected a range A..B, got {text!r}')
    low, high = int(match.group(1)), int(match.group(2))
    if low > high:
        raise ParseError(f'empty range {text!r}')
    return range(low, high + 1)


def parse_rotations(text: str, data: SeifertData):
    """Rotation data given as the characteristic vector on G; its centre entry must be 1."""
    values, _ = parse_vector(text)
    return candidate_from_k_vector(data, values)


def _attach_values(argv: Sequence[str]) -> List[str]:
    """Join value flags with their argument so that values starting with '-' survive argparse."""
    out, i = [], 0
    argv = list(argv)
    while i < len(argv):
        if argv[i] in VALUE_FLAGS and i + 1 < len(argv):
            out.append(f'{argv[i]}={argv[i + 1]}')
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def _seifert(args) -> SeifertData:
    if args.get('seifert'):
        return SeifertData.from_string(args['seifert'])
    if args.get('k') is not None:
        return torus_surgery_seifert(args['k'], grouped=not args.get('caption_order', False))
    raise ParseError('give either --seifert S or --k K')


# Rendering

def render_vector(v, graph) -> str:
    flat = ' '.join(str(int(x)) for x in v)
    return f'({format_grouped(v, graph.groups)})  [{flat}]'


def _emit(record: dict, lines: List[str], as_json: bool) -> None:
    if as_json:
        print(json.dumps(record, **JSON_KWARGS))
    else:
        print('\n'.join(lines))


# Build the CLI argparser
def _add_input_args(parser, vector: bool = False, rotations: bool = False):
    group = parser.add_argument_group("Input", "Seifert data, either explicit or a T(8,13) surgery coefficient")
    group.add_argument('--seifert', help='Seifert data "e0;p1/q1,p2/q2,..." e.g. "-1;3/8,8/13,1/69"')
    group.add_argument('--k', type=int, help='surgery coefficient k of S^3_k(T(8,13))')
    group.add_argument('--caption-order', dest='caption_order', action='store_true',
                       help='with --k, list the legs as (3/8, 8/13, ...) instead of (8/13, 3/8, ...)')
    if vector:
        group.add_argument('--vector', required=True, help='characteristic vector, e.g. "-2|-1,-1,0|2,1,-2|2,0^67"')
    if rotations:
        group.add_argument('--rotations', help='rotation data as the vector on G, e.g. "1|-2,-1,-1|1,-1|67"')
        group.add_argument('--conjugate', action='store_true', help='negate every rotation')
    parser.add_argument('--json', action='store_true', help='machine-readable output')
    parser.add_argument('--cap', type=int, default=DEFAULT_WALK_CAP, help='step cap for every walk')


def build_cli_parser():
    parser = argparse.ArgumentParser(prog='seifertc',
                                     description='Magic C, full paths and tightness tests on small Seifert spaces')
    parser.add_argument('--verbose', action='store_true', help='log at INFO level')
    sub = parser.add_subparsers(dest='command', required=True)

    graph = sub.add_parser('graph', help='standard plumbing graph and intersection matrix')
    _add_input_args(graph)
    graph.add_argument('--dual', action='store_true', help='graph of the orientation reversal')

    dual = sub.add_parser('dual', help='standard graph of the orientation reversal')
    _add_input_args(dual)

    fullpath = sub.add_parser('fullpath', help='walk a characteristic vector')
    _add_input_args(fullpath, vector=True)
    fullpath.add_argument('--dual', action='store_true', help='the vector lives on the dual graph')
    fullpath.add_argument('--trace', action='store_true', help='print every step')
    fullpath.add_argument('--both-ends', dest='both_ends', action='store_true', help='walk v and -v')
    fullpath.add_argument('--tie-break', dest='tie_break', choices=TIE_BREAKS, default=DEFAULT_TIE_BREAK)
    fullpath.add_argument('--schedule', help='steps to take first, e.g. "7,1,2,3,4"')

    magic = sub.add_parser('magic-c', help='magic C of a rotation assignment')
    _add_input_args(magic, rotations=True)

    classify = sub.add_parser('classify', help='tight candidates on an L-space up to full path')
    _add_input_args(classify)
    classify.add_argument('--lspace', action='store_true', help='attest that the input is an L-space')
    classify.add_argument('--threads', type=int, default=1)

    report = sub.add_parser('report', help='every decision for one structure')
    _add_input_args(report, rotations=True)
    report.add_argument('--range', dest='k_range', help='report xi_k for k in A..B')

    reproduce = sub.add_parser('reproduce', help='recompute the T(8,13) family checks')
    reproduce.add_argument('target', choices=REPRODUCE_TARGETS)
    reproduce.add_argument('--k', type=int, default=None, help='k for lemma6 (default 35)')
    reproduce.add_argument('--range', dest='k_range', help='k range A..B for the tables')
    reproduce.add_argument('--json', action='store_true')
    reproduce.add_argument('--cap', type=int, default=DEFAULT_WALK_CAP)

    run = sub.add_parser('run', help='family census driven by a config file')
    run.add_argument('config', help='Path to config.yml file containing run parameters.')
    return parser


def check_config(config):
    assert isinstance(config.get('name'), str) and config['name'], 'name must be a non-empty string.'
    assert isinstance(config['k_min'], int), 'k_min must be an integer.'
    assert isinstance(config['k_max'], int), 'k_max must be an integer.'
    assert config['k_min'] <= config['k_max'], 'k_min cannot be greater than k_max'
    assert config['k_max'] <= 102, 'k_max must be at most 102.'
    assert config.get('cap') is None or (isinstance(config['cap'], int) and config['cap'] > 0), \
        'cap must be an integer greater than 0.'
    assert config['n_threads'] >= 1 and isinstance(config['n_threads'], int), \
        'n_threads must be an integer greater than or equal to 1.'
    assert config.get('tie_break', DEFAULT_TIE_BREAK) in TIE_BREAKS, f'tie_break must be one of {TIE_BREAKS}.'
    assert config.get('grading_shift') is None or isinstance(config['grading_shift'], (str, int)), \
        'grading_shift must be a rational "p/q" or null.'
    assert isinstance(config.get('classify_lspaces', False), bool), 'classify_lspaces must be a boolean.'
    assert isinstance(config.get('min_grading_search', False), bool), 'min_grading_search must be a boolean.'


# Subcommands

def cmd_graph(args, dual: bool = False) -> None:
    data = _seifert(args)
    if dual or args.get('dual'):
        data = dual_seifert(data)
    g = standard_graph(data)
    Q = intersection_matrix(g)
    det = graph_determinant(g)
    record = {'seifert': str(data), 'graph': g.record(), 'matrix': Q.tolist(), 'determinant': det,
              'negative_definite': is_negative_definite(g), 'bad_vertices': count_bad_vertices(g), 'size': g.size}
    lines = [f'M({data})', f'centre {g.center_framing}']
    lines += [f'leg {i + 1}: {list(leg)}' for i, leg in enumerate(g.legs)]
    lines += [' '.join(f'{x:4d}' for x in row) for row in Q]
    lines += [f'|G| = {g.size}', f'det = {det}', f'negative definite: {record["negative_definite"]}',
              f'bad vertices: {record["bad_vertices"]}']
    _emit(record, lines, args.get('json'))


def cmd_fullpath(args) -> None:
    data = _seifert(args)
    if args.get('dual'):
        data = dual_seifert(data)
    g = standard_graph(data)
    v, _ = parse_vector(args['vector'])
    cap, tie_break = args['cap'], args['tie_break']
    if args.get('schedule'):
        forward = replay(v, g, parse_schedule(args['schedule']), cap, tie_break)
    else:
        forward = walk(v, g, cap, tie_break)
    results = {'forward': forward}
    if args.get('both_ends'):
        results['backward'] = walk(-np.asarray(v), g, cap, tie_break)

    record = {name: r.record() for name, r in results.items()}
    if not args.get('trace'):
        for r in record.values():
            r.pop('trace')
    lines = []
    for name, r in results.items():
        start = np.asarray(v) if name == 'forward' else -np.asarray(v)
        lines.append(f'{name}: {render_vector(start, g)}')
        if args.get('trace'):
            lines += [f'  →{i} {render_vector(vec, g)}' for i, vec in r.trace]
        lines.append(f'  {r.status.value} after {r.n_steps} steps at {render_vector(r.terminal, g)}')
    if args.get('both_ends'):
        ok = all(r.status.value == 'EndsWell' for r in results.values())
        record['ends_correctly'] = ok
        lines.append(f'ends correctly: {ok}')
    _emit(record, lines, args.get('json'))


def _candidate(args, data):
    if args.get('rotations'):
        c = parse_rotations(args['rotations'], data)
    elif args.get('k') is not None and not args.get('seifert') and not args.get('caption_order'):
        c = family_candidate(args['k'])
    else:
        raise ParseError('give --rotations unless the structure is xi_k from --k')
    return conjugate(c) if args.get('conjugate') else c


def cmd_magic_c(args) -> None:
    data = _seifert(args)
    c = _candidate(args, data)
    g, gd = standard_graph(data), standard_graph(dual_seifert(data))
    signs = solve_signs(build_embedding(data), c.k_vector)
    C = magic_c(data, c.k_vector, signs)
    canonical = canonical_form(C, gd, args['cap'])
    ok = ends_correctly(C, gd, args['cap'])
    record = {'candidate': c.record(), 'K': [int(x) for x in c.k_vector], 'signs': signs.record(),
              'magic_c': [int(x) for x in C], 'canonical': [int(x) for x in canonical], 'ends_correctly': ok}
    lines = [f'K = {render_vector(c.k_vector, g)}', f'C = {render_vector(C, gd)}',
             f'canonical = {render_vector(canonical, gd)}', f'ends correctly: {ok}']
    _emit(record, lines, args.get('json'))


def cmd_classify(args) -> None:
    data = _seifert(args)
    attestation = True if args.get('lspace') else None
    result = classify_tight(data, attestation, n_threads=args.get('threads', 1), cap=args['cap'],
                            tqdm_fn=None if args.get('json') else tqdm.tqdm)
    lines = [f'M({data}): {result.n_tight} tight of {result.n_candidates} candidates, '
             f'{len(result.classes)} full paths, {len(result.skipped)} skipped',
             result.to_frame().to_string(index=False)]
    _emit(result.record(), lines, args.get('json'))


def cmd_report(args) -> None:
    if args.get('k_range'):
        reports = [full_report(family_candidate(k, args.get('conjugate', False)), args['cap'])
                   for k in parse_range(args['k_range'])]
    else:
        data = _seifert(args)
        reports = [full_report(_candidate(args, data), args['cap'])]
    records = [r.record() for r in reports]
    lines = []
    for r in records:
        lines.append(f'M({r["seifert"]}) rotations {r["rotations"]}')
        for key in ('c_hat_nonzero', 'c_plus_status', 'grading_of_C', 'fillability_obstructed', 'conjugate_distinct'):
            lines.append(f'  {key}: {r[key]}')
        lines += [f'  {c["label"]} = {c["value"]}' for c in r['bound_chain']]
        lines += [f'  note: {n}' for n in r['notes']]
    _emit(records[0] if len(records) == 1 else {'reports': records}, lines, args.get('json'))


def cmd_reproduce(args) -> bool:
    target = args['target']
    if REPRODUCTIONS[target] is reproduce_golden_trace:
        result = REPRODUCTIONS[target](args['k'] if args.get('k') is not None else 35, cap=args['cap'])
    elif args.get('k_range'):
        result = REPRODUCTIONS[target](parse_range(args['k_range']), cap=args['cap'])
    else:
        result = REPRODUCTIONS[target](cap=args['cap'])
    lines = result.lines + [f'{target}: {"PASS" if result.passed else "FAIL"}']
    _emit(result.record(), lines, args.get('json'))
    return result.passed


def cmd_run(args) -> None:
    with open(args['config'], 'r') as f:
        config = yaml.safe_load(f)
    check_config(config)
    # Set up progres bar
    tqdm_fn = tqdm.tqdm
    run_seifertc(config, tqdm_fn)
    print("Run Complete, see family_report.csv")


# Execute seifertc
def execute_seifertc(argv: Sequence[str] = None) -> int:
    """Run one subcommand; returns 0 on success, 1 on domain errors, 2 on usage errors."""
    parser = build_cli_parser()
    try:
        args = vars(parser.parse_args(_attach_values(sys.argv[1:] if argv is None else argv)))
    except SystemExit as e:
        return int(e.code or 0)

    if args['command'] != 'run':
        logging.basicConfig(level=logging.INFO if args['verbose'] else logging.WARNING,
                            format='%(asctime)s - %(levelname)s - %(message)s')
    try:
        command = args['command']
        if command == 'graph':
            cmd_graph(args)
        elif command == 'dual':
            cmd_graph(args, dual=True)
        elif command == 'fullpath':
            cmd_fullpath(args)
        elif command == 'magic-c':
            cmd_magic_c(args)
        elif command == 'classify':
            cmd_classify(args)
        elif command == 'report':
            cmd_report(args)
        elif command == 'reproduce':
            return 0 if cmd_reproduce(args) else 1
        elif command == 'run':
            cmd_run(args)
    except ParseError as e:
        print(f'error: {e}', file=sys.stderr)
        return 2
    except (SeifertError, ValueError, NotImplementedError, AssertionError) as e:
        print(f'error: {e}', file=sys.stderr)
        return 1
    return 0
