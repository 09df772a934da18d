"""Tests for the qracah-gaps command line interface."""
import json

import pytest

from qracah_gaps.cli import build_parser, main


def test_gap(capsys):
    assert main(['gap', '--params', 'P0']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 's,D_s,method'
    assert [line.split(',')[0] for line in lines[1:]] == ['2', '3', '4']
    assert lines[-1] == '4,1,enumerate'


def test_gap_with_method_and_output(tmp_path, capsys):
    out = tmp_path / 'gaps.csv'
    assert main(['gap', '--params', 'P1', '--method', 'connection', '--out', str(out)]) == 0
    assert capsys.readouterr().out == ''
    lines = out.read_text(encoding='utf-8').splitlines()
    assert lines[0] == 's,D_s,method'
    assert lines[-1] == '5,1,connection'


def test_gap_from_a_file(tmp_path, capsys):
    path = tmp_path / 'p0.json'
    path.write_text(json.dumps({'qracahGaps': {'method': 'fredholm', 'ensemble': {'q': '1/4', 'alpha': '256', 'beta': '256', 'delta': '1/1024',
                                                                                  'M': 3, 'N': 2}}}), encoding='utf-8')
    assert main(['gap', '--params', str(path)]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == '4,1,fredholm'


def test_crosscheck(capsys):
    assert main(['crosscheck', '--params', 'P0']) == 0
    assert capsys.readouterr().out.splitlines()[-1] == 'PASS all checks'


def test_crosscheck_with_fault(capsys):
    assert main(['crosscheck', '--params', 'P0', '--corrupt-k1']) == 1
    assert capsys.readouterr().out.splitlines()[-1] == 'FAIL crosscheck'


def test_lattice_verify(capsys):
    assert main(['lattice-verify']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1] == 'PASS all checks'
    assert all(line.startswith('PASS ') for line in lines)


def test_tiling(tmp_path, capsys):
    tilings = tmp_path / 'tilings.csv'
    assert main(['tiling', '--params', 'H233', '--tilings', str(tilings)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 't,positions,probability,ensemble'
    assert {line.split(',')[0] for line in lines[1:]} == {str(t) for t in range(7)}
    rows = tilings.read_text(encoding='utf-8').splitlines()
    assert rows[0] == 'index,volume,weight'
    assert len(rows) == 176


def test_tiling_needs_a_tiling_block(capsys):
    assert main(['tiling', '--params', 'P0']) == 1
    assert 'ConfigurationError' in capsys.readouterr().err


def test_orbit(capsys):
    assert main(['orbit', '--params', 'P0']) == 0
    document = json.loads(capsys.readouterr().out)
    assert document['direction'] == 'forward'
    assert document['shifts'] == [[1, 0, 1, -1, -1, 1, 0, 0]]
    assert [point['s'] for point in document['points']] == [2, 3]
    assert document['params']['q'] == '1/4'
    assert document['swap'] is False


def test_missing_params(capsys):
    assert main(['gap']) == 1
    assert 'error: ConfigurationError' in capsys.readouterr().err


def test_unknown_preset(capsys):
    assert main(['gap', '--params', 'P9']) == 1
    assert 'ConfigurationError' in capsys.readouterr().err


def test_exact_only_method_with_big_floats(capsys):
    assert main(['gap', '--params', 'P0', '--method', 'drhp', '--backend', 'bigfloat']) == 1
    assert 'BackendMismatchError' in capsys.readouterr().err


@pytest.mark.parametrize('argv', [['gap', '--params', 'P0', '--method', 'guess'], ['solve'], []])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_parser_commands():
    parser = build_parser()
    args = parser.parse_args(['orbit', '--params', 'P0', '--swap', '--log-level', 'debug'])
    assert args.command == 'orbit'
    assert args.swap
    assert args.log_level == 'debug'
