"""
Command-line tests - every command through main(), exit codes included
"""

import json

import pytest

from app import main
from modules.parsers.instance_parser import load_instance


def generate(tmp_path, name, *args):
    path = str(tmp_path / f"{name}.json")
    assert main(['generate', '--family', name, *args, '-o', path]) == 0
    return path


def run_json(capsys, *argv):
    capsys.readouterr()
    code = main(['--json', *argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_generate_writes_instance(tmp_path, capsys):
    path = generate(tmp_path, 'tight-path', '--lambda', '4', '--eps', '1/100')
    out = capsys.readouterr().out
    instance, error = load_instance(path)
    assert error is None
    assert instance.n == 5
    assert 'digest: ' in out


def test_generate_to_stdout(capsys):
    assert main(['generate', '--family', 'star-cycle', '--n', '5']) == 0
    out = capsys.readouterr().out
    assert '"kind": "tap"' in out


def test_generate_json_payload(capsys):
    code, payload = run_json(capsys, 'generate', '--family', 'four-thirds-gap')
    assert code == 0
    assert payload['n'] == 10
    assert payload['links'] == 6
    assert len(payload['digest']) == 64


def test_generate_random_uses_global_seed(tmp_path, capsys):
    argv = ['--json', '--seed', '5', 'generate', '--family', 'random', '--n', '7']
    main(argv)
    first = json.loads(capsys.readouterr().out)
    main(argv)
    second = json.loads(capsys.readouterr().out)
    assert first['digest'] == second['digest']


def test_generate_errors(capsys):
    assert main(['generate', '--family', 'nope']) == 2
    assert main(['generate', '--family', 'tight-path', '--lambda', '4', '--eps', '0.01']) == 2
    assert main(['generate', '--family', 'tight-path', '--lambda', '1', '--eps', '1/100']) == 2
    assert 'error:' in capsys.readouterr().err


def test_solve_and_verify(tmp_path, capsys):
    path = generate(tmp_path, 'four-thirds-gap')
    cert = str(tmp_path / 'gap.cert.json')
    code, payload = run_json(capsys, 'solve', path, '--cert', cert)
    assert code == 0
    assert payload['greedy_cost'] == '4'
    assert payload['lower_bound'] == '24/11'
    assert payload['checks_passed'] is True
    assert main(['verify', path, cert]) == 0
    assert 'certificate verified' in capsys.readouterr().out


def test_solve_scaled_tight_path(tmp_path, capsys):
    path = generate(tmp_path, 'tight-path', '--lambda', '4', '--eps', '1/600')
    code, payload = run_json(capsys, '--scale', '6', 'solve', path)
    assert code == 0
    assert payload['greedy_cost'] == '11'
    assert payload['lower_bound'] == '6'
    assert payload['picked'] == [2, 1, 0]


def test_solve_human_output(tmp_path, capsys):
    path = generate(tmp_path, 'triangle')
    capsys.readouterr()
    assert main(['solve', path]) == 0
    out = capsys.readouterr().out
    assert 'greedy cost: 5' in out
    assert 'certified ratio: 1' in out
    assert 'check accounting: ok' in out
    assert 'dual weights per node:' in out


def test_tampered_certificate_exit_code(tmp_path, capsys):
    path = generate(tmp_path, 'four-thirds-gap')
    cert = str(tmp_path / 'c.json')
    assert main(['solve', path, '--cert', cert]) == 0
    with open(cert, encoding='utf-8') as f:
        doc = json.load(f)
    doc['greedy_cost'] = '3'
    with open(cert, 'w', encoding='utf-8') as f:
        json.dump(doc, f)
    assert main(['verify', path, cert]) == 5
    assert 'accounting' in capsys.readouterr().err


def test_certificate_for_another_instance(tmp_path):
    four_thirds = generate(tmp_path, 'four-thirds-gap')
    scaled = str(tmp_path / 'scaled.json')
    assert main(['--scale', '2', 'generate', '--family', 'four-thirds-gap', '-o', scaled]) == 0
    cert = str(tmp_path / 'c.json')
    assert main(['solve', four_thirds, '--cert', cert]) == 0
    assert main(['verify', scaled, cert]) == 5


def test_exact(tmp_path, capsys):
    path = generate(tmp_path, 'four-thirds-gap')
    code, payload = run_json(capsys, 'exact', path)
    assert code == 0
    assert payload['lp_opt'] == '3'
    assert payload['ip_opt'] == '4'
    assert payload['ip_over_lp'] == '4/3'
    assert payload['lp_model'] == 'tap-partition'

    star = generate(tmp_path, 'star-cycle', '--n', '5')
    code, payload = run_json(capsys, 'exact', star, '--ip')
    assert payload['ip_opt'] == '3'
    assert 'lp_opt' not in payload


def test_exact_respects_env_limits(tmp_path, monkeypatch):
    path = generate(tmp_path, 'four-thirds-gap')
    monkeypatch.setenv('TAPCERT_MAX_IP_VARS', '3')
    assert main(['exact', path, '--ip']) == 4
    monkeypatch.setenv('TAPCERT_MAX_IP_VARS', 'many')
    assert main(['exact', path, '--ip']) == 2


def test_infeasible_instance(tmp_path):
    path = tmp_path / 'bad.json'
    path.write_text(json.dumps({
        'kind': 'tap', 'n': 4,
        'tree_edges': [[0, 1], [1, 2], [2, 3]],
        'links': [{'u': 0, 'v': 2, 'cost': '1'}],
    }), encoding='utf-8')
    assert main(['solve', str(path)]) == 3
    assert main(['exact', str(path), '--ip']) == 3


def test_missing_file(tmp_path, capsys):
    assert main(['solve', str(tmp_path / 'absent.json')]) == 2
    assert 'cannot read' in capsys.readouterr().err


def test_inflate_and_ratio(tmp_path, capsys):
    path = generate(tmp_path, 'triangle')
    out = str(tmp_path / 'inflated.json')
    assert main(['inflate', path, '-o', out]) == 0
    inflated, error = load_instance(out)
    assert error is None
    assert inflated.n == 6
    with open(out, encoding='utf-8') as f:
        assert 'inflation' in json.load(f)

    code, payload = run_json(capsys, 'ratio', path)
    assert code == 0
    assert payload['ratio'] == payload['inflated_ratio'] == '1'
    assert payload['equal'] is True


def test_solve_without_links_is_infeasible(tmp_path, capsys):
    path = tmp_path / 'bare.json'
    path.write_text(json.dumps({
        'kind': 'tap', 'n': 3, 'tree_edges': [[0, 1], [1, 2]], 'links': [],
    }), encoding='utf-8')
    assert main(['solve', str(path)]) == 3
    assert 'error: ' in capsys.readouterr().err


def test_deflate_round_trip(tmp_path, capsys):
    path = generate(tmp_path, 'triangle')
    out = str(tmp_path / 'inflated.json')
    assert main(['inflate', path, '-o', out]) == 0

    code, payload = run_json(capsys, 'deflate', out)
    assert code == 0
    assert payload['x'] == ['1', '1', '1']
    assert payload['cost'] == '5'
    assert payload['original_n'] == 3

    solution = tmp_path / 'x.json'
    solution.write_text(json.dumps({'x': ['1'] * 6}), encoding='utf-8')
    code, payload = run_json(capsys, 'deflate', out, '--solution', str(solution))
    assert code == 0
    assert payload['x'] == ['1', '1', '1']

    solution.write_text(json.dumps({'x': ['1'] * 5}), encoding='utf-8')
    assert main(['deflate', out, '--solution', str(solution)]) == 3
    solution.write_text(json.dumps({'x': 0.5}), encoding='utf-8')
    assert main(['deflate', out, '--solution', str(solution)]) == 2
    assert main(['deflate', out, '--solution', str(tmp_path / 'missing.json')]) == 2


def test_deflate_needs_inflation_block(tmp_path):
    path = generate(tmp_path, 'triangle')
    out = tmp_path / 'inflated.json'
    assert main(['inflate', path, '-o', str(out)]) == 0
    doc = json.loads(out.read_text(encoding='utf-8'))
    del doc['inflation']
    out.write_text(json.dumps(doc), encoding='utf-8')
    assert main(['deflate', str(out)]) == 2
    assert main(['deflate', path]) == 2

def test_solve_rejects_ncss_input(tmp_path):
    path = generate(tmp_path, 'triangle')
    out = str(tmp_path / 'inflated.json')
    assert main(['inflate', path, '-o', out]) == 0
    assert main(['solve', out]) == 2


def test_lp_export(tmp_path, capsys):
    path = generate(tmp_path, 'four-thirds-gap')
    out = str(tmp_path / 'four_thirds.lp')
    assert main(['lp-export', path, '--full', '-o', out]) == 0
    with open(out, encoding='utf-8') as f:
        text = f.read()
    assert text.startswith('\\ tap-partition LP (complete)')
    assert text.rstrip().endswith('End')

    capsys.readouterr()
    assert main(['lp-export', path]) == 0
    assert 'Subject To' in capsys.readouterr().out


def test_bench(tmp_path, capsys):
    csv = str(tmp_path / 'bench.csv')
    code, payload = run_json(capsys, '--seed', '1', 'bench', '--random', '2', '--n', '6',
                             '--no-lp', '--no-ip', '--csv', csv)
    assert code == 0
    assert payload['summary']['all_checks_passed'] is True
    assert payload['summary']['total_instances'] == 7 + 6 + 2 + 2
    with open(csv, encoding='utf-8') as f:
        assert f.readline().startswith('instance,digest,n,links,lambda')


@pytest.mark.parametrize('argv', [[], ['frobnicate']])
def test_bad_command_line(argv):
    with pytest.raises(SystemExit):
        main(argv)
