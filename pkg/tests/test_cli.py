import json
import subprocess
import sys

import pytest

from cycind.cli import main


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_prob_example(capsys):
    code, out, _ = run(capsys, 'prob', '--family', 'GL', '--n', '2', '--q', '2',
                       '--property', 'semisimple')
    assert code == 0
    assert out.splitlines()[0] == '1/2'


def test_limit_example(capsys):
    code, out, _ = run(capsys, 'limit', '--kind', 'rss-GL', '--q', '2')
    assert code == 0 and out.splitlines()[0] == '0.5'


def test_certify_example(capsys):
    code, out, _ = run(capsys, 'certify', '--family', 'Sp', '--n', '2', '--q', '3')
    assert code == 0 and out.strip() == 'PASS (7 classes, 24 elements)'


def test_irred(capsys):
    assert run(capsys, 'irred', 'count', '--q', '3', '--m', '4')[1].strip() == '18'
    assert run(capsys, 'irred', 'count', '--q', '2', '--m', '3', '--self-tilde')[1].strip() == '2'
    code, out, _ = run(capsys, '--format', 'json', 'irred', 'list', '--q', '5', '--m', '2',
                       '--self-bar')
    assert json.loads(out)['polys'] == ['1,1,1', '1,4,1']


def test_classes_json(capsys):
    code, out, _ = run(capsys, '--format', 'json', 'classes', '--family', 'GL', '--n', '2',
                       '--q', '2')
    obj = json.loads(out)
    assert obj['order'] == 6
    assert sorted(c['size'] for c in obj['classes']) == [1, 2, 3]


def test_classes_table(capsys):
    code, out, _ = run(capsys, 'classes', '--family', 'O+', '--n', '3', '--q', '3')
    assert code == 0 and out.strip().endswith('= 48')


def test_prob_csv(capsys):
    code, out, _ = run(capsys, '--format', 'csv', 'prob', '--family', 'Mat', '--n', '2',
                       '--q', '2', '--property', 'regular')
    header, row = out.strip().splitlines()
    assert header == 'family,n,q,property,exact,decimal'
    assert row.startswith('Mat,2,2,regular,')


def test_other_subcommands(capsys):
    assert run(capsys, 'charpoly', '--family', 'GL', '--q', '2', '--poly', '1,1,1')[1].strip() == '2'
    code, out, _ = run(capsys, 'jordan-mean', '--family', 'GL', '--q', '2', '--n-max', '3')
    assert '5/3' in out
    code, out, _ = run(capsys, 'gordon', '--k', '2', '--i', '2', '--max-degree', '12')
    assert code == 0 and out.startswith('EQUAL')
    code, out, _ = run(capsys, 'weyl', '--n', '2', '--q-list', '2,3')
    assert '1/6' in out
    code, out, _ = run(capsys, 'avg-order-bound', '--family', 'U', '--n', '1', '--q', '2')
    assert out.splitlines()[0] == '2'


def test_exit_codes(capsys):
    code, _, err = run(capsys, 'prob', '--family', 'GL', '--n', '2', '--q', '6',
                       '--property', 'regular')
    assert code == 1 and 'prime power' in err
    code, _, err = run(capsys, '--budget', '10', 'classes', '--family', 'GL', '--n', '4',
                       '--q', '2')
    assert code == 2 and 'budget' in err
    with pytest.raises(SystemExit) as e:
        main(['prob', '--family', 'GL'])
    assert e.value.code == 1


def test_output_file(tmp_path, capsys):
    path = tmp_path / 'out.json'
    code, out, _ = run(capsys, '--format', 'json', '--output', str(path), 'prob', '--family',
                       'GL', '--n', '2', '--q', '2', '--property', 'regular')
    assert code == 0 and out == ''
    assert json.loads(path.read_text())['exact'] == '5/6'


def test_deterministic(capsys):
    a = run(capsys, '--format', 'json', 'classes', '--family', 'Sp', '--n', '4', '--q', '3')[1]
    b = run(capsys, '--format', 'json', 'classes', '--family', 'Sp', '--n', '4', '--q', '3')[1]
    assert a == b


def test_module_entry_point():
    res = subprocess.run([sys.executable, '-m', 'cycind.cli', 'prob', '--family', 'GL', '--n',
                          '2', '--q', '2', '--property', 'regular-semisimple'],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines()[0] == '1/3'


def test_self_bar_edge_cases(capsys):
    code, out, _ = run(capsys, 'irred', 'list', '--q', '3', '--m', '1', '--self-bar')
    assert code == 0 and 'z+1' in out and 'z+2' in out
    code, _, err = run(capsys, 'irred', 'count', '--q', '4', '--m', '2', '--self-bar')
    assert code == 1 and 'odd q' in err
