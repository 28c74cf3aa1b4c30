"""
End-to-end tests for the command-line surface.
"""

import csv
import io
import json
import os
from dataclasses import asdict

import pytest

import cli
from cli import RunConfig, build_parser, config_from_args, main, run
from numkit.errors import DomainError


def _csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def _error_record(capsys):
    # log lines may precede the record on stderr
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


def test_compute_ball_gives_p_and_q_equal_to_n(capsys):
    assert main(['compute', 'ball:1', '--n', '5', '--samples', '2000', '--out', '-']) == 0
    rows = _csv_rows(capsys.readouterr().out)
    assert len(rows) == 1
    assert rows[0]['body'] == 'ball:1'
    assert float(rows[0]['p']) == pytest.approx(5.0, rel=1e-9)
    assert float(rows[0]['q']) == pytest.approx(5.0, rel=1e-9)
    assert float(rows[0]['t']) == pytest.approx(1.0, rel=1e-9)


def test_compute_ellipsoid_fills_the_surface_column(capsys):
    assert main(['compute', 'ellipsoid:1,2,3', '--samples', '4000', '--out', '-']) == 0
    row = _csv_rows(capsys.readouterr().out)[0]
    assert float(row['surface']) > 0.0
    assert float(row['surface_se']) > 0.0
    assert row['dim'] == '3'


def test_verify_interlacing_passes(capsys):
    status = main(['verify', 'interlacing', '--n', '6', '--k', '3', '--trials', '100', '--seed', '7', '--out', '-'])
    assert status == 0
    document = json.loads(capsys.readouterr().out)
    record = document['records'][0]
    assert record['theorem_tag'] == 'interlacing'
    assert record['violations'] == 0
    assert record['trials'] == 200


def test_surface_slicing_sweep_rows_increase(capsys):
    argv = ['sweep', 'surface-slicing', '--n', '4', '--r', '2,4,8', '--samples', '20000', '--out', '-']
    assert main(argv) == 0
    rows = _csv_rows(capsys.readouterr().out)
    assert [float(row['parameter']) for row in rows] == [2.0, 4.0, 8.0]
    ratios = [float(row['ratio']) for row in rows]
    assert ratios[0] < ratios[1] < ratios[2]


def test_reruns_are_byte_identical():
    argv = ['sweep', 'q-unbounded', '--n', '3', '--samples', '5000', '--seed', '11']
    first = run(config_from_args(build_parser().parse_args(argv)))
    second = run(config_from_args(build_parser().parse_args(argv)))
    assert first == second


def test_worker_count_does_not_change_the_output():
    argv = ['compute', 'ellipsoid:1,2,4', '--samples', '9000', '--chunk-size', '1000']
    serial = run(config_from_args(build_parser().parse_args(argv + ['--workers', '1'])))
    threaded = run(config_from_args(build_parser().parse_args(argv + ['--workers', '4'])))
    assert serial == threaded


def test_parse_errors_exit_with_two(capsys):
    assert main(['compute', 'box:1,,3', '--out', '-']) == 2
    record = _error_record(capsys)
    assert record['error'] == 'ParseError'
    assert record['position'] == 6


def test_domain_errors_exit_with_two(capsys):
    assert main(['verify', 'interlacing', '--samples', '10', '--out', '-']) == 2
    assert _error_record(capsys)['error'] == 'DomainError'


def test_unknown_target_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        main(['sweep', 'nowhere'])
    assert info.value.code == 2


def test_json_output_echoes_the_config():
    config = RunConfig(command='sweep', target='p-limits', samples=2000, format='json', n=4, s=[1.0, 10.0])
    status, text = run(config)
    assert status == 0
    document = json.loads(text)
    assert document['config'] == asdict(config)
    assert RunConfig(**document['config']) == config
    assert [record['parameter'] for record in document['records']] == [1.0, 10.0]


def test_default_formats():
    assert RunConfig(command='compute', body='ball:1').format == 'csv'
    assert RunConfig(command='sweep', target='q-unbounded').format == 'csv'
    assert RunConfig(command='verify', target='cube-section').format == 'json'


@pytest.mark.parametrize('options', [
    {'command': 'launch'},
    {'command': 'verify', 'target': 'everything'},
    {'command': 'compute'},
    {'command': 'compute', 'body': 'ball:1', 'format': 'xml'},
    {'command': 'compute', 'body': 'ball:1', 'seed': -1},
    {'command': 'verify', 'target': 'interlacing', 'samples': 999},
])
def test_invalid_configs(options):
    with pytest.raises(DomainError):
        RunConfig(**options)


def test_positive_bound_needs_an_ellipsoid():
    config = RunConfig(command='verify', target='positive-bound', body='cube:1', samples=1000)
    with pytest.raises(DomainError):
        run(config)


def test_cube_section_verdict(capsys):
    assert main(['verify', 'cube-section', '--trials', '500', '--out', '-']) == 0
    record = json.loads(capsys.readouterr().out)['records'][0]
    assert record['passed'] is True
    assert record['closed_form'] == pytest.approx(4.0 + 4.0 * 2.0 ** 0.5)


def test_output_lands_under_the_results_directory(tmp_path, monkeypatch):
    monkeypatch.setattr(cli, 'OUTPUT_DIR', str(tmp_path))
    assert main(['compute', 'cube:1', '--samples', '2000', '--seed', '3']) == 0
    path = tmp_path / 'compute-3.csv'
    assert path.exists()
    assert path.read_text(encoding='utf-8').startswith('body,dim,seed,volume')
    assert os.listdir(tmp_path) == ['compute-3.csv']


def test_compute_rows_carry_the_seed(capsys):
    assert main(['compute', 'cube:1', '--n', '3', '--samples', '2000', '--seed', '12345', '--out', '-']) == 0
    rows = _csv_rows(capsys.readouterr().out)
    assert rows[0]['seed'] == '12345'


def test_sweep_rows_carry_the_seed(capsys):
    argv = ['sweep', 'q-unbounded', '--n', '3', '--a', '0.5,0.25', '--samples', '2000', '--seed', '12345', '--out', '-']
    assert main(argv) == 0
    rows = _csv_rows(capsys.readouterr().out)
    assert [row['seed'] for row in rows] == ['12345', '12345']


def test_verify_csv_carries_the_seed(capsys):
    argv = ['verify', 'cube-section', '--trials', '200', '--seed', '12345', '--format', 'csv', '--out', '-']
    assert main(argv) == 0
    row = _csv_rows(capsys.readouterr().out)[0]
    assert '12345' in row['seeds'].split()


def test_unrepresentable_volume_exits_with_two(capsys):
    assert main(['compute', 'wl1:1e200,3', '--samples', '2000', '--out', '-']) == 2
    record = _error_record(capsys)
    assert record['error'] == 'DomainError'
    assert 'double range' in record['message']


def test_stray_numerical_errors_exit_with_three(capsys, monkeypatch):
    def overflow(config):
        raise OverflowError('math range error')

    monkeypatch.setattr(cli, 'run', overflow)
    assert main(['compute', 'ball:1', '--n', '3', '--out', '-']) == 3
    record = _error_record(capsys)
    assert record['error'] == 'OverflowError'
    assert record['exit_code'] == 3


def test_box_sweep_takes_a_single_short_side():
    with pytest.raises(DomainError):
        RunConfig(command='sweep', target='p-limits', family='box', s=[1.0, 2.0])
    assert RunConfig(command='sweep', target='p-limits', family='box', s=[2.0]).s == [2.0]


def test_box_sweep_with_two_short_sides_exits_with_two(capsys):
    assert main(['sweep', 'p-limits', '--family', 'box', '--s', '1,2', '--out', '-']) == 2
    assert _error_record(capsys)['error'] == 'DomainError'


def test_random_positive_bound_with_codimension(capsys):
    argv = ['verify', 'positive-bound', '--k', '3', '--count', '2', '--trials', '5',
            '--samples', '20000', '--out', '-']
    assert main(argv) == 0
    record = json.loads(capsys.readouterr().out)['records'][0]
    assert record['violations'] == 0
