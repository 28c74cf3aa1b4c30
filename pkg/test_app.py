"""
Tests for the JSON API.
"""

import pytest

from app import app


@pytest.fixture
def client():
    app.config['TESTING'] = True
    with app.test_client() as client:
        yield client


def test_health_lists_targets(client):
    response = client.get('/api/health')
    assert response.status_code == 200
    assert 'interlacing' in response.get_json()['commands']['verify']


def test_compute_ball(client):
    response = client.post('/api/compute', json={'body': 'ball:2', 'n': 4, 'samples': 2000})
    assert response.status_code == 200
    payload = response.get_json()
    assert payload['success'] and payload['passed']
    record = payload['result']['records'][0]
    assert record['p'] == pytest.approx(4.0, rel=1e-9)
    assert payload['result']['config']['seed'] == 7


def test_verify_cube_section(client):
    response = client.post('/api/verify', json={'target': 'cube-section', 'trials': 300})
    assert response.status_code == 200
    assert response.get_json()['result']['records'][0]['violations'] == 0


def test_sweep_grid(client):
    response = client.post('/api/sweep', json={'target': 'q-unbounded', 'n': 3, 'a': [0.5, 0.25], 'samples': 4000})
    assert response.status_code == 200
    records = response.get_json()['result']['records']
    assert [record['parameter'] for record in records] == [0.5, 0.25]


def test_parse_error_is_a_bad_request(client):
    response = client.post('/api/compute', json={'body': 'ball:x'})
    assert response.status_code == 400
    payload = response.get_json()
    assert payload['success'] is False
    assert payload['error'] == 'ParseError'
    assert payload['position'] == 5


def test_missing_body(client):
    assert client.post('/api/compute', data='nope', content_type='text/plain').status_code == 400


def test_unknown_fields_are_rejected(client):
    response = client.post('/api/sweep', json={'target': 'q-unbounded', 'colour': 'red'})
    assert response.status_code == 400
    assert 'colour' in response.get_json()['error']
