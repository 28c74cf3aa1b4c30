"""
Flask application exposing the toolkit as a JSON API.

Every endpoint takes the same fields as the command line (seed, samples,
n, k, j, r, a, s, trials, family, count, workers, chunk_size) and answers
with the run's config echo and records.
"""

import logging
import traceback
from dataclasses import fields

from flask import Flask, jsonify, request
from flask_cors import CORS

from config import DEBUG, HOST, LOG_LEVEL, PORT
from cli import RUNNERS, SWEEP_TARGETS, VERIFY_TARGETS, RunConfig
from numkit.errors import GeometryError
from utils.record_formatter import RecordFormatter

# Initialize Flask application
app = Flask(__name__)
CORS(app)

logging.basicConfig(level=logging.DEBUG if DEBUG else getattr(logging, LOG_LEVEL, logging.INFO))
logger = logging.getLogger(__name__)

# Fields a request may set; command comes from the route and out is CLI-only
REQUEST_FIELDS = {f.name for f in fields(RunConfig)} - {'command', 'out', 'format'}

# Exit code -> HTTP status
STATUS_FOR_EXIT = {1: 422, 2: 400, 3: 500}


def _error_response(error: Exception):
    record = RecordFormatter.format_error(error)
    return jsonify(record), STATUS_FOR_EXIT.get(record['exit_code'], 500)


def handle_run(command: str):
    """
    Build a RunConfig from the request body and run it.

    Returns:
        JSON payload with success/passed flags and the result records; a
        failed verifier answers 422, bad input 400, numerical failure 500.
    """
    data = request.get_json(silent=True)
    if data is None:
        return jsonify({
            'success': False,
            'error': 'No JSON data provided'
        }), 400

    unknown = sorted(set(data) - REQUEST_FIELDS)
    if unknown:
        return jsonify({
            'success': False,
            'error': f'Unknown fields: {", ".join(unknown)}'
        }), 400

    try:
        config = RunConfig(command=command, **data)
        if DEBUG:
            logger.info(f"Received {command} request: {config.echo()}")
        rows, _, passed = RUNNERS[command](config)
        payload = RecordFormatter.format_result(config.echo(), rows, passed)
        return jsonify(payload), (200 if passed else 422)

    except GeometryError as e:
        logger.warning(f"Rejected {command} request: {str(e)}")
        return _error_response(e)

    except Exception as e:
        logger.error(f"Error in {command} endpoint: {str(e)}")
        logger.error(traceback.format_exc())
        return _error_response(e)


@app.route('/api/health', methods=['GET'])
def health():
    """List the available commands and targets."""
    return jsonify({
        'success': True,
        'commands': {
            'compute': [],
            'verify': list(VERIFY_TARGETS),
            'sweep': list(SWEEP_TARGETS),
        },
    })


@app.route('/api/compute', methods=['POST'])
def compute():
    """Metrics of one body; expects at least `body`."""
    return handle_run('compute')


@app.route('/api/verify', methods=['POST'])
def verify():
    """Run a verifier; expects at least `target`."""
    return handle_run('verify')


@app.route('/api/sweep', methods=['POST'])
def sweep():
    """Run a sweep; expects at least `target`."""
    return handle_run('sweep')


if __name__ == '__main__':
    logger.info(f"Starting server on {HOST}:{PORT} (Debug: {DEBUG})")
    app.run(host=HOST, port=PORT, debug=DEBUG)
