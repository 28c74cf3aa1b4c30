"""
Utilities package: body descriptions and result formatting.
"""

from utils.body_spec import parse_body_spec, BODY_KINDS
from utils.record_formatter import RecordFormatter

__all__ = ['parse_body_spec', 'BODY_KINDS', 'RecordFormatter']
