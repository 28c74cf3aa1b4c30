"""
Utilities for formatting run results as CSV or JSON.
"""

import csv
import io
import json
import math
import os
import tempfile
from typing import Any, Dict, List, Optional, Sequence

from numkit.errors import GeometryError, ParseError

VERDICT_HEADER = ['theorem_tag', 'trials', 'violations', 'worst_margin', 'passed', 'seeds']


class RecordFormatter:
    """
    Class for rendering metrics, sweep records and verdicts.
    """

    @staticmethod
    def format_value(value: Any) -> str:
        """
        Render one CSV cell.

        Args:
            value: Number, bool, string or None.

        Returns:
            Floats with 12 significant digits, bools as true/false, None as
            an empty cell.
        """
        if value is None:
            return ''
        if isinstance(value, bool):
            return 'true' if value else 'false'
        if isinstance(value, int):
            return str(value)
        if isinstance(value, float):
            return '%.12g' % value
        return str(value)

    @staticmethod
    def header_for(rows: List[Dict[str, Any]], fixed: Optional[Sequence[str]] = None) -> List[str]:
        """Fixed leading columns followed by every other key in first-seen order."""
        header = list(fixed or [])
        for row in rows:
            for key in row:
                if key not in header:
                    header.append(key)
        return header

    @staticmethod
    def to_csv(rows: List[Dict[str, Any]], header: Sequence[str]) -> str:
        """
        Render rows as CSV with `\\n` line endings.

        Args:
            rows: Flat records.
            header: Column order; missing cells are left empty.

        Returns:
            CSV text including the header line.
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([RecordFormatter.format_value(row.get(column)) for column in header])
        return buffer.getvalue()

    @staticmethod
    def _json_safe(value: Any) -> Any:
        if isinstance(value, float) and not math.isfinite(value):
            return str(value)
        if isinstance(value, dict):
            return {key: RecordFormatter._json_safe(item) for key, item in value.items()}
        if isinstance(value, (list, tuple)):
            return [RecordFormatter._json_safe(item) for item in value]
        return value

    @staticmethod
    def to_json(config: Dict[str, Any], rows: List[Dict[str, Any]], extra: Optional[Dict[str, Any]] = None) -> str:
        """
        Render a config echo block and the records as JSON.

        Non-finite floats become the strings "inf", "-inf" and "nan".
        """
        document = {'config': config, 'records': rows}
        if extra:
            document.update(extra)
        return json.dumps(RecordFormatter._json_safe(document), indent=2, ensure_ascii=False) + '\n'

    @staticmethod
    def format_error(error: Exception) -> Dict[str, Any]:
        """
        Machine-readable error record.

        Args:
            error: The exception that ended the run.

        Returns:
            Dictionary with success flag, error class, message and exit code
            (and the offending position for parse errors).
        """
        record = {
            'success': False,
            'error': type(error).__name__,
            'message': str(error),
            'exit_code': error.exit_code if isinstance(error, GeometryError) else 3,
        }
        if isinstance(error, ParseError):
            record['position'] = error.position
        return record

    @staticmethod
    def format_result(config: Dict[str, Any], rows: List[Dict[str, Any]], passed: bool = True) -> Dict[str, Any]:
        """Successful API payload."""
        return {
            'success': True,
            'passed': passed,
            'result': RecordFormatter._json_safe({'config': config, 'records': rows}),
        }

    @staticmethod
    def write_atomic(path: str, text: str) -> None:
        """Write UTF-8 text through a temporary file in the target directory and rename it into place."""
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        handle, temporary = tempfile.mkstemp(dir=directory, prefix='.tmp-', suffix=os.path.basename(path))
        try:
            with os.fdopen(handle, 'w', encoding='utf-8', newline='') as stream:
                stream.write(text)
            os.replace(temporary, path)
        except BaseException:
            if os.path.exists(temporary):
                os.remove(temporary)
            raise
