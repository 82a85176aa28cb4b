# verification_session.py
import json
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional

import sympy

from exactmath import format_rational


def _encode(value: Any) -> Any:
    """json.dumps fallback: rationals as "a/b", sets as sorted lists, anything else as text."""
    if isinstance(value, sympy.Rational):
        return format_rational(value)
    if isinstance(value, (set, frozenset)):
        return sorted(value, key=str)
    return str(value)


def canonical_json(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False, default=_encode)


@dataclass
class RunReport:
    """Machine-readable outcome of one command."""
    command: str
    params: Optional[Dict[str, Any]] = None
    results: Dict[str, Any] = field(default_factory=dict)
    timing: Dict[str, Any] = field(default_factory=dict)
    discrepancies: List[Dict[str, Any]] = field(default_factory=list)
    exit_code: int = 0
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return 'pass' if not self.discrepancies else 'fail'

    def to_dict(self) -> Dict[str, Any]:
        return {
            'command': self.command,
            'params': self.params,
            'results': self.results,
            'timing': self.timing,
            'discrepancies': self.discrepancies,
            'status': self.status,
            'exit_code': self.exit_code,
            '_metadata': self.metadata,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> 'RunReport':
        data = json.loads(text)
        return cls(
            command=data['command'],
            params=data.get('params'),
            results=data.get('results', {}),
            timing=data.get('timing', {}),
            discrepancies=data.get('discrepancies', []),
            exit_code=data.get('exit_code', 0),
            metadata=data.get('_metadata', {}),
        )


class VerificationSession:
    """Manages state for a single verification run"""

    def __init__(self, run_id: str, command: str, logger):
        self.run_id = run_id
        self.command = command
        self.logger = logger
        self.params: Optional[Dict[str, Any]] = None
        self.results: Dict[str, Any] = {}
        self.discrepancies: List[Dict[str, Any]] = []
        self.timing: Dict[str, float] = {}
        self.errors: List[Dict[str, str]] = []
        self.exit_code = 0
        self.start_time = datetime.now()
        self.end_time = None

    def set_params(self, params: Dict[str, Any]):
        self.params = params
        self.logger.info(f"Parameters: {canonical_json(params)}")

    def add_result(self, key: str, value: Any):
        """Add a single result"""
        self.results[key] = value
        self.logger.info(f"Result added - {key}: {value}")

    def add_results(self, category: str, results: Any):
        """Add results for a category"""
        self.results[category] = results
        self.logger.info(f"Results added for category: {category}")
        self.logger.debug(canonical_json(results))

    def add_discrepancy(self, check: str, detail: Any, label: Optional[str] = None,
                        exit_code: Optional[int] = None):
        """Record an exact check that did not hold; exit_code marks a non-mathematical cause"""
        entry = {'check': check, 'detail': detail}
        if label:
            entry['label'] = label
        self.discrepancies.append(entry)
        self.logger.warning(f"Discrepancy in {check}{f' [{label}]' if label else ''}: {detail}")
        if exit_code and not self.exit_code:
            self.exit_code = exit_code

    def add_timing(self, step: str, seconds: float):
        self.timing[step] = round(seconds, 3)

    def add_error(self, error: str, exit_code: int = 1):
        """Add an error message; the first error fixes the exit code"""
        self.errors.append({
            'timestamp': datetime.now().isoformat(),
            'error': error
        })
        self.discrepancies.append({'check': 'error', 'detail': error})
        if not self.exit_code:
            self.exit_code = exit_code
        self.logger.error(error)

    @property
    def all_results(self) -> Dict[str, Any]:
        """Get all results"""
        return self.results

    def finalize(self):
        """Finalize the verification run"""
        self.end_time = datetime.now()
        duration = (self.end_time - self.start_time).total_seconds()
        self.timing['total'] = round(duration, 3)
        # A failed check with no recorded cause is a mathematical rejection
        if self.discrepancies and not self.exit_code:
            self.exit_code = 2

    def to_report(self) -> RunReport:
        return RunReport(
            command=self.command,
            params=self.params,
            results=self.results,
            timing=dict(self.timing),
            discrepancies=list(self.discrepancies),
            exit_code=self.exit_code,
            metadata={
                'run_id': self.run_id,
                'start_time': self.start_time.isoformat(),
                'end_time': self.end_time.isoformat() if self.end_time else None,
                'errors': self.errors,
            },
        )
