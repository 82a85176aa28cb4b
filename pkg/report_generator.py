# report_generator.py
import os
from datetime import datetime
from typing import Any, Dict, List, Optional

from jinja2 import Environment, FileSystemLoader, select_autoescape

from config import VerifierConfig
from utils import write_file
from verification_session import RunReport, canonical_json


class ReportGenerator:
    """Generates verification reports in HTML and JSON"""

    STATUS_COLORS = {
        'pass': '#4CAF50',
        'fail': '#F44336',
    }

    def __init__(self, logger, config: Optional[VerifierConfig] = None):
        self.logger = logger
        self.config = config or VerifierConfig()
        self.env = Environment(
            loader=FileSystemLoader(os.path.join(os.path.dirname(os.path.abspath(__file__)), 'templates')),
            autoescape=select_autoescape(['html', 'xml']),
        )

    @staticmethod
    def _sections(results: Dict[str, Any]) -> List[Dict[str, Any]]:
        """One block per result category, pretty-printed for the template."""
        sections = []
        for name in sorted(results):
            value = results[name]
            passed = value.get('passed') if isinstance(value, dict) else None
            sections.append({
                'title': name.replace('_', ' ').title(),
                'passed': passed,
                'body': canonical_json(value),
            })
        return sections

    def generate_html_report(self, report: RunReport) -> str:
        """Generate HTML report using Jinja2 template"""
        resolutions = report.results.get('resolutions', {})
        template = self.env.get_template('report.html.j2')
        return template.render(
            run_id=report.metadata.get('run_id', ''),
            command=report.command,
            timestamp=datetime.now().strftime('%Y-%m-%d %H:%M:%S'),
            status=report.status,
            status_color=self.STATUS_COLORS.get(report.status, '#999'),
            exit_code=report.exit_code,
            params=canonical_json(report.params) if report.params else None,
            resolutions=[dict(r, key=key, outcomes_text=canonical_json(r.get('outcomes', {})))
                         for key, r in sorted(resolutions.items()) if isinstance(r, dict)],
            sections=self._sections({k: v for k, v in report.results.items() if k != 'resolutions'}),
            discrepancies=[dict(d, detail_text=canonical_json(d.get('detail'))) for d in report.discrepancies],
            timing=sorted(report.timing.items()),
            errors=report.metadata.get('errors', []),
        )

    def generate_json_report(self, report: RunReport) -> str:
        """Generate JSON report"""
        return report.to_json()

    def save_report(self, content: str, filename: str) -> Optional[str]:
        """Save report to file"""
        try:
            filepath = os.path.join(self.config.REPORT_DIR, filename)
            write_file(filepath, content)
            self.logger.info(f"Report saved to {filepath}")
            return filepath
        except OSError as e:
            self.logger.error(f"Failed to save report: {e}")
            return None
