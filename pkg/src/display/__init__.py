"""
Display module for rendering derived objects.

- components: boxes, tables, separators and the pass-ratio bar
- report: report assembly and the structured document
- text: human-readable rendering of reports
"""

from .report import Report, derive_report, noether_report, check_report, to_structured, load_report, write_report
from .text import render_report

__all__ = [
    'Report',
    'check_report',
    'derive_report',
    'load_report',
    'noether_report',
    'render_report',
    'to_structured',
    'write_report',
]
