"""
Text rendering of reports.

Symbols are shown in their display form (p[A_1]^0, g^01, √|g|); the
text is for reading only and is never parsed back.
"""
from typing import Any, Dict, List

import sympy

from i18n import i18n

from ..geometry import DiffForm
from ..symcore import SYMBOLS, Expr
from .components import render_box, render_ratio_bar, render_separator, render_table
from .report import FormDocument, Report

REPORT_WIDTH = 88


def display_expr(e: Expr) -> str:
    e = sympy.sympify(e)
    names = {}
    for s in e.free_symbols:
        sid = SYMBOLS.get(s)
        if sid is not None:
            names[s] = sympy.Symbol(sid.display())
    return sympy.sstr(e.xreplace(names))


def display_form(form) -> str:
    """Sum of coefficient * d(basis) terms; 0 for the zero form."""
    if isinstance(form, DiffForm):
        coords = form.chart.coords
        terms = [([coords[i] for i in key], c) for key, c in sorted(form.terms.items())]
        basis_name = lambda s: SYMBOLS.get(s).display() if SYMBOLS.get(s) else str(s)
    else:
        terms = [(list(key), c) for key, c in sorted(form.terms.items())]
        basis_name = str
    if not terms:
        return "0"
    lines = []
    for basis, c in terms:
        wedge = " ∧ ".join("d" + basis_name(b) for b in basis)
        lines.append(f"({display_expr(c)}) {wedge}" if wedge else display_expr(c))
    return "\n  + ".join(lines)


def _render_value(value: Any) -> str:
    if isinstance(value, (DiffForm, FormDocument)):
        return display_form(value)
    if isinstance(value, sympy.Basic):
        return display_expr(value)
    if isinstance(value, dict):
        return "\n".join(f"{k}: {_render_value(v)}" for k, v in value.items())
    if isinstance(value, list):
        return "\n".join(_render_value(v) for v in value) or "-"
    if value is None:
        return i18n.t("report.undetermined")
    return str(value)


def render_check_results(results: List[Dict[str, Any]]) -> str:
    passed = sum(1 for r in results if r["passed"])
    verdict = lambda r: i18n.t("report.pass") if r["passed"] else i18n.t("report.fail")
    rows = [[r["suite"], r["name"], verdict(r), r.get("detail", "")] for r in results]
    table = render_table([i18n.t("report.suite"), i18n.t("report.check"), i18n.t("report.verdict"),
                          i18n.t("report.detail")], rows)
    summary = i18n.t("report.summary", passed=passed, total=len(results))
    return f"{table}\n{render_ratio_bar(passed, len(results))} {summary}"


def render_report(report: Report) -> str:
    """Every section in report-key order, each in its own box."""
    heading = i18n.t(f"report.command.{report.command}", theory=report.theory,
                     generator=report.generator or "")
    parts = [heading, render_separator(REPORT_WIDTH, "double")]
    for key, value in report.sections.items():
        title = i18n.t(f"report.sections.{key}", default=key)
        if key == "check_results":
            parts.append(render_check_results(value))
        else:
            parts.append(render_box(_render_value(value), title, REPORT_WIDTH))
    return "\n".join(parts)
