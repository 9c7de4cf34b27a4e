"""
Reports - derived objects of one CLI run, as text or a structured document.

This module provides:
- Report: the sections of a run keyed by the stable report keys
- derive_report / noether_report / check_report: assemble a run's sections
- to_structured / from_structured: the JSON document and its inverse
- write_report / load_report: file I/O with user-facing failures

Expressions are stored as canonical sympy strings and read back with the
process symbol table, so a loaded document reproduces identical Exprs.
"""
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import sympy
from sympy.parsing.sympy_parser import parse_expr

from ..checks import SuiteReport
from ..constants import DEFAULT_SEED, REPORT_KEYS, REPORT_SCHEMA_VERSION
from ..geometry import DiffForm
from ..jets import jet_bundle
from ..models import GeneratorFamily, Theory
from ..symcore import SYMBOLS, Expr, canonicalize
from ..symmetry import (
    converse_extraction,
    covariant_momentum_map,
    current_density,
    noether_divergence_identity,
    on_shell_conservation,
    vertical_transitivity,
)
from ..variational import cartan_form, euler_lagrange, legendre

logger = logging.getLogger(__name__)


@dataclass
class Report:
    """
    Sections of one run.

    Attributes:
        theory: Theory name
        command: derive, noether or check
        sections: Report key -> Expr, {name: Expr}, DiffForm, list or dict
        generator: Generator name for noether runs
        settings: Sampling settings the run used
    """
    theory: str
    command: str
    sections: Dict[str, Any] = field(default_factory=dict)
    generator: Optional[str] = None
    settings: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        unknown = set(self.sections) - set(REPORT_KEYS)
        if unknown:
            raise ValueError(f"unknown report keys: {sorted(unknown)}")


# =================== Assembly ===================

def derive_report(theory: Theory) -> Report:
    """Multimomenta, covariant Hamiltonian, Cartan form and Euler-Lagrange expressions."""
    lt = legendre(theory)
    return Report(theory.name, "derive", {
        "multimomenta": {s.name: e for s, e in lt.momenta.items()},
        "covariant_hamiltonian": lt.hamiltonian,
        "cartan_form": cartan_form(theory),
        "euler_lagrange": {y.name: e for y, e in euler_lagrange(theory).items()},
    })


def noether_report(theory: Theory, g: GeneratorFamily, seed: int = DEFAULT_SEED) -> Report:
    """Momentum map, current density, divergence residual, on-shell verdict and converse equations."""
    jb = jet_bundle(theory.bundle)
    identity = noether_divergence_identity(theory, g)
    on_shell = on_shell_conservation(theory, g)
    converse = converse_extraction(theory, g, seed)
    transitivity = vertical_transitivity(theory, seed=seed)
    sections = {
        "momentum_map": covariant_momentum_map(theory, g),
        "noether_current": {c: j for c, j in zip(jb.spec.coords, current_density(theory, g))},
        "divergence_residual": identity.residual,
        "on_shell": {
            "conserved": on_shell.conserved,
            "solved_for": [s.name for s in on_shell.solved_for],
            "divergence": on_shell.divergence,
        },
        "converse_equations": {
            "equations": list(converse.remaining if converse.forced else converse.equations),
            "forced": [y.name for y in converse.forced],
            "forces_all": converse.forces_all,
        },
        "vertical_transitivity": {
            "verdict": transitivity.verdict,
            "rank": transitivity.rank,
            "dim": transitivity.dim,
        },
    }
    return Report(theory.name, "noether", sections, generator=g.name)


def check_report(suite_report: SuiteReport) -> Report:
    results = [{"suite": r.suite, "name": r.name, "passed": r.passed, "detail": r.detail}
               for r in suite_report.results]
    return Report(suite_report.theory, "check", {"check_results": results})


# =================== Structured documents ===================

def _encode(value) -> Any:
    if isinstance(value, DiffForm):
        coords = value.chart.coords
        return {
            "form": {
                "chart": value.chart.name,
                "degree": value.degree,
                "terms": [{"basis": [coords[i].name for i in key], "coefficient": str(canonicalize(c))}
                          for key, c in sorted(value.terms.items())],
            }
        }
    if isinstance(value, sympy.Basic):
        return {"expr": str(canonicalize(value))}
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def to_structured(report: Report) -> Dict[str, Any]:
    """The self-describing JSON-compatible document of a report."""
    doc = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "theory": report.theory,
        "command": report.command,
        "generator": report.generator,
        "settings": dict(report.settings),
    }
    for key in REPORT_KEYS:
        if key in report.sections:
            doc[key] = _encode(report.sections[key])
    return doc


def parse_canonical(text: str) -> Expr:
    """Read an expression string with the interned symbols of this process."""
    return canonicalize(parse_expr(text, local_dict=SYMBOLS.local_dict()))


@dataclass(frozen=True)
class FormDocument:
    """A form read back from a document; basis names instead of chart indices."""
    chart: str
    degree: int
    terms: Dict[Tuple[str, ...], Expr]


def _decode(value) -> Any:
    if isinstance(value, dict):
        if set(value) == {"expr"}:
            return parse_canonical(value["expr"])
        if set(value) == {"form"}:
            f = value["form"]
            return FormDocument(f["chart"], f["degree"],
                                {tuple(t["basis"]): parse_canonical(t["coefficient"]) for t in f["terms"]})
        return {k: _decode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_decode(v) for v in value]
    return value


def from_structured(doc: Dict[str, Any]) -> Report:
    """
    Rebuild a report from its document; forms come back as FormDocument.

    Raises:
        ValueError: unsupported schema version
    """
    version = doc.get("schema_version")
    if version != REPORT_SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema {version!r}")
    sections = {k: _decode(doc[k]) for k in REPORT_KEYS if k in doc}
    return Report(doc["theory"], doc["command"], sections, doc.get("generator"), doc.get("settings") or {})


def write_report(doc: Dict[str, Any], filepath: str) -> bool:
    """Write a structured document; False (with a logged error) when the file cannot be written."""
    try:
        with open(filepath, "w", encoding="utf-8") as f:
            json.dump(doc, f, ensure_ascii=False, indent=2)
        return True
    except (OSError, ValueError) as e:
        logger.error("could not write report %s: %s", filepath, e)
        return False


def load_report(filepath: str) -> Optional[Report]:
    """Read a structured document back; None when it is missing or malformed."""
    try:
        with open(filepath, "r", encoding="utf-8") as f:
            doc = json.load(f)
        return from_structured(doc)
    except (OSError, ValueError, KeyError, SyntaxError, TypeError) as e:
        logger.error("could not load report %s: %s", filepath, e)
        return None


def dumps(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2)
