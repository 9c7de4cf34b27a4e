"""
Theory files (.thy): lexer, parser, syntax tree, elaborator and diagnostics.

    result = parse(source)          # never raises for malformed input
    theory = elaborate(result.document)
    theory = load_theory(path)      # both steps; raises ElaborationError
"""
import logging
import os

from ..constants import SHIPPED_THEORIES
from ..models import Theory
from .diagnostics import Diagnostic, ElaborationError, Severity, SourceSpan, error
from .elaborator import elaborate
from .parser import ParseResult, parse

logger = logging.getLogger(__name__)

THEORY_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data", "theories")

__all__ = [
    "Diagnostic",
    "ElaborationError",
    "ParseResult",
    "Severity",
    "SourceSpan",
    "THEORY_DIR",
    "elaborate",
    "load_source",
    "load_theory",
    "parse",
    "shipped_path",
    "shipped_source",
]


def load_source(source: str) -> Theory:
    """
    Parse and elaborate theory text.

    Raises:
        ElaborationError: parse or elaboration diagnostics, all of them
    """
    result = parse(source)
    if not result.ok:
        diagnostics = result.diagnostics or [error(SourceSpan(1, 1, 0), "parse failed")]
        raise ElaborationError(diagnostics)
    return elaborate(result.document)


def load_theory(path: str) -> Theory:
    """
    Read a .thy file and elaborate it.

    Raises:
        OSError: the file cannot be read
        ElaborationError: the file has errors
    """
    with open(path, "r", encoding="utf-8") as f:
        source = f.read()
    logger.info("elaborating %s", path)
    return load_source(source)


def shipped_path(theory_id: str) -> str:
    try:
        return os.path.join(THEORY_DIR, SHIPPED_THEORIES[theory_id])
    except KeyError:
        raise KeyError(f"no shipped theory {theory_id!r}") from None


def shipped_source(theory_id: str) -> str:
    with open(shipped_path(theory_id), "r", encoding="utf-8") as f:
        return f.read()
