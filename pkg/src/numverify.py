"""
Numeric verification - seeded sampling oracles for symbolic identities.

This module provides:
- SamplePlan: number of samples, tolerance and seed for one verification
- sample_point: a consistent random point of a chart
- verify_identity: pointwise comparison of two expressions with a deviation report
- finite_difference_check: symbolic derivative against central differences
- flow_generator_check: a one-parameter family of chart maps against its generator

Every result is deterministic for a given seed.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

import numpy as np
import sympy

from .constants import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_TOL,
    FD_REL_TOL,
    FD_SAMPLES,
    FD_STEP,
    FLOW_STEP,
    FLOW_TOL,
    MAX_SAMPLE_ATTEMPTS,
)
from .geometry import Chart, ChartMap, VectorField
from .symcore import (
    SYMBOLS,
    Assignment,
    DegenerateSample,
    Expr,
    NegativeRadicand,
    NumericFunction,
    SingularPoint,
    diff,
    sample_assignment,
)

logger = logging.getLogger(__name__)

__all__ = [
    "DegenerateSample",
    "SamplePlan",
    "VerificationReport",
    "finite_difference_check",
    "flow_generator_check",
    "sample_point",
    "verify_identity",
]


@dataclass(frozen=True)
class SamplePlan:
    """How many points to draw, the tolerance to accept, and the seed."""
    n_samples: int = DEFAULT_SAMPLES
    tol: float = DEFAULT_TOL
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be at least 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


@dataclass
class VerificationReport:
    """
    Outcome of a numeric comparison.

    Attributes:
        name: What was compared
        passed: True when every sample was within tolerance
        samples: Number of points evaluated
        max_deviation: Largest scaled deviation seen
        worst_point: Symbol name -> value at the largest deviation
    """
    name: str
    passed: bool
    samples: int
    max_deviation: float
    worst_point: Dict[str, float] = field(default_factory=dict)

    def summary(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return f"{self.name}: {verdict} (max deviation {self.max_deviation:.3e} over {self.samples} samples)"


def sample_point(chart: Chart, seed: int = DEFAULT_SEED) -> Assignment:
    """Values for every coordinate of a chart; metric groups come with inverse and density."""
    return sample_assignment(chart.coords, np.random.default_rng(seed))


def _draw(functions, symbols, rng: np.random.Generator):
    """A point where all functions evaluate, and their values."""
    for _ in range(MAX_SAMPLE_ATTEMPTS):
        point = sample_assignment(symbols, rng)
        try:
            return point, [f(point) for f in functions]
        except (NegativeRadicand, SingularPoint):
            logger.debug("redrawing sample outside the domain")
    raise DegenerateSample("no admissible sample point")


def _scaled(a: float, b: float) -> float:
    return abs(a - b) / (1.0 + abs(a) + abs(b))


def verify_identity(lhs, rhs, plan: Optional[SamplePlan] = None,
                    name: str = "identity") -> VerificationReport:
    """
    Compare lhs and rhs at plan.n_samples seeded points.

    The deviation at a point is |lhs - rhs| / (1 + |lhs| + |rhs|).

    Raises:
        UnboundSymbol: an expression contains an undefined function
        DegenerateSample: no admissible point in MAX_SAMPLE_ATTEMPTS draws
    """
    plan = plan or SamplePlan()
    fl, fr = NumericFunction(lhs), NumericFunction(rhs)
    symbols = set(fl.symbols) | set(fr.symbols)
    rng = plan.rng()
    worst, worst_point = 0.0, {}
    for _ in range(plan.n_samples):
        point, (a, b) = _draw((fl, fr), symbols, rng)
        dev = _scaled(a, b)
        if dev > worst or not worst_point:
            worst = dev
            worst_point = {str(s): v for s, v in point.items() if s in symbols}
    report = VerificationReport(name, worst <= plan.tol, plan.n_samples, worst, worst_point)
    if not report.passed:
        logger.warning("numeric verification failed: %s", report.summary())
    return report


def _perturbed(point: Assignment, symbol: sympy.Symbol, delta: float) -> Assignment:
    """Shift one coordinate; metric groups are recomputed from their lower components."""
    out = dict(point)
    grp = SYMBOLS.metric_of(symbol)
    if grp is None:
        out[symbol] = point[symbol] + delta
        return out
    if symbol not in grp.lower.values():
        raise ValueError(f"{symbol} depends on the metric; differentiate by a lower component")
    g = np.array([[point[grp.g(a, b)] for b in range(grp.dim)] for a in range(grp.dim)])
    for (a, b), s in grp.lower.items():
        if s == symbol:
            g[a, b] += delta
    ginv = np.linalg.inv(g)
    for (a, b), s in grp.lower.items():
        out[s] = float(g[a, b])
    for (a, b), s in grp.upper.items():
        out[s] = float(ginv[a, b])
    out[grp.sqrt_det] = float(np.sqrt(abs(np.linalg.det(g))))
    return out


def _hidden_dependents(e: Expr, symbol: sympy.Symbol):
    grp = SYMBOLS.metric_of(symbol)
    for d in e.free_symbols:
        if d == symbol or (grp is not None and d in grp.symbols()):
            continue
        if SYMBOLS.partial(d, symbol) is not None:
            yield d


def finite_difference_check(expr, symbol: sympy.Symbol, plan: Optional[SamplePlan] = None,
                            step: float = FD_STEP, rel_tol: float = FD_REL_TOL) -> VerificationReport:
    """
    Compare diff(expr, symbol) with a central difference of step h.

    The error at a point is |symbolic - fd| / max(1, |symbolic|) and must not
    exceed rel_tol. Differentiating by a metric component moves the whole
    metric group consistently.

    Raises:
        ValueError: expr depends on symbol through symbols that the sample
            cannot move (target-metric or jet-parameter towers)
    """
    plan = plan or SamplePlan(n_samples=FD_SAMPLES, tol=rel_tol)
    e = sympy.sympify(expr)
    hidden = sorted(map(str, _hidden_dependents(e, symbol)))
    if hidden:
        raise ValueError(f"{hidden[0]} depends on {symbol}; finite differences cannot follow it")
    f = NumericFunction(e)
    df = NumericFunction(diff(e, symbol))
    symbols = set(f.symbols) | set(df.symbols) | {symbol}

    def central(point: Assignment) -> float:
        return (f(_perturbed(point, symbol, step)) - f(_perturbed(point, symbol, -step))) / (2 * step)

    rng = plan.rng()
    worst, worst_point = 0.0, {}
    for _ in range(plan.n_samples):
        point, (exact, approx) = _draw((df, central), symbols, rng)
        err = abs(exact - approx) / max(1.0, abs(exact))
        if err > worst or not worst_point:
            worst = err
            worst_point = {str(s): v for s, v in point.items() if s in symbols}
    report = VerificationReport(f"∂/∂{symbol}", worst <= rel_tol, plan.n_samples, worst, worst_point)
    if not report.passed:
        logger.warning("finite differences disagree: %s", report.summary())
    return report


def flow_generator_check(family: Callable[[float], ChartMap], V: VectorField,
                         plan: Optional[SamplePlan] = None, step: float = FLOW_STEP,
                         tol: float = FLOW_TOL) -> VerificationReport:
    """
    d/ds family(s) at s = 0 against the components of V.

    family(0) must be the identity of V's chart.
    """
    plan = plan or SamplePlan(tol=tol)
    chart = V.chart
    forward, backward = family(step), family(-step)
    rng = plan.rng()
    worst, worst_point = 0.0, {}
    for _ in range(plan.n_samples):
        point = sample_assignment(chart.coords, rng)
        for c in chart.coords:
            fd = (NumericFunction(forward.component(c))(point)
                  - NumericFunction(backward.component(c))(point)) / (2 * step)
            exact = NumericFunction(V.component(c))(point)
            err = abs(exact - fd) / max(1.0, abs(exact))
            if err > worst or not worst_point:
                worst = err
                worst_point = {str(s): v for s, v in point.items()}
    report = VerificationReport("flow generator", worst <= tol, plan.n_samples, worst, worst_point)
    if not report.passed:
        logger.warning("flow does not match its generator: %s", report.summary())
    return report
