"""
Symbolic core - interned chart symbols and the expression operations built on sympy.

This module provides:
- SymbolKind / SymbolId: typed identities for every chart coordinate and derived scalar
- SymbolTable: thread-safe interning with symmetric index pairs resolved at intern time
- Registered derivative rules for dependent symbols (inverse metric, sqrt|det|,
  target metrics, jet parameters of algebra functions)
- diff, substitute, canonicalize, eval_numeric, equal_symbolic, equal_numeric
- sample_assignment: seeded sampling that keeps metric groups consistent

Expressions are plain sympy expressions with exact rational coefficients.
"""
import logging
import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import numpy as np
import sympy
from sympy.core.function import AppliedUndef

from .constants import (
    DEFAULT_SEED,
    DEFAULT_TOL,
    DEFAULT_SAMPLES,
    MAX_SAMPLE_ATTEMPTS,
    METRIC_COND_BOUND,
    METRIC_PERTURBATION,
    MINKOWSKI_TIME_SIGN,
    SAMPLE_HIGH,
    SAMPLE_LOW,
)

logger = logging.getLogger(__name__)

Expr = sympy.Expr
Assignment = Dict[sympy.Symbol, float]


# =================== Errors ===================

class MultiphaseError(Exception):
    """Base class for every engine error. `key` selects the catalog message."""

    key = "errors.generic"

    def __init__(self, message: str = "", **context):
        self.context = context
        super().__init__(message or self.key)


class UnknownSymbol(MultiphaseError):
    key = "errors.unknown_symbol"


class UnboundSymbol(MultiphaseError):
    key = "errors.unbound_symbol"


class NegativeRadicand(MultiphaseError):
    key = "errors.negative_radicand"


class SingularPoint(MultiphaseError):
    key = "errors.singular_point"


class SymbolClash(MultiphaseError):
    key = "errors.symbol_clash"


class DegenerateSample(MultiphaseError):
    key = "errors.degenerate_sample"


# =================== Symbol identities ===================

class SymbolKind(Enum):
    """Kinds of interned symbols."""
    BASE = "base"
    FIBER = "fiber"
    VELOCITY = "velocity"
    SECOND_VELOCITY = "second_velocity"
    MOMENTUM = "momentum"
    HAMILTONIAN = "hamiltonian"
    METRIC = "metric"
    INVERSE_METRIC = "inverse_metric"
    DERIVED = "derived"
    TARGET_METRIC = "target_metric"
    PARAMETER = "parameter"
    JET_PARAMETER = "jet_parameter"
    BACKGROUND_JET = "background_jet"


# Kinds whose two leading indices form a symmetric pair
_SYMMETRIC_PAIR_KINDS = {SymbolKind.INVERSE_METRIC, SymbolKind.TARGET_METRIC}
# Kinds whose indices are all symmetric derivative indices
_SORTED_KINDS = {SymbolKind.SECOND_VELOCITY, SymbolKind.JET_PARAMETER}


def _digits(indices: Sequence[int]) -> str:
    return "".join(str(i) for i in indices)


@dataclass(frozen=True)
class SymbolId:
    """
    Identity of an interned symbol.

    Attributes:
        kind: What the symbol coordinatizes
        label: Coordinate name, fiber-coordinate label, metric label or root
            function name, depending on kind
        indices: Base or fiber indices; symmetric ones are sorted by `normalized`
    """
    kind: SymbolKind
    label: str
    indices: Tuple[int, ...] = ()

    def normalized(self) -> "SymbolId":
        idx = self.indices
        if self.kind in _SORTED_KINDS or self.kind == SymbolKind.BACKGROUND_JET:
            idx = tuple(sorted(idx))
        elif self.kind in _SYMMETRIC_PAIR_KINDS and len(idx) >= 2:
            idx = tuple(sorted(idx[:2])) + tuple(sorted(idx[2:]))
        return SymbolId(self.kind, self.label, idx)

    @property
    def name(self) -> str:
        """Identifier-safe symbol name."""
        k, lab, idx = self.kind, self.label, self.indices
        if k in (SymbolKind.VELOCITY, SymbolKind.SECOND_VELOCITY, SymbolKind.BACKGROUND_JET):
            return f"{lab}_d{_digits(idx)}"
        if k == SymbolKind.MOMENTUM:
            return f"p_{lab}_u{_digits(idx)}"
        if k == SymbolKind.INVERSE_METRIC:
            return f"{lab}_inv_{_digits(idx)}"
        if k == SymbolKind.DERIVED:
            return f"sqrtdet_{lab}"
        if k == SymbolKind.TARGET_METRIC:
            tail = f"_d{_digits(idx[2:])}" if len(idx) > 2 else ""
            return f"{lab}_{_digits(idx[:2])}{tail}"
        if k == SymbolKind.JET_PARAMETER:
            return f"{lab}_d{_digits(idx)}" if idx else lab
        return lab

    def display(self) -> str:
        """Unicode display form used by text reports."""
        k, lab, idx = self.kind, self.label, self.indices
        if k in (SymbolKind.VELOCITY, SymbolKind.SECOND_VELOCITY, SymbolKind.BACKGROUND_JET):
            return f"{lab},{_digits(idx)}"
        if k == SymbolKind.MOMENTUM:
            return f"p[{lab}]^{_digits(idx)}"
        if k == SymbolKind.INVERSE_METRIC:
            return f"{lab}^{_digits(idx)}"
        if k == SymbolKind.DERIVED:
            return f"√|{lab}|"
        if k == SymbolKind.TARGET_METRIC:
            tail = f",{_digits(idx[2:])}" if len(idx) > 2 else ""
            return f"{lab}_{_digits(idx[:2])}{tail}"
        if k == SymbolKind.JET_PARAMETER:
            return f"{lab},{_digits(idx)}" if idx else lab
        return lab


# =================== Registered groups ===================

@dataclass(frozen=True)
class MetricGroup:
    """
    A symmetric metric carried as symbols: lower components, registered inverse
    components and the density sqrt|det|.

    Attributes:
        label: Metric label (e.g. "g" for spacetime, "h" for a worldsheet)
        dim: Number of index values
        lower: Lower component symbol for every ordered pair
        upper: Inverse component symbol for every ordered pair
        sqrt_det: Symbol standing for sqrt|det|
        signature: Diagonal of the reference metric used for sampling
    """
    label: str
    dim: int
    lower: Dict[Tuple[int, int], sympy.Symbol]
    upper: Dict[Tuple[int, int], sympy.Symbol]
    sqrt_det: sympy.Symbol
    signature: Tuple[int, ...]

    def g(self, a: int, b: int) -> sympy.Symbol:
        return self.lower[(a, b)]

    def ginv(self, a: int, b: int) -> sympy.Symbol:
        return self.upper[(a, b)]

    def symbols(self) -> Set[sympy.Symbol]:
        return set(self.lower.values()) | set(self.upper.values()) | {self.sqrt_det}


@dataclass(frozen=True)
class TargetMetric:
    """
    A metric G_AB(y) on a target manifold, function of fiber coordinates.

    Derivative symbols G_AB,C and G_AB,CD are created lazily by `diff`.
    """
    label: str
    coords: Tuple[sympy.Symbol, ...]
    signature: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.coords)


def minkowski_signature(dim: int) -> Tuple[int, ...]:
    """Diagonal (-, +, +, ...) of length dim."""
    return (MINKOWSKI_TIME_SIGN,) + (1,) * (dim - 1)


# =================== Symbol table ===================

Rule = Callable[[sympy.Symbol], Optional[Expr]]


class SymbolTable:
    """
    Interns chart symbols and holds the derivative rules of dependent symbols.

    Interning is guarded by a lock so concurrent callers always receive the
    same sympy Symbol for the same SymbolId.
    """

    def __init__(self):
        self._lock = threading.RLock()
        self._by_id: Dict[SymbolId, sympy.Symbol] = {}
        self._ids: Dict[sympy.Symbol, SymbolId] = {}
        self._names: Dict[str, SymbolId] = {}
        self._rules: Dict[sympy.Symbol, Rule] = {}
        self._metrics: Dict[str, MetricGroup] = {}
        self._metric_of: Dict[sympy.Symbol, MetricGroup] = {}
        self._targets: Dict[str, TargetMetric] = {}
        self._jet_axes: Dict[str, Dict[sympy.Symbol, int]] = {}

    # ----- interning -----

    def intern(self, sid: SymbolId) -> sympy.Symbol:
        sid = sid.normalized()
        with self._lock:
            sym = self._by_id.get(sid)
            if sym is not None:
                return sym
            name = sid.name
            other = self._names.get(name)
            if other is not None and other != sid:
                raise SymbolClash(f"{name} already names {other}", name=name)
            sym = sympy.Symbol(name)
            self._by_id[sid] = sym
            self._ids[sym] = sid
            self._names[name] = sid
            return sym

    def symbol(self, kind: SymbolKind, label: str, *indices: int) -> sympy.Symbol:
        return self.intern(SymbolId(kind, label, tuple(indices)))

    def parameter(self, name: str) -> sympy.Symbol:
        """Intern a free constant such as a mass."""
        return self.symbol(SymbolKind.PARAMETER, name)

    def is_known(self, sym) -> bool:
        return sym in self._ids

    def lookup(self, sym: sympy.Symbol) -> SymbolId:
        try:
            return self._ids[sym]
        except KeyError:
            raise UnknownSymbol(f"unknown symbol {sym}", symbol=str(sym)) from None

    def get(self, sym) -> Optional[SymbolId]:
        return self._ids.get(sym)

    def kind_of(self, sym) -> Optional[SymbolKind]:
        sid = self._ids.get(sym)
        return sid.kind if sid else None

    def by_name(self, name: str) -> Optional[sympy.Symbol]:
        sid = self._names.get(name)
        return self._by_id.get(sid) if sid else None

    def local_dict(self) -> Dict[str, sympy.Symbol]:
        """Name -> Symbol mapping for parsing expressions back."""
        with self._lock:
            return {sid.name: sym for sid, sym in self._by_id.items()}

    # ----- derivative rules -----

    def partial(self, dependent: sympy.Symbol, s: sympy.Symbol) -> Optional[Expr]:
        """Registered ∂dependent/∂s, or None when dependent does not depend on s."""
        rule = self._rules.get(dependent)
        if rule is None:
            return None
        return rule(s)

    def has_rule(self, sym: sympy.Symbol) -> bool:
        return sym in self._rules

    def register_metric(self, label: str, dim: int, kind: SymbolKind = SymbolKind.METRIC,
                        signature: Optional[Tuple[int, ...]] = None) -> MetricGroup:
        """
        Register a symmetric metric with inverse and density symbols.

        The lower components are interned with `kind` and labels like "g_01" so
        they coincide with the fiber coordinates of a sym2 field named `label`.
        Rules are coordinate derivatives with respect to the independent
        component g_(ab): off-diagonal entries count both g_ab and g_ba.
        """
        with self._lock:
            existing = self._metrics.get(label)
            if existing is not None:
                if existing.dim != dim:
                    raise SymbolClash(f"metric {label} registered with dim {existing.dim}",
                                      name=label)
                return existing
            lower, upper = {}, {}
            for a in range(dim):
                for b in range(dim):
                    lo, hi = sorted((a, b))
                    lower[(a, b)] = self.symbol(kind, f"{label}_{lo}{hi}")
                    upper[(a, b)] = self.symbol(SymbolKind.INVERSE_METRIC, label, lo, hi)
            sqrt_det = self.symbol(SymbolKind.DERIVED, label)
            group = MetricGroup(label, dim, lower, upper, sqrt_det,
                                tuple(signature or minkowski_signature(dim)))
            self._metrics[label] = group
            lower_index = {lower[(a, b)]: (a, b) for a in range(dim) for b in range(a, dim)}

            def inverse_rule(mu: int, nu: int) -> Rule:
                def rule(s):
                    ab = lower_index.get(s)
                    if ab is None:
                        return None
                    a, b = ab
                    if a == b:
                        return -upper[(mu, a)] * upper[(a, nu)]
                    return -(upper[(mu, a)] * upper[(b, nu)] + upper[(mu, b)] * upper[(a, nu)])
                return rule

            def sqrt_rule(s):
                ab = lower_index.get(s)
                if ab is None:
                    return None
                a, b = ab
                factor = sympy.Rational(1, 2) if a == b else sympy.Integer(1)
                return factor * sqrt_det * upper[(a, b)]

            for mu in range(dim):
                for nu in range(mu, dim):
                    self._rules[upper[(mu, nu)]] = inverse_rule(mu, nu)
            self._rules[sqrt_det] = sqrt_rule
            for sym in group.symbols():
                self._metric_of[sym] = group
            return group

    def metric(self, label: str) -> Optional[MetricGroup]:
        return self._metrics.get(label)

    def metric_of(self, sym: sympy.Symbol) -> Optional[MetricGroup]:
        return self._metric_of.get(sym)

    def register_target_metric(self, label: str, coords: Sequence[sympy.Symbol],
                               signature: Optional[Tuple[int, ...]] = None) -> TargetMetric:
        """Register G_AB(y) over the given fiber coordinates."""
        with self._lock:
            existing = self._targets.get(label)
            if existing is not None:
                if existing.coords != tuple(coords):
                    raise SymbolClash(f"target metric {label} registered over other coordinates",
                                      name=label)
                return existing
            target = TargetMetric(label, tuple(coords),
                                  tuple(signature or (1,) * len(coords)))
            self._targets[label] = target
            for a in range(target.dim):
                for b in range(a, target.dim):
                    self._target_symbol(target, (a, b))
            return target

    def target_metric(self, label: str) -> Optional[TargetMetric]:
        return self._targets.get(label)

    def target_of(self, sym: sympy.Symbol) -> Optional[TargetMetric]:
        sid = self._ids.get(sym)
        if sid is None or sid.kind != SymbolKind.TARGET_METRIC:
            return None
        return self._targets.get(sid.label)

    def _target_symbol(self, target: TargetMetric, indices: Tuple[int, ...]) -> sympy.Symbol:
        sym = self.symbol(SymbolKind.TARGET_METRIC, target.label, *indices)
        if sym not in self._rules:
            coord_index = {c: i for i, c in enumerate(target.coords)}
            sid = self._ids[sym]

            def rule(s, sid=sid):
                c = coord_index.get(s)
                if c is None:
                    return None
                logger.debug("interning derivative of %s along %s", sid.name, s)
                return self._target_symbol(target, sid.indices + (c,))

            self._rules[sym] = rule
        return sym

    def target_component(self, label: str, a: int, b: int) -> sympy.Symbol:
        target = self._targets[label]
        return self._target_symbol(target, (a, b))

    def target_derivative(self, label: str, a: int, b: int, *derivs: int) -> sympy.Symbol:
        target = self._targets[label]
        return self._target_symbol(target, (a, b) + tuple(derivs))

    def register_jet_root(self, name: str, base_coords: Sequence[sympy.Symbol]) -> sympy.Symbol:
        """
        Register an arbitrary algebra function (χ, ξ^μ, λ) as a jet parameter.

        Its derivative symbols χ_{,ν}, χ_{,νσ}, ... are interned lazily when
        `diff` differentiates along a base coordinate.
        """
        with self._lock:
            axes = self._jet_axes.setdefault(name, {})
            for i, c in enumerate(base_coords):
                if axes.get(c, i) != i:
                    raise SymbolClash(f"jet root {name}: coordinate {c} has two indices",
                                      name=name)
                axes[c] = i
            return self._jet_symbol(name, ())

    def _jet_symbol(self, name: str, indices: Tuple[int, ...]) -> sympy.Symbol:
        sym = self.symbol(SymbolKind.JET_PARAMETER, name, *indices)
        if sym not in self._rules:
            axes = self._jet_axes[name]
            sid = self._ids[sym]

            def rule(s, sid=sid):
                i = axes.get(s)
                if i is None:
                    return None
                return self._jet_symbol(name, sid.indices + (i,))

            self._rules[sym] = rule
        return sym

    def jet_parameter(self, name: str, *indices: int) -> sympy.Symbol:
        """χ_{,indices} for a registered root."""
        if name not in self._jet_axes:
            raise UnknownSymbol(f"unregistered jet root {name}", symbol=name)
        return self._jet_symbol(name, tuple(indices))

    def jet_root_of(self, sym: sympy.Symbol) -> Optional[str]:
        sid = self._ids.get(sym)
        if sid is None or sid.kind != SymbolKind.JET_PARAMETER:
            return None
        return sid.label


SYMBOLS = SymbolTable()


# =================== Expression operations ===================

def diff(e, s: sympy.Symbol, table: Optional[SymbolTable] = None) -> Expr:
    """
    Partial derivative ∂e/∂s with the chain rule through registered dependents.

    Args:
        e: Expression
        s: A declared symbol

    Returns:
        The derivative (not expanded)

    Raises:
        UnknownSymbol: if s was never interned
    """
    table = table or SYMBOLS
    if not table.is_known(s):
        raise UnknownSymbol(f"cannot differentiate by undeclared symbol {s}", symbol=str(s))
    e = sympy.sympify(e)
    result = sympy.diff(e, s)
    for d in e.free_symbols:
        if d == s:
            continue
        rule = table.partial(d, s)
        if rule is None or rule == 0:
            continue
        result += sympy.diff(e, d) * rule
    return result


def canonicalize(e) -> Expr:
    """Expanded sum of monomials with rational coefficients; idempotent."""
    return sympy.expand(sympy.sympify(e))


def substitute(e, bindings: Mapping) -> Expr:
    """Simultaneous substitution followed by canonicalization."""
    e = sympy.sympify(e)
    if not bindings:
        return canonicalize(e)
    if e.has(sympy.Derivative):
        out = e.subs(dict(bindings), simultaneous=True)
    else:
        out = e.xreplace(dict(bindings))
    return canonicalize(out)


def _has_denominators(e: Expr) -> bool:
    for p in e.atoms(sympy.Pow):
        if not (p.exp.is_Integer and p.exp > 0):
            return True
    return False


def equal_symbolic(a, b) -> bool:
    """True iff a - b canonicalizes to zero (rational functions are put over one denominator)."""
    d = canonicalize(sympy.sympify(a) - sympy.sympify(b))
    if d == 0:
        return True
    if _has_denominators(d):
        return sympy.cancel(sympy.together(d)) == 0
    return False


def is_zero_symbolic(e) -> bool:
    return equal_symbolic(e, 0)


# =================== Numeric evaluation ===================

class NumericFunction:
    """A compiled expression evaluated against Assignments."""

    def __init__(self, e):
        e = sympy.sympify(e)
        undefined = e.atoms(AppliedUndef)
        if undefined:
            raise UnboundSymbol(f"undefined function {sorted(map(str, undefined))[0]}",
                                symbol=str(next(iter(undefined))))
        self.expr = e
        self.symbols: Tuple[sympy.Symbol, ...] = tuple(sorted(e.free_symbols, key=str))
        self._fn = sympy.lambdify(self.symbols, e, modules="math")

    def __call__(self, a: Mapping[sympy.Symbol, float]) -> float:
        try:
            args = [a[s] for s in self.symbols]
        except KeyError as exc:
            raise UnboundSymbol(f"no value bound for {exc.args[0]}", symbol=str(exc.args[0])) from None
        try:
            value = self._fn(*args)
        except ValueError as exc:
            raise NegativeRadicand(str(exc)) from None
        except ZeroDivisionError as exc:
            raise SingularPoint(str(exc)) from None
        if isinstance(value, complex):
            raise NegativeRadicand("square root of a negative value")
        return float(value)


def compile_numeric(e) -> NumericFunction:
    return NumericFunction(e)


def eval_numeric(e, a: Mapping[sympy.Symbol, float]) -> float:
    """
    Evaluate e at an Assignment in IEEE doubles.

    Raises:
        UnboundSymbol: a free symbol has no value
        NegativeRadicand: a square root argument is negative at a
    """
    return NumericFunction(e)(a)


# =================== Sampling ===================

def _well_conditioned(rng: np.random.Generator, dim: int) -> np.ndarray:
    for _ in range(MAX_SAMPLE_ATTEMPTS):
        m = np.eye(dim) + METRIC_PERTURBATION * rng.uniform(-1.0, 1.0, size=(dim, dim))
        if np.linalg.cond(m) <= METRIC_COND_BOUND:
            return m
    raise DegenerateSample(f"no well-conditioned {dim}x{dim} draw")


def sample_metric(rng: np.random.Generator, signature: Sequence[int]) -> np.ndarray:
    """L^T eta L with a random well-conditioned L."""
    m = _well_conditioned(rng, len(signature))
    return m.T @ np.diag(np.array(signature, dtype=float)) @ m


def sample_assignment(symbols: Iterable[sympy.Symbol], rng: np.random.Generator,
                      table: Optional[SymbolTable] = None) -> Assignment:
    """
    Draw values for the given symbols.

    Metric groups touched by any symbol are drawn as a whole and bound with
    their exact numeric inverse and sqrt|det|; target-metric components are
    drawn as metrics of their signature; everything else is uniform in
    [SAMPLE_LOW, SAMPLE_HIGH]. Iteration order is by name, so a seed fixes
    the result.
    """
    table = table or SYMBOLS
    out: Assignment = {}
    ordered = sorted(set(symbols), key=str)
    groups: List[MetricGroup] = []
    targets: List[TargetMetric] = []
    for s in ordered:
        grp = table.metric_of(s)
        if grp is not None and grp not in groups:
            groups.append(grp)
        tgt = table.target_of(s)
        if tgt is not None and table.lookup(s).indices[2:] == () and tgt not in targets:
            targets.append(tgt)
    for grp in groups:
        g = sample_metric(rng, grp.signature)
        ginv = np.linalg.inv(g)
        for (a, b), sym in grp.lower.items():
            out[sym] = float(g[a, b])
        for (a, b), sym in grp.upper.items():
            out[sym] = float(ginv[a, b])
        out[grp.sqrt_det] = float(np.sqrt(abs(np.linalg.det(g))))
    for tgt in targets:
        g = sample_metric(rng, tgt.signature)
        for a in range(tgt.dim):
            for b in range(a, tgt.dim):
                out[table.target_component(tgt.label, a, b)] = float(g[a, b])
    for s in ordered:
        if s not in out:
            out[s] = float(rng.uniform(SAMPLE_LOW, SAMPLE_HIGH))
    return out


def uses_fallback_symbols(e, table: Optional[SymbolTable] = None) -> bool:
    """True when e involves metric-group symbols whose identities expand() cannot see."""
    table = table or SYMBOLS
    return any(table.metric_of(s) is not None for s in sympy.sympify(e).free_symbols)


def equal_numeric(a, b, n_samples: int = DEFAULT_SAMPLES, tol: float = DEFAULT_TOL,
                  seed: int = DEFAULT_SEED) -> bool:
    """
    Probabilistic equality: |a - b| <= tol (1 + |a| + |b|) at every sample.

    Points where a square root argument turns negative, or where a
    denominator vanishes, are redrawn up to MAX_SAMPLE_ATTEMPTS times per
    sample; neither error reaches the caller.

    Raises:
        ValueError: n_samples is below 1
        UnboundSymbol: a or b contains an undefined function
        DegenerateSample: no admissible point in MAX_SAMPLE_ATTEMPTS draws
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    a, b = sympy.sympify(a), sympy.sympify(b)
    fa, fb = NumericFunction(a), NumericFunction(b)
    rng = np.random.default_rng(seed)
    symbols = set(fa.symbols) | set(fb.symbols)
    for _ in range(n_samples):
        for _attempt in range(MAX_SAMPLE_ATTEMPTS):
            point = sample_assignment(symbols, rng)
            try:
                va, vb = fa(point), fb(point)
                break
            except (NegativeRadicand, SingularPoint):
                logger.debug("redrawing sample outside the domain")
        else:
            raise DegenerateSample("no admissible sample point")
        if abs(va - vb) > tol * (1.0 + abs(va) + abs(vb)):
            return False
    return True


def equal(a, b, context: str = "", n_samples: int = DEFAULT_SAMPLES,
          tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED) -> bool:
    """
    Symbolic equality with the numeric fallback for metric-group expressions.

    The fallback is only taken when the difference involves metric, inverse
    metric or density symbols, and it is logged.
    """
    if equal_symbolic(a, b):
        return True
    residual = sympy.sympify(a) - sympy.sympify(b)
    if not uses_fallback_symbols(residual):
        return False
    result = equal_numeric(a, b, n_samples=n_samples, tol=tol, seed=seed)
    logger.warning("numeric fallback for %s: %s", context or "equality",
                   "equal" if result else "different")
    return result


def is_zero(e, context: str = "", **kwargs) -> bool:
    return equal(e, 0, context=context, **kwargs)
