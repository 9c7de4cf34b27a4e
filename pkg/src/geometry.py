"""
Geometry - coordinate charts and exterior calculus with symbolic coefficients.

This module handles:
- Chart: ordered coordinates, base coordinates first
- DiffForm: sparse forms keyed by strictly increasing coordinate-index tuples
- VectorField and its bracket
- ChartMap: coordinate maps with optional caller-supplied inverses
- wedge, exterior_d, interior, pullback, lie_derivative
- Base-form helpers d^{n+1}x, d^n x_mu, d^{n-1} x_{mu nu}

Orientation: d^{n+1}x = dx^0 ^ dx^1 ^ ... ^ dx^n.
"""
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import sympy
from sympy.combinatorics import Permutation

from .symcore import Expr, MultiphaseError, canonicalize, diff, equal, substitute


class ChartMismatch(MultiphaseError):
    key = "errors.chart_mismatch"


class DegreeZero(MultiphaseError):
    key = "errors.degree_zero"


@dataclass(frozen=True)
class Chart:
    """
    An ordered coordinate system.

    Attributes:
        label: One of X, Y, J1Y, J2Y, Z (or a custom label for test charts)
        coords: Coordinate symbols, base coordinates first
        base_dim: Number of leading base coordinates
    """
    label: str
    coords: Tuple[sympy.Symbol, ...]
    base_dim: int

    def __post_init__(self):
        if len(set(self.coords)) != len(self.coords):
            raise ValueError(f"chart {self.label} repeats a coordinate")
        if not 0 <= self.base_dim <= len(self.coords):
            raise ValueError(f"chart {self.label}: bad base dimension {self.base_dim}")

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def base(self) -> Tuple[sympy.Symbol, ...]:
        return self.coords[:self.base_dim]

    def index(self, coord: sympy.Symbol) -> int:
        try:
            return self.coords.index(coord)
        except ValueError:
            raise ChartMismatch(f"{coord} is not a coordinate of {self.label}") from None

    def __contains__(self, coord) -> bool:
        return coord in self.coords


def _same_chart(a: Chart, b: Chart):
    if a != b:
        raise ChartMismatch(f"forms live on {a.label} and {b.label}")


def _sort_monomial(indices: Sequence[int]) -> Tuple[int, Tuple[int, ...]]:
    """Sign and increasing tuple of a wedge monomial; sign 0 if an index repeats."""
    if len(set(indices)) < len(indices):
        return 0, ()
    order = sorted(range(len(indices)), key=lambda i: indices[i])
    sign = Permutation(order).signature() if len(order) > 1 else 1
    return sign, tuple(indices[i] for i in order)


@dataclass(frozen=True)
class DiffForm:
    """
    A differential form on a chart.

    Attributes:
        chart: Chart the form lives on
        degree: Form degree
        terms: Increasing index tuple -> nonzero canonical coefficient
    """
    chart: Chart
    degree: int
    terms: Mapping[Tuple[int, ...], Expr] = field(default_factory=dict)

    @classmethod
    def build(cls, chart: Chart, degree: int,
              raw: Iterable[Tuple[Sequence[int], Expr]]) -> "DiffForm":
        """Collect (indices, coefficient) pairs in any order into a normalized form."""
        acc: Dict[Tuple[int, ...], Expr] = defaultdict(lambda: sympy.Integer(0))
        for indices, coeff in raw:
            if len(indices) != degree:
                raise ValueError(f"monomial {tuple(indices)} has wrong degree for {degree}-form")
            sign, key = _sort_monomial(indices)
            if sign == 0:
                continue
            acc[key] = acc[key] + sign * coeff
        terms = {}
        for key, coeff in acc.items():
            c = canonicalize(coeff)
            if c != 0:
                terms[key] = c
        return cls(chart, degree, terms)

    @classmethod
    def zero(cls, chart: Chart, degree: int) -> "DiffForm":
        return cls(chart, degree, {})

    @classmethod
    def function(cls, chart: Chart, f) -> "DiffForm":
        return cls.build(chart, 0, [((), sympy.sympify(f))])

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, indices: Sequence[int]) -> Expr:
        sign, key = _sort_monomial(tuple(indices))
        if sign == 0:
            return sympy.Integer(0)
        return sign * self.terms.get(key, sympy.Integer(0))

    def coefficient_of(self, coords: Sequence[sympy.Symbol]) -> Expr:
        return self.coefficient([self.chart.index(c) for c in coords])

    def scale(self, factor) -> "DiffForm":
        return DiffForm.build(self.chart, self.degree,
                              ((k, factor * c) for k, c in self.terms.items()))

    def map_coefficients(self, fn) -> "DiffForm":
        return DiffForm.build(self.chart, self.degree, ((k, fn(c)) for k, c in self.terms.items()))

    def __add__(self, other: "DiffForm") -> "DiffForm":
        _same_chart(self.chart, other.chart)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError(f"cannot add {self.degree}-form and {other.degree}-form")
        return DiffForm.build(self.chart, self.degree,
                              list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "DiffForm":
        return self.scale(-1)

    def __sub__(self, other: "DiffForm") -> "DiffForm":
        return self + (-other)


def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    """Graded-antisymmetric product; degrees add."""
    _same_chart(a.chart, b.chart)
    raw = [(ia + ib, ca * cb) for ia, ca in a.terms.items() for ib, cb in b.terms.items()]
    return DiffForm.build(a.chart, a.degree + b.degree, raw)


def exterior_d(a: DiffForm) -> DiffForm:
    """Exterior derivative; coordinate dependence goes through `diff`."""
    raw = []
    for idx, c in a.terms.items():
        for j, coord in enumerate(a.chart.coords):
            if j in idx:
                continue
            dc = diff(c, coord)
            if dc != 0:
                raw.append(((j,) + idx, dc))
    return DiffForm.build(a.chart, a.degree + 1, raw)


@dataclass(frozen=True)
class VectorField:
    """
    A vector field on a chart.

    Attributes:
        chart: Chart the field lives on
        components: Coordinate -> nonzero canonical component
    """
    chart: Chart
    components: Mapping[sympy.Symbol, Expr] = field(default_factory=dict)

    @classmethod
    def build(cls, chart: Chart, comps: Mapping[sympy.Symbol, Expr]) -> "VectorField":
        out = {}
        for c, v in comps.items():
            chart.index(c)
            v = canonicalize(v)
            if v != 0:
                out[c] = v
        return cls(chart, out)

    @classmethod
    def coordinate(cls, chart: Chart, coord: sympy.Symbol) -> "VectorField":
        return cls.build(chart, {coord: sympy.Integer(1)})

    def component(self, coord: sympy.Symbol) -> Expr:
        return self.components.get(coord, sympy.Integer(0))

    def apply(self, f) -> Expr:
        """v(f) = v^c ∂f/∂c."""
        return canonicalize(sum((v * diff(f, c) for c, v in self.components.items()),
                                sympy.Integer(0)))

    def bracket(self, other: "VectorField") -> "VectorField":
        """[v, w]^c = v(w^c) - w(v^c)."""
        _same_chart(self.chart, other.chart)
        comps = {c: self.apply(other.component(c)) - other.apply(self.component(c))
                 for c in self.chart.coords}
        return VectorField.build(self.chart, comps)

    def __add__(self, other: "VectorField") -> "VectorField":
        _same_chart(self.chart, other.chart)
        coords = set(self.components) | set(other.components)
        return VectorField.build(self.chart, {c: self.component(c) + other.component(c)
                                              for c in coords})

    def scale(self, factor) -> "VectorField":
        return VectorField.build(self.chart, {c: factor * v for c, v in self.components.items()})

    def is_zero(self) -> bool:
        return not self.components


def interior(v: VectorField, a: DiffForm) -> DiffForm:
    """Contraction v ⨼ a; degree drops by one."""
    _same_chart(v.chart, a.chart)
    if a.degree == 0:
        raise DegreeZero("cannot contract a 0-form")
    comps = [v.component(c) for c in a.chart.coords]
    raw = []
    for idx, c in a.terms.items():
        for pos, j in enumerate(idx):
            vj = comps[j]
            if vj != 0:
                raw.append((idx[:pos] + idx[pos + 1:], (-1) ** pos * vj * c))
    return DiffForm.build(a.chart, a.degree - 1, raw)


def lie_derivative(v: VectorField, a: DiffForm) -> DiffForm:
    """Cartan formula: £_v a = v ⨼ da + d(v ⨼ a)."""
    _same_chart(v.chart, a.chart)
    da = interior(v, exterior_d(a))
    if a.degree == 0:
        return da
    return da + exterior_d(interior(v, a))


@dataclass(frozen=True)
class ChartMap:
    """
    A coordinate map between charts.

    Attributes:
        source: Domain chart
        target: Codomain chart
        components: One expression per target coordinate, in source coordinates
        inverse: Optional expressions per source coordinate, in target coordinates
    """
    source: Chart
    target: Chart
    components: Tuple[Expr, ...]
    inverse: Optional[Tuple[Expr, ...]] = None

    def __post_init__(self):
        if len(self.components) != self.target.dim:
            raise ValueError("one component per target coordinate is required")
        if self.inverse is not None and len(self.inverse) != self.source.dim:
            raise ValueError("one inverse component per source coordinate is required")

    @classmethod
    def identity(cls, chart: Chart) -> "ChartMap":
        return cls(chart, chart, tuple(chart.coords), tuple(chart.coords))

    def bindings(self) -> Dict[sympy.Symbol, Expr]:
        """Target coordinate -> component, for pulling back expressions."""
        return dict(zip(self.target.coords, self.components))

    def inverse_bindings(self) -> Dict[sympy.Symbol, Expr]:
        if self.inverse is None:
            raise ValueError("map has no inverse")
        return dict(zip(self.source.coords, self.inverse))

    def component(self, coord: sympy.Symbol) -> Expr:
        return self.components[self.target.index(coord)]

    def pull(self, e) -> Expr:
        """Pull back a function on the target chart."""
        return substitute(e, self.bindings())

    def compose(self, inner: "ChartMap") -> "ChartMap":
        """self ∘ inner."""
        if inner.target != self.source:
            raise ChartMismatch(f"cannot compose {self.source.label} after {inner.target.label}")
        comps = tuple(substitute(c, inner.bindings()) for c in self.components)
        inv = None
        if self.inverse is not None and inner.inverse is not None:
            outer_inv = dict(zip(self.source.coords, self.inverse))
            inv = tuple(substitute(c, outer_inv) for c in inner.inverse)
        return ChartMap(inner.source, self.target, comps, inv)

    def check_inverse(self) -> bool:
        """Both compositions with the inverse reduce to the identity."""
        if self.inverse is None:
            return False
        there = self.inverse_bindings()
        for coord, comp in zip(self.target.coords, self.components):
            if not equal(substitute(comp, there), coord, context="inverse map"):
                return False
        back = self.bindings()
        for coord, comp in zip(self.source.coords, self.inverse):
            if not equal(substitute(comp, back), coord, context="inverse map"):
                return False
        return True


def pullback(m: ChartMap, a: DiffForm) -> DiffForm:
    """Pull a form on m.target back to m.source."""
    _same_chart(m.target, a.chart)
    bindings = m.bindings()
    one_forms: List[Dict[int, Expr]] = []
    for comp in m.components:
        row = {}
        for s, coord in enumerate(m.source.coords):
            dv = diff(comp, coord)
            if dv != 0:
                row[s] = dv
        one_forms.append(row)
    raw = []
    for idx, c in a.terms.items():
        partial: Dict[Tuple[int, ...], Expr] = {(): substitute(c, bindings)}
        for k in idx:
            grown: Dict[Tuple[int, ...], Expr] = defaultdict(lambda: sympy.Integer(0))
            for sidx, val in partial.items():
                for s, dv in one_forms[k].items():
                    if s not in sidx:
                        grown[sidx + (s,)] += val * dv
            partial = grown
        raw.extend(partial.items())
    return DiffForm.build(m.source, a.degree, raw)


# =================== Base forms ===================

def coordinate_form(chart: Chart, coord: sympy.Symbol) -> DiffForm:
    """The 1-form d(coord)."""
    return DiffForm.build(chart, 1, [((chart.index(coord),), sympy.Integer(1))])


def volume_form(chart: Chart) -> DiffForm:
    """d^{n+1}x = dx^0 ^ ... ^ dx^n over the base coordinates."""
    return DiffForm.build(chart, chart.base_dim, [(tuple(range(chart.base_dim)), sympy.Integer(1))])


def base_hodge(chart: Chart, mu: int) -> DiffForm:
    """d^n x_mu = ∂_mu ⨼ d^{n+1}x."""
    return interior(VectorField.coordinate(chart, chart.base[mu]), volume_form(chart))


def base_hodge2(chart: Chart, mu: int, nu: int) -> DiffForm:
    """d^{n-1} x_{mu nu} = ∂_nu ⨼ ∂_mu ⨼ d^{n+1}x."""
    return interior(VectorField.coordinate(chart, chart.base[nu]), base_hodge(chart, mu))


def forms_equal(a: DiffForm, b: DiffForm, context: str = "", **kwargs) -> bool:
    """Coefficientwise equality with the logged numeric fallback."""
    _same_chart(a.chart, b.chart)
    if a.is_zero() and b.is_zero():
        return True
    if a.degree != b.degree and not (a.is_zero() or b.is_zero()):
        return False
    keys = set(a.terms) | set(b.terms)
    zero = sympy.Integer(0)
    return all(equal(a.terms.get(k, zero), b.terms.get(k, zero), context=context, **kwargs)
               for k in keys)


def form_is_zero(a: DiffForm, context: str = "", **kwargs) -> bool:
    return forms_equal(a, DiffForm.zero(a.chart, a.degree), context=context, **kwargs)
