"""
Jets - bundle charts, prolongations and the canonical structure of Z.

This module handles:
- JetBundle: the charts X, Y, J1Y, J2Y, Z built from a BundleSpec, with
  accessors for every coordinate symbol
- Prolongation of sections, projectable vector fields and automorphisms
- Total derivatives D_mu on J1Y expressions
- Canonical forms Theta and Omega on Z
- Canonical lifts of vector fields and automorphisms to Z
- The affine dual pairing between Z and J1Y
- Catalog automorphisms with closed-form inverses

Parametric fields get fiber coordinates but no multivelocities or momenta.
Where a formula needs their first or second jets, background-jet symbols
stand in; they are not chart coordinates.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import sympy

from .geometry import (
    Chart,
    ChartMap,
    DiffForm,
    VectorField,
    base_hodge,
    coordinate_form,
    exterior_d,
    interior,
    pullback,
    volume_form,
    wedge,
)
from .models import BundleSpec, FieldKind, FieldSpec, MetricKind, Section
from .symcore import (
    SYMBOLS,
    Expr,
    MetricGroup,
    MultiphaseError,
    SymbolKind,
    TargetMetric,
    canonicalize,
    diff,
    minkowski_signature,
    substitute,
)

logger = logging.getLogger(__name__)

RESERVED_NAMES = {"p", "eps", "delta", "eta", "d", "dd", "sqrt", "sqrtdetg"}


class DuplicateFieldName(MultiphaseError):
    key = "errors.duplicate_field"


class NotProjectable(MultiphaseError):
    key = "errors.not_projectable"


class MissingInverse(MultiphaseError):
    key = "errors.missing_inverse"


@dataclass(frozen=True)
class JetBundle:
    """
    Charts and coordinate symbols of Y, J1Y, J2Y and Z for one BundleSpec.

    Attributes:
        spec: The bundle description
        X, Y, J1Y, J2Y, Z: Charts, base coordinates first
        fibers: Every fiber coordinate of Y, in declaration order
        variational: Fiber coordinates of variational fields
        parametric: Fiber coordinates of parametric fields
        field_of: Fiber coordinate -> name of the field it belongs to
        metric_group: Symbolic metric, when the metric is parametric or variational
        targets: Target metrics by label
    """
    spec: BundleSpec
    X: Chart
    Y: Chart
    J1Y: Chart
    J2Y: Chart
    Z: Chart
    fibers: Tuple[sympy.Symbol, ...]
    variational: Tuple[sympy.Symbol, ...]
    parametric: Tuple[sympy.Symbol, ...]
    field_of: Mapping[sympy.Symbol, str]
    field_components: Mapping[str, Mapping[Tuple[int, ...], sympy.Symbol]]
    metric_group: Optional[MetricGroup]
    targets: Mapping[str, TargetMetric]

    @property
    def base(self) -> Tuple[sympy.Symbol, ...]:
        return self.X.coords

    @property
    def n1(self) -> int:
        """n+1, the base dimension."""
        return self.spec.base_dim

    # ----- coordinate accessors -----

    def field(self, name: str, *indices: int) -> sympy.Symbol:
        """Fiber coordinate of a field; sym2 indices are symmetric."""
        comps = self.field_components.get(name)
        if comps is None:
            raise KeyError(f"no field named {name!r}")
        spec = self.spec.field_named(name)
        key = tuple(sorted(indices)) if spec.kind == FieldKind.SYM2 else tuple(indices)
        try:
            return comps[key]
        except KeyError:
            raise KeyError(f"field {name} has no component {indices}") from None

    def is_variational(self, y: sympy.Symbol) -> bool:
        return y in self.variational

    def velocity(self, y: sympy.Symbol, mu: int) -> sympy.Symbol:
        """v^A_mu for variational y."""
        return SYMBOLS.symbol(SymbolKind.VELOCITY, y.name, mu)

    def second_velocity(self, y: sympy.Symbol, mu: int, nu: int) -> sympy.Symbol:
        return SYMBOLS.symbol(SymbolKind.SECOND_VELOCITY, y.name, mu, nu)

    def background_jet(self, y: sympy.Symbol, *mus: int) -> sympy.Symbol:
        """g_(sr),mu (and second jets) of a parametric fiber coordinate."""
        return SYMBOLS.symbol(SymbolKind.BACKGROUND_JET, y.name, *mus)

    def jet(self, y: sympy.Symbol, mu: int) -> sympy.Symbol:
        """First jet of any fiber coordinate: velocity or background jet."""
        if y in self.variational:
            return self.velocity(y, mu)
        return self.background_jet(y, mu)

    def jet2(self, y: sympy.Symbol, mu: int, nu: int) -> sympy.Symbol:
        if y in self.variational:
            return self.second_velocity(y, mu, nu)
        return self.background_jet(y, mu, nu)

    def momentum(self, y: sympy.Symbol, mu: int) -> sympy.Symbol:
        """p_A^mu for variational y."""
        return SYMBOLS.symbol(SymbolKind.MOMENTUM, y.name, mu)

    @property
    def hamiltonian(self) -> sympy.Symbol:
        return SYMBOLS.symbol(SymbolKind.HAMILTONIAN, "p")

    # ----- metric -----

    def metric_matrices(self) -> Tuple[sympy.Matrix, sympy.Matrix, Expr]:
        """
        (g_mu_nu, g^mu_nu, sqrt|det g|) as sympy objects.

        Fixed metrics are numeric Minkowski; symbolic metrics use the group's
        symbols; theories without a metric get ValueError.
        """
        kind = self.spec.metric.kind
        n1 = self.n1
        if kind == MetricKind.FIXED:
            sig = self.spec.metric.signature or minkowski_signature(n1)
            eta = sympy.diag(*sig)
            return eta, eta.inv(), sympy.Integer(1)
        if self.metric_group is None:
            raise ValueError("theory declares no metric")
        grp = self.metric_group
        g = sympy.Matrix(n1, n1, lambda a, b: grp.g(a, b))
        ginv = sympy.Matrix(n1, n1, lambda a, b: grp.ginv(a, b))
        return g, ginv, grp.sqrt_det


def _field_symbols(f: FieldSpec, n1: int, metric_field: Optional[str],
                   signature) -> Tuple[Dict[Tuple[int, ...], sympy.Symbol], List[sympy.Symbol],
                                       Optional[MetricGroup]]:
    comps: Dict[Tuple[int, ...], sympy.Symbol] = {}
    order: List[sympy.Symbol] = []
    group = None
    if f.kind == FieldKind.SCALAR:
        if f.target_dim == 1:
            comps[(0,)] = SYMBOLS.symbol(SymbolKind.FIBER, f.name)
            comps[()] = comps[(0,)]
            order.append(comps[(0,)])
        else:
            for a in range(f.target_dim):
                comps[(a,)] = SYMBOLS.symbol(SymbolKind.FIBER, f"{f.name}{a}")
                order.append(comps[(a,)])
    elif f.kind == FieldKind.COVECTOR:
        for mu in range(n1):
            comps[(mu,)] = SYMBOLS.symbol(SymbolKind.FIBER, f"{f.name}_{mu}")
            order.append(comps[(mu,)])
    else:
        if f.name == metric_field:
            group = SYMBOLS.register_metric(f.name, n1, SymbolKind.METRIC, signature)
        for a in range(n1):
            for b in range(a, n1):
                sym = group.g(a, b) if group else SYMBOLS.symbol(SymbolKind.FIBER, f"{f.name}_{a}{b}")
                comps[(a, b)] = sym
                order.append(sym)
    return comps, order, group


@lru_cache(maxsize=None)
def jet_bundle(spec: BundleSpec) -> JetBundle:
    """
    Build the charts of Y, J1Y, J2Y and Z.

    Raises:
        DuplicateFieldName: two fields share a name, or a name is reserved
            or equal to a base coordinate
    """
    seen = set()
    for name in list(spec.coords) + [f.name for f in spec.fields]:
        if name in seen or name in RESERVED_NAMES:
            raise DuplicateFieldName(f"name {name!r} is declared twice or reserved", name=name)
        seen.add(name)

    n1 = spec.base_dim
    base = tuple(SYMBOLS.symbol(SymbolKind.BASE, c) for c in spec.coords)
    metric_field = spec.metric.field if spec.metric.kind in (MetricKind.PARAMETRIC,
                                                              MetricKind.VARIATIONAL) else None
    fibers: List[sympy.Symbol] = []
    variational: List[sympy.Symbol] = []
    parametric: List[sympy.Symbol] = []
    field_of: Dict[sympy.Symbol, str] = {}
    field_components = {}
    group = None
    for f in spec.fields:
        comps, order, grp = _field_symbols(f, n1, metric_field, spec.metric.signature)
        group = group or grp
        field_components[f.name] = comps
        fibers.extend(order)
        (variational if f.variational else parametric).extend(order)
        for s in order:
            field_of[s] = f.name

    targets = {}
    for t in spec.targets:
        coords = [s for s in fibers if field_of[s] == t.field]
        targets[t.label] = SYMBOLS.register_target_metric(t.label, coords, t.signature)

    velocities = [SYMBOLS.symbol(SymbolKind.VELOCITY, y.name, mu)
                  for y in variational for mu in range(n1)]
    seconds = [SYMBOLS.symbol(SymbolKind.SECOND_VELOCITY, y.name, mu, nu)
               for y in variational for mu in range(n1) for nu in range(mu, n1)]
    momenta = [SYMBOLS.symbol(SymbolKind.MOMENTUM, y.name, mu)
               for y in variational for mu in range(n1)]
    hamiltonian = SYMBOLS.symbol(SymbolKind.HAMILTONIAN, "p")

    ycoords = base + tuple(fibers)
    jb = JetBundle(
        spec=spec,
        X=Chart("X", base, n1),
        Y=Chart("Y", ycoords, n1),
        J1Y=Chart("J1Y", ycoords + tuple(velocities), n1),
        J2Y=Chart("J2Y", ycoords + tuple(velocities) + tuple(seconds), n1),
        Z=Chart("Z", ycoords + (hamiltonian,) + tuple(momenta), n1),
        fibers=tuple(fibers),
        variational=tuple(variational),
        parametric=tuple(parametric),
        field_of=field_of,
        field_components=field_components,
        metric_group=group,
        targets=targets,
    )
    logger.debug("built jet charts: Y %d, J1Y %d, Z %d coordinates",
                 jb.Y.dim, jb.J1Y.dim, jb.Z.dim)
    return jb


def jet_charts(spec: BundleSpec) -> Tuple[Chart, Chart, Chart, Chart]:
    """(Y, J1Y, J2Y, Z) for a bundle description."""
    jb = jet_bundle(spec)
    return jb.Y, jb.J1Y, jb.J2Y, jb.Z


# =================== Sections ===================

def section_bindings(jb: JetBundle, phi: Section, order: int = 1) -> Dict[sympy.Symbol, Expr]:
    """
    Bindings that evaluate J1Y (order 1) or J2Y (order 2) expressions on j^k phi.

    Background jets of parametric fibers are bound too.
    """
    out: Dict[sympy.Symbol, Expr] = {}
    for y in jb.fibers:
        comp = sympy.sympify(phi.component(y))
        out[y] = comp
        for mu, x in enumerate(jb.base):
            d1 = sympy.diff(comp, x)
            out[jb.jet(y, mu)] = d1
            if order >= 2:
                for nu in range(mu, jb.n1):
                    out[jb.jet2(y, mu, nu)] = sympy.diff(d1, jb.base[nu])
    return out


def prolong_section(jb: JetBundle, phi: Section, order: int = 1) -> ChartMap:
    """j^1 phi: X -> J1Y (or j^2 phi: X -> J2Y)."""
    target = jb.J1Y if order == 1 else jb.J2Y
    b = section_bindings(jb, phi, order)
    comps = tuple(b.get(c, c) for c in target.coords)
    return ChartMap(jb.X, target, comps)


def total_derivative(jb: JetBundle, e, mu: int) -> Expr:
    """
    D_mu e for an expression on J1Y; the result lives on J2Y.

    D_mu = ∂_mu + y^B_mu ∂_B + y^B_{nu mu} ∂/∂v^B_nu, with background jets
    for parametric fibers.
    """
    e = sympy.sympify(e)
    out = diff(e, jb.base[mu])
    for y in jb.fibers:
        dy = diff(e, y)
        if dy != 0:
            out += dy * jb.jet(y, mu)
        for nu in range(jb.n1):
            first = jb.jet(y, nu)
            if not e.has(first):
                continue
            out += diff(e, first) * jb.jet2(y, nu, mu)
    return canonicalize(out)


# =================== Vector fields ===================

def check_projectable(jb: JetBundle, base_components: Sequence[Expr]):
    fiberish = set(jb.fibers)
    for c in base_components:
        bad = sympy.sympify(c).free_symbols & fiberish
        if bad:
            raise NotProjectable(f"base component depends on {sorted(map(str, bad))}")


def vector_on_Y(jb: JetBundle, base_components: Sequence[Expr],
                fiber_components: Mapping[sympy.Symbol, Expr]) -> VectorField:
    comps = dict(zip(jb.base, base_components))
    comps.update(fiber_components)
    return VectorField.build(jb.Y, comps)


def prolong_vector(jb: JetBundle, V: VectorField) -> VectorField:
    """
    j^1 V on J1Y.

    Velocity slot: ∂_mu V^A + ∂_B V^A y^B_mu - v^A_nu ∂_mu V^nu.

    Raises:
        NotProjectable: a base component depends on fiber coordinates
    """
    base = [V.component(x) for x in jb.base]
    check_projectable(jb, base)
    comps = {c: V.component(c) for c in jb.Y.coords}
    for A in jb.variational:
        VA = V.component(A)
        for mu, x in enumerate(jb.base):
            slot = diff(VA, x)
            for B in jb.fibers:
                slot += diff(VA, B) * jb.jet(B, mu)
            for nu in range(jb.n1):
                slot -= jb.velocity(A, nu) * diff(base[nu], x)
            comps[jb.velocity(A, mu)] = slot
    return VectorField.build(jb.J1Y, comps)


def lift_vector_to_Z(jb: JetBundle, V: VectorField) -> VectorField:
    """
    Canonical lift V_Z.

    p slot: -p V^nu_{,nu} - p_B^nu V^B_{,nu};
    p_A^mu slot: p_A^nu V^mu_{,nu} - p_B^mu V^B_{,A} - p_A^mu V^nu_{,nu}.
    """
    base = [V.component(x) for x in jb.base]
    check_projectable(jb, base)
    div = sum((diff(base[nu], x) for nu, x in enumerate(jb.base)), sympy.Integer(0))
    p = jb.hamiltonian
    comps = {c: V.component(c) for c in jb.Y.coords}
    p_slot = -p * div
    for B in jb.variational:
        for nu, x in enumerate(jb.base):
            p_slot -= jb.momentum(B, nu) * diff(V.component(B), x)
    comps[p] = p_slot
    for A in jb.variational:
        for mu in range(jb.n1):
            slot = -jb.momentum(A, mu) * div
            for nu, x in enumerate(jb.base):
                slot += jb.momentum(A, nu) * diff(base[mu], x)
            for B in jb.variational:
                slot -= jb.momentum(B, mu) * diff(V.component(B), A)
            comps[jb.momentum(A, mu)] = slot
    return VectorField.build(jb.Z, comps)


# =================== Automorphisms ===================

def _base_part(jb: JetBundle, comps: Sequence[Expr]) -> Tuple[Expr, ...]:
    part = tuple(comps[:jb.n1])
    check_projectable(jb, part)
    return part


def _prolonged_components(jb: JetBundle, comps: Sequence[Expr],
                          inverse: Sequence[Expr]) -> Tuple[Expr, ...]:
    """Components of j^1 eta given eta and the base part of its inverse."""
    forward = dict(zip(jb.Y.coords, comps))
    eta_x = {x: forward[x] for x in jb.base}
    inv_base = _base_part(jb, inverse)
    # ∂_mu (eta_X^-1)^nu evaluated at eta_X(x)
    dinv = [[substitute(diff(inv_base[nu], x), eta_x) for x in jb.base] for nu in range(jb.n1)]
    out = list(comps)
    for A in jb.variational:
        etaA = forward[A]
        for mu in range(jb.n1):
            slot = sympy.Integer(0)
            for nu, x in enumerate(jb.base):
                inner = diff(etaA, x)
                for B in jb.fibers:
                    inner += diff(etaA, B) * jb.jet(B, nu)
                slot += inner * dinv[nu][mu]
            out.append(canonicalize(slot))
    return tuple(out)


def prolong_automorphism(jb: JetBundle, eta: ChartMap) -> ChartMap:
    """
    j^1 eta: J1Y -> J1Y for a bundle automorphism with supplied inverse.

    Raises:
        MissingInverse: eta has no inverse
        NotProjectable: eta does not cover a base map
    """
    if eta.inverse is None:
        raise MissingInverse("automorphism needs a caller-supplied inverse")
    comps = _prolonged_components(jb, eta.components, eta.inverse)
    inv = _prolonged_components(jb, eta.inverse, eta.components)
    return ChartMap(jb.J1Y, jb.J1Y, comps, inv)


def _lifted_components(jb: JetBundle, comps: Sequence[Expr],
                       inverse: Sequence[Expr]) -> Tuple[Expr, ...]:
    forward = dict(zip(jb.Y.coords, comps))
    backward = dict(zip(jb.Y.coords, inverse))
    eta_x = _base_part(jb, comps)
    jac = sympy.Matrix(jb.n1, jb.n1, lambda mu, nu: diff(eta_x[mu], jb.base[nu]))
    jinv = 1 / jac.det()

    def d_inv(target: sympy.Symbol, along: sympy.Symbol) -> Expr:
        # derivative of the inverse component, evaluated at eta_Y(y)
        return substitute(diff(backward[target], along), forward)

    p = jb.hamiltonian
    p_new = p
    for A in jb.variational:
        for nu, xn in enumerate(jb.base):
            dA = d_inv(A, xn)
            if dA == 0:
                continue
            for mu, xm in enumerate(jb.base):
                p_new += dA * jb.momentum(A, mu) * diff(eta_x[nu], xm)
    out = list(comps) + [canonicalize(p_new * jinv)]
    for A in jb.variational:
        for mu in range(jb.n1):
            slot = sympy.Integer(0)
            for B in jb.variational:
                dB = d_inv(B, A)
                if dB == 0:
                    continue
                for nu, xn in enumerate(jb.base):
                    slot += dB * jb.momentum(B, nu) * diff(eta_x[mu], xn)
            out.append(canonicalize(slot * jinv))
    return tuple(out)


def lift_automorphism_to_Z(jb: JetBundle, eta: ChartMap) -> ChartMap:
    """
    eta_Z: Z -> Z, the canonical lift of a bundle automorphism.

    Raises:
        MissingInverse: eta has no inverse
    """
    if eta.inverse is None:
        raise MissingInverse("automorphism needs a caller-supplied inverse")
    comps = _lifted_components(jb, eta.components, eta.inverse)
    inv = _lifted_components(jb, eta.inverse, eta.components)
    return ChartMap(jb.Z, jb.Z, comps, inv)


def affine_automorphism(jb: JetBundle, base_matrix=None, base_shift=None,
                        fiber_matrix=None, fiber_shift=None) -> ChartMap:
    """
    x -> M x + b, y -> B y + c on Y with the exact inverse.

    Missing pieces default to the identity and zero shift.
    """
    n1, k = jb.n1, len(jb.fibers)
    M = sympy.Matrix(base_matrix) if base_matrix is not None else sympy.eye(n1)
    b = sympy.Matrix(base_shift) if base_shift is not None else sympy.zeros(n1, 1)
    B = sympy.Matrix(fiber_matrix) if fiber_matrix is not None else sympy.eye(k)
    c = sympy.Matrix(fiber_shift) if fiber_shift is not None else sympy.zeros(k, 1)
    x = sympy.Matrix(jb.base)
    y = sympy.Matrix(jb.fibers)
    Minv, Binv = M.inv(), B.inv()
    comps = list(M * x + b) + list(B * y + c)
    inv = list(Minv * (x - b)) + list(Binv * (y - c))
    return ChartMap(jb.Y, jb.Y, tuple(map(canonicalize, comps)), tuple(map(canonicalize, inv)))


def affine_gauge_shift(jb: JetBundle, field_name: str, f) -> ChartMap:
    """A_nu -> A_nu + ∂_nu f(x) for a covector field."""
    f = sympy.sympify(f)
    shift = {jb.field(field_name, nu): sympy.diff(f, x) for nu, x in enumerate(jb.base)}
    comps = tuple(jb.base) + tuple(y + shift.get(y, 0) for y in jb.fibers)
    inv = tuple(jb.base) + tuple(y - shift.get(y, 0) for y in jb.fibers)
    return ChartMap(jb.Y, jb.Y, comps, inv)


def linear_reparametrization(jb: JetBundle, a, b) -> ChartMap:
    """x^0 -> a x^0 + b, everything else fixed."""
    M = sympy.eye(jb.n1)
    M[0, 0] = a
    shift = [b] + [0] * (jb.n1 - 1)
    return affine_automorphism(jb, base_matrix=M, base_shift=shift)


def scaling_flow(jb: JetBundle, lam) -> ChartMap:
    """Time-lam flow of the vertical field y^A ∂_A on variational fibers."""
    factor = sympy.exp(lam)
    comps = tuple(jb.base) + tuple(y * factor if y in jb.variational else y for y in jb.fibers)
    inv = tuple(jb.base) + tuple(y / factor if y in jb.variational else y for y in jb.fibers)
    return ChartMap(jb.Y, jb.Y, comps, inv)


# =================== Canonical forms ===================

def canonical_theta(jb: JetBundle) -> DiffForm:
    """Theta = p_A^mu dy^A ^ d^n x_mu + p d^{n+1}x on Z."""
    Z = jb.Z
    theta = volume_form(Z).scale(jb.hamiltonian)
    for A in jb.variational:
        dA = coordinate_form(Z, A)
        for mu in range(jb.n1):
            theta = theta + wedge(dA, base_hodge(Z, mu)).scale(jb.momentum(A, mu))
    return theta


def canonical_omega(jb: JetBundle) -> DiffForm:
    """Omega = -d Theta."""
    return -exterior_d(canonical_theta(jb))


def canonical_omega_closed_form(jb: JetBundle) -> DiffForm:
    """dy^A ^ dp_A^mu ^ d^n x_mu - dp ^ d^{n+1}x, assembled term by term."""
    Z = jb.Z
    omega = -wedge(coordinate_form(Z, jb.hamiltonian), volume_form(Z))
    for A in jb.variational:
        dA = coordinate_form(Z, A)
        for mu in range(jb.n1):
            dp = coordinate_form(Z, jb.momentum(A, mu))
            omega = omega + wedge(wedge(dA, dp), base_hodge(Z, mu))
    return omega


def dual_pairing(jb: JetBundle, z: Optional[Mapping[sympy.Symbol, Expr]] = None,
                 gamma: Optional[Mapping[sympy.Symbol, Expr]] = None) -> Expr:
    """
    <z, gamma> = p + p_A^mu v^A_mu, the coefficient of d^{n+1}x.

    Coordinates missing from z or gamma stand for themselves.
    """
    z = z or {}
    gamma = gamma or {}

    def zv(s):
        return z.get(s, s)

    def gv(s):
        return gamma.get(s, s)

    out = zv(jb.hamiltonian)
    for A in jb.variational:
        for mu in range(jb.n1):
            out += zv(jb.momentum(A, mu)) * gv(jb.velocity(A, mu))
    return canonicalize(out)


def pairing_via_pullback(jb: JetBundle, z: Mapping[sympy.Symbol, Expr],
                         gamma: Mapping[sympy.Symbol, Expr]) -> Expr:
    """
    The same pairing as gamma^* of the (n+1)-form z on Y.

    gamma is realized as the affine map x -> (x, y0 + v x) with slopes from
    gamma; the result is the top coefficient of the pulled-back form.
    """
    Y = jb.Y
    form = volume_form(Y).scale(z.get(jb.hamiltonian, jb.hamiltonian))
    for A in jb.variational:
        dA = coordinate_form(Y, A)
        for mu in range(jb.n1):
            coeff = z.get(jb.momentum(A, mu), jb.momentum(A, mu))
            form = form + wedge(dA, base_hodge(Y, mu)).scale(coeff)
    comps = list(jb.base)
    for y in jb.fibers:
        if y in jb.variational:
            slope = sum((gamma.get(jb.velocity(y, mu), jb.velocity(y, mu)) * x
                         for mu, x in enumerate(jb.base)), sympy.Integer(0))
            comps.append(gamma.get(y, y) + slope)
        else:
            comps.append(gamma.get(y, y))
    pulled = pullback(ChartMap(jb.X, Y, tuple(comps)), form)
    return pulled.coefficient(tuple(range(jb.n1)))


def section_of_Z(jb: JetBundle, components: Mapping[sympy.Symbol, Expr]) -> ChartMap:
    """sigma: X -> Z; Z coordinates missing from `components` are held constant."""
    comps = tuple(jb.base) + tuple(sympy.sympify(components.get(c, c))
                                   for c in jb.Z.coords[jb.n1:])
    return ChartMap(jb.X, jb.Z, comps)


def section_pairing_identity(jb: JetBundle, sigma: ChartMap) -> Tuple[Expr, Expr]:
    """
    Both sides of sigma^* Theta = phi^* sigma with phi = pi_YZ o sigma.

    Returns:
        (top coefficient of sigma^* Theta, pairing of sigma with j^1 phi)
    """
    lhs = pullback(sigma, canonical_theta(jb)).coefficient(tuple(range(jb.n1)))
    values = dict(zip(jb.Z.coords, sigma.components))
    phi = Section({y: values[y] for y in jb.fibers})
    gamma = section_bindings(jb, phi)
    rhs = dual_pairing(jb, values, gamma)
    return canonicalize(lhs), rhs


def verticality_condition(jb: JetBundle, v: VectorField, w: VectorField) -> DiffForm:
    """
    i_v i_w Theta for vector fields on Z with no base components.

    Zero when both fields are vertical over X; on a one-dimensional base
    Theta is a 1-form and the double contraction is taken to vanish.
    """
    for field_ in (v, w):
        if any(field_.component(x) != 0 for x in jb.base):
            raise NotProjectable("verticality condition needs fields vertical over X")
    theta = canonical_theta(jb)
    if theta.degree < 2:
        return DiffForm.zero(jb.Z, max(theta.degree - 2, 0))
    return interior(v, interior(w, theta))
