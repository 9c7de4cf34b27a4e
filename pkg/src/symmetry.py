"""
Symmetry - gauge generators, covariant momentum maps and Noether theory.

This module handles:
- Generators on Y and their variation of the Lagrangian
- Covariant momentum maps on Z and their Lagrangian counterparts on J1Y
- Noether currents, Lie derivatives of sections and the divergence identity
- Brackets of momentum maps and infinitesimal equivariance
- Legendre and Cartan-form equivariance checks
- Vertical transitivity, stress-energy of a parametric metric
- Extraction of field equations from the conservation law, and on-shell
  conservation by substitution of the field equations

Algebra elements are finite jet data: the arbitrary functions of a
generator family are jet-parameter symbols whose derivative towers are
created on demand.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from .constants import DEFAULT_SEED, DEFAULT_TOL, MAX_SAMPLE_ATTEMPTS
from .geometry import (
    DiffForm,
    VectorField,
    base_hodge,
    base_hodge2,
    coordinate_form,
    exterior_d,
    interior,
    lie_derivative,
    pullback,
    wedge,
)
from .jets import (
    JetBundle,
    canonical_omega,
    canonical_theta,
    check_projectable,
    jet_bundle,
    lift_vector_to_Z,
    prolong_section,
    prolong_vector,
    section_bindings,
    total_derivative,
    vector_on_Y,
)
from .models import GeneratorFamily, MetricKind, Section, Theory
from .symcore import (
    SYMBOLS,
    DegenerateSample,
    Expr,
    MultiphaseError,
    NegativeRadicand,
    SingularPoint,
    SymbolKind,
    canonicalize,
    compile_numeric,
    diff,
    is_zero,
    sample_assignment,
    substitute,
)
from .variational import cartan_form, euler_lagrange, legendre, tidy

logger = logging.getLogger(__name__)


class NoParametricMetric(MultiphaseError):
    key = "errors.no_parametric_metric"


# =================== Generators ===================

def generator_on_Y(theory: Theory, g: GeneratorFamily) -> VectorField:
    """xi_Y = xi^mu ∂_mu + xi^A ∂_A; raises NotProjectable for fiber-dependent xi^mu."""
    jb = jet_bundle(theory.bundle)
    check_projectable(jb, g.base_components)
    return vector_on_Y(jb, g.base_components, g.fiber_components)


def divergence(jb: JetBundle, base_components) -> Expr:
    return sum((diff(c, x) for c, x in zip(base_components, jb.base)), sympy.Integer(0))


def variation_of_L(theory: Theory, g: GeneratorFamily) -> Expr:
    """
    δ_xi L = j^1 xi (L) + L xi^mu_{,mu}.

    Parametric fibers contribute ∂L/∂g xi^g; their jets enter through
    background-jet symbols.
    """
    jb = jet_bundle(theory.bundle)
    V = generator_on_Y(theory, g)
    j1 = prolong_vector(jb, V)
    L = theory.lagrangian
    return tidy(j1.apply(L) + L * divergence(jb, g.base_components))


# =================== Momentum maps ===================

def _momentum_map_form(jb: JetBundle, chart, g: GeneratorFamily,
                       momenta: Dict[sympy.Symbol, Expr], hamiltonian: Expr) -> DiffForm:
    """(P_A^mu xi^A + H xi^mu) d^n x_mu - P_A^mu xi^nu dy^A ^ d^{n-1} x_{mu nu}."""
    form = DiffForm.zero(chart, jb.n1 - 1)
    for mu in range(jb.n1):
        coeff = hamiltonian * g.base_components[mu]
        for A in jb.variational:
            coeff += momenta[jb.momentum(A, mu)] * g.fiber_component(A)
        form = form + base_hodge(chart, mu).scale(coeff)
    if jb.n1 >= 2:
        for A in jb.variational:
            dA = coordinate_form(chart, A)
            for mu in range(jb.n1):
                P = momenta[jb.momentum(A, mu)]
                if P == 0:
                    continue
                for nu in range(jb.n1):
                    if nu == mu or g.base_components[nu] == 0:
                        continue
                    term = wedge(dA, base_hodge2(chart, mu, nu))
                    form = form - term.scale(P * g.base_components[nu])
    return form


def covariant_momentum_map(theory: Theory, g: GeneratorFamily) -> DiffForm:
    """J(xi) on Z by the coordinate formula."""
    jb = jet_bundle(theory.bundle)
    momenta = {jb.momentum(A, mu): jb.momentum(A, mu)
               for A in jb.variational for mu in range(jb.n1)}
    return _momentum_map_form(jb, jb.Z, g, momenta, jb.hamiltonian)


def momentum_map_via_theta(theory: Theory, g: GeneratorFamily) -> DiffForm:
    """J(xi) = xi_Z ⨼ Theta."""
    jb = jet_bundle(theory.bundle)
    xi_Z = lift_vector_to_Z(jb, generator_on_Y(theory, g))
    return interior(xi_Z, canonical_theta(jb))


def lifted_generator(theory: Theory, g: GeneratorFamily) -> VectorField:
    jb = jet_bundle(theory.bundle)
    return lift_vector_to_Z(jb, generator_on_Y(theory, g))


def lagrangian_momentum_map(theory: Theory, g: GeneratorFamily) -> DiffForm:
    """J^L(xi) on J1Y by the coordinate formula with p_A^mu = ∂L/∂v^A_mu."""
    jb = jet_bundle(theory.bundle)
    leg = legendre(theory)
    return _momentum_map_form(jb, jb.J1Y, g, leg.momenta, leg.hamiltonian)


def lagrangian_momentum_map_via_pullback(theory: Theory, g: GeneratorFamily) -> DiffForm:
    """FL^* J(xi)."""
    return pullback(legendre(theory).chart_map, covariant_momentum_map(theory, g))


def lagrangian_momentum_map_via_contraction(theory: Theory, g: GeneratorFamily) -> DiffForm:
    """xi_{J1Y} ⨼ Theta_L."""
    jb = jet_bundle(theory.bundle)
    j1 = prolong_vector(jb, generator_on_Y(theory, g))
    return interior(j1, cartan_form(theory)).map_coefficients(tidy)


# =================== Noether ===================

def current_density(theory: Theory, g: GeneratorFamily) -> List[Expr]:
    """j^mu = (∂L/∂v^A_mu)(xi^A - v^A_nu xi^nu) + L xi^mu on J1Y."""
    jb = jet_bundle(theory.bundle)
    L = theory.lagrangian
    out = []
    for mu in range(jb.n1):
        j = L * g.base_components[mu]
        for A in jb.variational:
            P = diff(L, jb.velocity(A, mu))
            if P == 0:
                continue
            drift = g.fiber_component(A) - sum(
                (jb.velocity(A, nu) * g.base_components[nu] for nu in range(jb.n1)),
                sympy.Integer(0))
            j += P * drift
        out.append(tidy(j))
    return out


def noether_current(theory: Theory, g: GeneratorFamily, phi: Section) -> DiffForm:
    """The n-form j^mu(j^1 phi) d^n x_mu on X."""
    jb = jet_bundle(theory.bundle)
    bindings = section_bindings(jb, phi)
    form = DiffForm.zero(jb.X, jb.n1 - 1)
    for mu, j in enumerate(current_density(theory, g)):
        form = form + base_hodge(jb.X, mu).scale(substitute(j, bindings))
    return form


def noether_current_via_pullback(theory: Theory, g: GeneratorFamily, phi: Section) -> DiffForm:
    """(j^1 phi)^* J^L(xi)."""
    jb = jet_bundle(theory.bundle)
    return pullback(prolong_section(jb, phi), lagrangian_momentum_map(theory, g))


def section_drift(jb: JetBundle, g: GeneratorFamily) -> Dict[sympy.Symbol, Expr]:
    """(£_xi phi)^A = y^A_{,nu} xi^nu - xi^A on generic jets, for every fiber coordinate."""
    out = {}
    for y in jb.fibers:
        e = -g.fiber_component(y)
        for nu in range(jb.n1):
            e += jb.jet(y, nu) * g.base_components[nu]
        out[y] = canonicalize(e)
    return out


def lie_derivative_of_section(theory: Theory, phi: Section, g: GeneratorFamily) -> Dict[sympy.Symbol, Expr]:
    """(£_xi phi)^A = phi^A_{,nu} xi^nu - xi^A ∘ phi."""
    jb = jet_bundle(theory.bundle)
    bindings = section_bindings(jb, phi)
    return {y: substitute(e, bindings) for y, e in section_drift(jb, g).items()}


@dataclass(frozen=True)
class DivergenceIdentity:
    """
    Both sides of D_mu j^mu = E_A (£_xi phi)^A + δ_xi L on generic jets.

    Attributes:
        lhs: Total divergence of the current density
        rhs: Field equations contracted with the drift, plus the variation of L
        residual: canonicalize(lhs - rhs)
        variation: δ_xi L on its own
    """
    lhs: Expr
    rhs: Expr
    residual: Expr
    variation: Expr

    def holds(self) -> bool:
        return self.residual == 0 or is_zero(self.residual, context="noether divergence identity")


def field_derivatives(theory: Theory) -> Dict[sympy.Symbol, Expr]:
    """Euler-Lagrange expressions, extended by ∂L/∂g for parametric fibers."""
    jb = jet_bundle(theory.bundle)
    out = dict(euler_lagrange(theory))
    for y in jb.parametric:
        out[y] = canonicalize(diff(theory.lagrangian, y))
    return out


def noether_divergence_identity(theory: Theory, g: GeneratorFamily,
                                density: Optional[Sequence[Expr]] = None) -> DivergenceIdentity:
    """
    Both sides of the identity for the current of g, or for a supplied
    density j^mu on J1Y (one component per base direction).
    """
    jb = jet_bundle(theory.bundle)
    if density is None:
        density = current_density(theory, g)
    elif len(density) != jb.n1:
        raise ValueError(f"current density needs {jb.n1} components, got {len(density)}")
    lhs = canonicalize(sum((total_derivative(jb, j, mu) for mu, j in enumerate(density)),
                           sympy.Integer(0)))
    drift = section_drift(jb, g)
    variation = variation_of_L(theory, g)
    rhs = variation
    for y, E in field_derivatives(theory).items():
        rhs += E * drift[y]
    rhs = canonicalize(rhs)
    return DivergenceIdentity(lhs, rhs, tidy(lhs - rhs), variation)


# =================== Brackets ===================

def algebra_bracket(theory: Theory, g1: GeneratorFamily, g2: GeneratorFamily) -> GeneratorFamily:
    """[xi, zeta] with generator [zeta_Y, xi_Y]."""
    jb = jet_bundle(theory.bundle)
    field_ = generator_on_Y(theory, g2).bracket(generator_on_Y(theory, g1))
    return GeneratorFamily(
        name=f"[{g1.name},{g2.name}]",
        base_components=tuple(field_.component(x) for x in jb.base),
        fiber_components={y: field_.component(y) for y in jb.fibers if field_.component(y) != 0},
        jet_roots=tuple(dict.fromkeys(g1.jet_roots + g2.jet_roots)),
    )


@dataclass(frozen=True)
class BracketResult:
    """
    {J(xi), J(zeta)} = d(xi_Z ⨼ zeta_Z ⨼ Theta) + J([xi, zeta]).

    Attributes:
        bracket: zeta_Z ⨼ (xi_Z ⨼ Omega)
        exact_term: d(i_{xi_Z} i_{zeta_Z} Theta)
        algebra_term: J([xi, zeta])
        residual: bracket - exact_term - algebra_term
    """
    bracket: DiffForm
    exact_term: DiffForm
    algebra_term: DiffForm
    residual: DiffForm


def momentum_bracket(theory: Theory, g1: GeneratorFamily, g2: GeneratorFamily) -> BracketResult:
    jb = jet_bundle(theory.bundle)
    xi_Z = lifted_generator(theory, g1)
    zeta_Z = lifted_generator(theory, g2)
    bracket = interior(zeta_Z, interior(xi_Z, canonical_omega(jb)))
    theta = canonical_theta(jb)
    if theta.degree >= 2:
        exact = exterior_d(interior(xi_Z, interior(zeta_Z, theta)))
    else:
        exact = DiffForm.zero(jb.Z, bracket.degree)
    algebra_term = covariant_momentum_map(theory, algebra_bracket(theory, g1, g2))
    residual = bracket - exact - algebra_term
    return BracketResult(bracket, exact, algebra_term, residual)


def equivariance_infinitesimal(theory: Theory, g1: GeneratorFamily, g2: GeneratorFamily) -> DiffForm:
    """£_{zeta_Z} J(xi) - J([xi, zeta])."""
    zeta_Z = lifted_generator(theory, g2)
    lhs = lie_derivative(zeta_Z, covariant_momentum_map(theory, g1))
    return lhs - covariant_momentum_map(theory, algebra_bracket(theory, g1, g2))


def legendre_equivariance_check(theory: Theory, g: GeneratorFamily) -> Dict[sympy.Symbol, Expr]:
    """
    xi_Z ∘ FL - TFL · xi_{J1Y}, per Z coordinate.

    Only the p and p_A^mu slots can differ; they are returned keyed by Z coordinate.
    """
    jb = jet_bundle(theory.bundle)
    leg = legendre(theory)
    V = generator_on_Y(theory, g)
    xi_Z = lift_vector_to_Z(jb, V)
    j1 = prolong_vector(jb, V)
    fl = leg.chart_map
    bindings = fl.bindings()
    out = {}
    for c in jb.Z.coords[jb.Y.dim:]:
        pushed = j1.apply(fl.component(c))
        out[c] = tidy(substitute(xi_Z.component(c), bindings) - pushed)
    return out


def cartan_invariance_check(theory: Theory, g: GeneratorFamily) -> DiffForm:
    """£_{j^1 xi} Theta_L."""
    jb = jet_bundle(theory.bundle)
    j1 = prolong_vector(jb, generator_on_Y(theory, g))
    return lie_derivative(j1, cartan_form(theory)).map_coefficients(tidy)


# =================== Transitivity ===================

@dataclass
class TransitivityResult:
    """
    Attributes:
        verdict: True iff the generators span every fiber direction at all samples
        rank: Smallest numeric rank seen
        dim: Number of fiber coordinates of Y
        witness: Fiber coordinate name -> component of a missed direction
    """
    verdict: bool
    rank: int
    dim: int
    witness: Dict[str, float] = field(default_factory=dict)


def _truncated_parameters(jb: JetBundle, families: List[GeneratorFamily]) -> List[sympy.Symbol]:
    params: List[sympy.Symbol] = []
    for g in families:
        for root in g.jet_roots:
            for s in [SYMBOLS.jet_parameter(root)] + [SYMBOLS.jet_parameter(root, mu)
                                                      for mu in range(jb.n1)]:
                if s not in params:
                    params.append(s)
    return params


def _admissible_matrix(entries, symbols, rng: np.random.Generator) -> np.ndarray:
    for _ in range(MAX_SAMPLE_ATTEMPTS):
        point = sample_assignment(symbols, rng)
        try:
            return np.array([[f(point) for f in col] for col in entries]).T
        except (NegativeRadicand, SingularPoint):
            logger.debug("transitivity sample outside the domain, redrawing")
    raise DegenerateSample("no admissible sample point for the transitivity rank")


def vertical_transitivity(theory: Theory, n_points: int = 3,
                          seed: int = DEFAULT_SEED) -> TransitivityResult:
    """
    Rank of the fiber components of all generators over the jet parameters
    (roots and first derivatives), at randomized chart points.

    Points where a component cannot be evaluated are redrawn.

    Raises:
        DegenerateSample: no admissible point in MAX_SAMPLE_ATTEMPTS draws
    """
    jb = jet_bundle(theory.bundle)
    families = list(theory.generators.values())
    dim = len(jb.fibers)
    params = _truncated_parameters(jb, families)
    if not params:
        witness = {jb.fibers[0].name: 1.0} if dim else {}
        return TransitivityResult(False, 0, dim, witness)
    columns: List[List[Expr]] = []
    for g in families:
        for s in params:
            col = [canonicalize(diff(g.fiber_component(y), s)) for y in jb.fibers]
            if any(c != 0 for c in col):
                columns.append(col)
    if not columns:
        return TransitivityResult(False, 0, dim, {jb.fibers[0].name: 1.0})
    entries = [[compile_numeric(c) for c in col] for col in columns]
    symbols = set()
    for col in entries:
        for f in col:
            symbols.update(f.symbols)
    rng = np.random.default_rng(seed)
    min_rank, witness = dim, {}
    for _ in range(n_points):
        M = _admissible_matrix(entries, symbols, rng)
        rank = int(np.linalg.matrix_rank(M, tol=DEFAULT_TOL * max(1.0, np.abs(M).max())))
        if rank < min_rank:
            min_rank = rank
            U, _, _ = np.linalg.svd(M)
            null = U[:, -1]
            witness = {y.name: float(v) for y, v in zip(jb.fibers, null) if abs(v) > 1e-12}
    return TransitivityResult(min_rank == dim, min_rank, dim, witness)


# =================== Stress-energy ===================

def stress_energy_from_parametric_metric(theory: Theory) -> Dict[Tuple[int, int], Expr]:
    """
    T^{sr} = 2 ∂L/∂g_{sr} (symmetrized), keyed by every ordered pair.

    With g_(sr) a single coordinate for s != r, the coordinate derivative
    already counts both orderings, so T^{sr} is that derivative off the
    diagonal and twice it on the diagonal.

    Raises:
        NoParametricMetric: the theory's metric is not parametric
    """
    jb = jet_bundle(theory.bundle)
    if theory.bundle.metric.kind != MetricKind.PARAMETRIC or jb.metric_group is None:
        raise NoParametricMetric(f"theory {theory.name} has no parametric metric")
    grp = jb.metric_group
    out: Dict[Tuple[int, int], Expr] = {}
    for s in range(jb.n1):
        for r in range(s, jb.n1):
            C = canonicalize(diff(theory.lagrangian, grp.g(s, r)))
            T = 2 * C if s == r else C
            out[(s, r)] = canonicalize(T)
            out[(r, s)] = out[(s, r)]
    return out


# =================== Converse and on-shell ===================

@dataclass
class ConverseResult:
    """
    Field equations forced by the conservation law holding for every algebra element.

    Attributes:
        equations: Coefficients over jet parameters, linear in the placeholders
        placeholders: Variational fiber coordinate -> placeholder symbol E_A
        rank: Numeric rank of the equations in the placeholders
        forces_all: rank equals the number of variational fiber coordinates
        forced: Fiber coordinates whose field equation is forced on its own
        remaining: Equations left after the forced ones are set to zero
    """
    equations: List[Expr]
    placeholders: Dict[sympy.Symbol, sympy.Symbol]
    rank: int
    forces_all: bool
    forced: List[sympy.Symbol] = field(default_factory=list)
    remaining: List[Expr] = field(default_factory=list)

    def with_field_equations(self, theory: Theory) -> List[Expr]:
        """Equations with the placeholders replaced by the Euler-Lagrange expressions."""
        el = euler_lagrange(theory)
        bindings = {E: el[y] for y, E in self.placeholders.items()}
        return [substitute(e, bindings) for e in self.equations]


def _jet_parameters_in(e: Expr) -> List[sympy.Symbol]:
    return sorted((s for s in e.free_symbols if SYMBOLS.kind_of(s) == SymbolKind.JET_PARAMETER),
                  key=str)


def converse_extraction(theory: Theory, g: GeneratorFamily,
                        seed: int = DEFAULT_SEED) -> ConverseResult:
    """
    Require E_A (£_xi phi)^A = 0 for all values of the jet parameters and
    collect the coefficient equations.
    """
    jb = jet_bundle(theory.bundle)
    placeholders = {y: SYMBOLS.parameter(f"E_{y.name}") for y in jb.variational}
    drift = section_drift(jb, g)
    total = canonicalize(sum((E * drift[y] for y, E in placeholders.items()), sympy.Integer(0)))
    params = _jet_parameters_in(total)
    equations: List[Expr] = []
    if params:
        poly = sympy.Poly(total, *params)
        for _, coeff in sorted(poly.terms(), key=lambda t: t[0]):
            c = canonicalize(coeff)
            if c != 0:
                equations.append(c)
    elif total != 0:
        equations.append(total)
    unknowns = list(placeholders.values())
    if not equations:
        return ConverseResult([], placeholders, 0, False, [], [])
    rows = [[canonicalize(diff(e, E)) for E in unknowns] for e in equations]
    rng = np.random.default_rng(seed)
    symbols = set()
    for row in rows:
        for c in row:
            symbols |= c.free_symbols
    point = sample_assignment(symbols, rng)
    M = np.array([[compile_numeric(c)(point) for c in row] for row in rows])
    rank = int(np.linalg.matrix_rank(M))
    forced = []
    for k, y in enumerate(placeholders):
        unit = np.zeros((1, len(unknowns)))
        unit[0, k] = 1.0
        if np.linalg.matrix_rank(np.vstack([M, unit])) == rank:
            forced.append(y)
    zero_forced = {placeholders[y]: 0 for y in forced}
    remaining = [r for r in (substitute(e, zero_forced) for e in equations) if r != 0]
    return ConverseResult(equations, placeholders, rank, rank == len(unknowns), forced, remaining)


@dataclass
class OnShellResult:
    """
    Divergence of the current after solving the field equations.

    Attributes:
        solved_for: Jet symbols eliminated by the field equations
        divergence: D_mu j^mu on shell (None when the equations could not be solved)
        source: δ_xi L plus parametric terms on shell
        residual: divergence - source (the identity, on shell)
        conserved: True when the on-shell divergence vanishes
    """
    solved_for: List[sympy.Symbol]
    divergence: Optional[Expr]
    source: Optional[Expr]
    residual: Optional[Expr]
    conserved: Optional[bool]


def _pick_unknown(jb: JetBundle, A: sympy.Symbol, e: Expr, taken) -> Optional[sympy.Symbol]:
    own2 = [jb.second_velocity(A, m, n) for m in range(jb.n1) for n in range(m, jb.n1)]
    own1 = [jb.velocity(A, m) for m in range(jb.n1)]
    others = sorted((s for s in e.free_symbols
                     if SYMBOLS.kind_of(s) in (SymbolKind.SECOND_VELOCITY, SymbolKind.VELOCITY)),
                    key=lambda s: (SYMBOLS.kind_of(s) != SymbolKind.SECOND_VELOCITY, str(s)))
    for s in own2 + own1 + others:
        if s in taken or not e.has(s):
            continue
        d = diff(e, s)
        if d != 0 and not d.has(s):
            return s
    return None


def on_shell_conservation(theory: Theory, g: GeneratorFamily) -> OnShellResult:
    jb = jet_bundle(theory.bundle)
    el = euler_lagrange(theory)
    identity = noether_divergence_identity(theory, g)
    unknowns: List[sympy.Symbol] = []
    for A, e in el.items():
        if e == 0:
            continue
        s = _pick_unknown(jb, A, e, unknowns)
        if s is None:
            logger.warning("cannot solve the field equation of %s for a jet symbol", A)
            return OnShellResult([], None, None, None, None)
        unknowns.append(s)
    eqs = [e for e in el.values() if e != 0]
    if eqs:
        solutions = sympy.solve(eqs, unknowns, dict=True)
        if not solutions:
            logger.warning("field equations of %s have no solution for %s", theory.name, unknowns)
            return OnShellResult(unknowns, None, None, None, None)
        bindings = solutions[0]
    else:
        bindings = {}
    drift = section_drift(jb, g)
    source = identity.variation
    for y in jb.parametric:
        source += diff(theory.lagrangian, y) * drift[y]
    div_on = tidy(substitute(identity.lhs, bindings))
    src_on = tidy(substitute(source, bindings))
    residual = tidy(div_on - src_on)
    conserved = div_on == 0 or is_zero(div_on, context="on-shell divergence")
    return OnShellResult(unknowns, div_on, src_on, residual, conserved)
