"""
Theories - the built-in catalog of worked examples.

Each constructor returns a Theory; CATALOG_BUILDERS pairs the shipped theories with
the closed forms the engine has to reproduce:
- particle mechanics with a generic Lagrangian
- the relativistic particle (flat or curved target)
- electromagnetism on fixed Minkowski space or with a parametric metric
- abelian Chern-Simons theory in three dimensions
- the Polyakov bosonic string
- random polynomial theories for property tests

Minkowski signatures are (-, +, +, ...); eps^{01...n} = +1.
"""
import logging
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import sympy

from .geometry import (
    DiffForm,
    base_hodge,
    base_hodge2,
    coordinate_form,
    volume_form,
    wedge,
)
from .jets import JetBundle, jet_bundle
from .models import (
    BundleSpec,
    CatalogEntry,
    ExpectedObject,
    FieldKind,
    FieldSpec,
    GeneratorFamily,
    MetricKind,
    MetricSpec,
    TargetSpec,
    Theory,
)
from .symcore import SYMBOLS, Expr, canonicalize, minkowski_signature

logger = logging.getLogger(__name__)


# =================== Index helpers ===================

def levi_civita(*indices: int) -> int:
    return int(sympy.LeviCivita(*indices))


def field_strength(jb: JetBundle, name: str = "A") -> sympy.Matrix:
    """F_{mu nu} = ∂_mu A_nu - ∂_nu A_mu in multivelocities."""
    n1 = jb.n1
    return sympy.Matrix(n1, n1, lambda mu, nu: jb.velocity(jb.field(name, nu), mu)
                        - jb.velocity(jb.field(name, mu), nu))


def raise_both(ginv: sympy.Matrix, F: sympy.Matrix) -> sympy.Matrix:
    """F^{ab} = g^{am} g^{bn} F_{mn}."""
    return ginv * F * ginv.T


def contract(F: sympy.Matrix, G: sympy.Matrix) -> Expr:
    """F_{ab} G^{ab}."""
    n = F.shape[0]
    return sum((F[a, b] * G[a, b] for a in range(n) for b in range(n)), sympy.Integer(0))


def algebra_function(name: str, jb: JetBundle) -> sympy.Symbol:
    """Register an arbitrary function on X as a jet parameter and return its root symbol."""
    return SYMBOLS.register_jet_root(name, jb.base)


def _diffeo_roots(jb: JetBundle) -> List[str]:
    roots = [f"xi{mu}" for mu in range(jb.n1)]
    for r in roots:
        algebra_function(r, jb)
    return roots


def covector_diffeo_terms(jb: JetBundle, name: str = "A") -> Dict[sympy.Symbol, Expr]:
    """-A_tau xi^tau_{,nu} on each A_nu."""
    out = {}
    for nu in range(jb.n1):
        out[jb.field(name, nu)] = -sum(
            (jb.field(name, tau) * SYMBOLS.jet_parameter(f"xi{tau}", nu) for tau in range(jb.n1)),
            sympy.Integer(0))
    return out


def sym2_diffeo_terms(jb: JetBundle, name: str) -> Dict[sympy.Symbol, Expr]:
    """-(g_{s nu} xi^nu_{,r} + g_{r nu} xi^nu_{,s}) on each g_(sr)."""
    out = {}
    for s in range(jb.n1):
        for r in range(s, jb.n1):
            out[jb.field(name, s, r)] = -sum(
                (jb.field(name, s, nu) * SYMBOLS.jet_parameter(f"xi{nu}", r)
                 + jb.field(name, r, nu) * SYMBOLS.jet_parameter(f"xi{nu}", s)
                 for nu in range(jb.n1)), sympy.Integer(0))
    return out


def _merge(*parts: Dict[sympy.Symbol, Expr]) -> Dict[sympy.Symbol, Expr]:
    out: Dict[sympy.Symbol, Expr] = {}
    for part in parts:
        for k, v in part.items():
            out[k] = canonicalize(out.get(k, 0) + v)
    return out


def _xi_base(jb: JetBundle) -> Tuple[Expr, ...]:
    return tuple(SYMBOLS.jet_parameter(f"xi{mu}") for mu in range(jb.n1))


def _zero_base(jb: JetBundle) -> Tuple[Expr, ...]:
    return tuple(sympy.Integer(0) for _ in range(jb.n1))


# =================== Mechanics ===================

def make_particle_mechanics(N: int = 1) -> Theory:
    """
    Mechanics on Q of dimension N: chart (t, q^A, v^A) with a generic L(t, q, v).

    Generators: time translation and reparametrization chi(t) ∂_t.
    """
    if N < 1:
        raise ValueError("configuration dimension must be at least 1")
    spec = BundleSpec(1, ("t",), (FieldSpec("q", FieldKind.SCALAR, True, N),))
    jb = jet_bundle(spec)
    args = list(jb.base) + list(jb.fibers) + [jb.velocity(q, 0) for q in jb.fibers]
    L = sympy.Function("L")(*args)
    chi = algebra_function("chi", jb)
    generators = {
        "translation": GeneratorFamily("translation", (sympy.Integer(1),),
                                       description="time translation ∂_t"),
        "reparametrization": GeneratorFamily("reparametrization", (chi,), {}, ("chi",),
                                             "time reparametrization chi(t) ∂_t"),
    }
    return Theory("particle_mechanics", spec, L, generators, parametrized=True,
                  description=f"particle mechanics on a {N}-dimensional configuration space")


# =================== Relativistic particle ===================

def make_relativistic_particle(curved: bool = False) -> Theory:
    """
    L = -m sqrt(-g_AB v^A v^B) on a 4-dimensional target.

    Flat: g is numeric Minkowski. Curved: g is the target metric M(q) with a
    registered derivative tower.
    """
    targets = (TargetSpec("M", "q", minkowski_signature(4)),) if curved else ()
    spec = BundleSpec(1, ("t",), (FieldSpec("q", FieldKind.SCALAR, True, 4),), MetricSpec(),
                      targets)
    jb = jet_bundle(spec)
    m = SYMBOLS.parameter("m")
    v = [jb.velocity(q, 0) for q in jb.fibers]
    G = _target_matrix(jb, "M") if curved else sympy.diag(*minkowski_signature(4))
    quad = sum((G[a, b] * v[a] * v[b] for a in range(4) for b in range(4)), sympy.Integer(0))
    L = -m * sympy.sqrt(canonicalize(-quad))
    chi = algebra_function("chi", jb)
    generators = {
        "reparametrization": GeneratorFamily("reparametrization", (chi,), {}, ("chi",),
                                             "worldline reparametrization chi(t) ∂_t"),
    }
    name = "relativistic_particle_curved" if curved else "relativistic_particle"
    return Theory(name, spec, L, generators, parametrized=True, constants=(m,),
                  description="free relativistic particle")


def _target_matrix(jb: JetBundle, label: str) -> sympy.Matrix:
    k = jb.targets[label].dim
    return sympy.Matrix(k, k, lambda a, b: SYMBOLS.target_component(label, a, b))


# =================== Electromagnetism ===================

def make_maxwell(fixed_minkowski: bool = True) -> Theory:
    """
    L = -1/4 F_{mu nu} F^{mu nu} sqrt|g| in four dimensions.

    Fixed metric: numeric Minkowski, gauge and translation generators.
    Parametric metric g: gauge generator and the parametrized (xi, chi)
    family acting on A and g.
    """
    coords = ("x0", "x1", "x2", "x3")
    fields = [FieldSpec("A", FieldKind.COVECTOR)]
    if fixed_minkowski:
        metric = MetricSpec(MetricKind.FIXED, None, minkowski_signature(4))
    else:
        fields.append(FieldSpec("g", FieldKind.SYM2, variational=False))
        metric = MetricSpec(MetricKind.PARAMETRIC, "g", minkowski_signature(4))
    spec = BundleSpec(4, coords, tuple(fields), metric)
    jb = jet_bundle(spec)
    g, ginv, sqrtdet = jb.metric_matrices()
    F = field_strength(jb)
    L = canonicalize(-sympy.Rational(1, 4) * contract(F, raise_both(ginv, F)) * sqrtdet)
    algebra_function("chi", jb)
    gauge = GeneratorFamily(
        "gauge", _zero_base(jb),
        {jb.field("A", nu): SYMBOLS.jet_parameter("chi", nu) for nu in range(4)},
        ("chi",), "electromagnetic gauge transformation A -> A + d chi")
    generators = {"gauge": gauge}
    if fixed_minkowski:
        generators["translation"] = GeneratorFamily(
            "translation", (sympy.Integer(1),) + (sympy.Integer(0),) * 3, {}, (), "time translation ∂_0")
        name = "maxwell"
    else:
        roots = _diffeo_roots(jb)
        fiber = _merge(covector_diffeo_terms(jb), gauge.fiber_components,
                       sym2_diffeo_terms(jb, "g"))
        generators["diffeo_gauge"] = GeneratorFamily(
            "diffeo_gauge", _xi_base(jb), fiber, tuple(roots) + ("chi",),
            "spacetime diffeomorphisms together with gauge transformations")
        name = "maxwell_parametric"
    return Theory(name, spec, L, generators, parametrized=not fixed_minkowski,
                  description="electromagnetism")


# =================== Chern-Simons ===================

def make_chern_simons() -> Theory:
    """L = 1/2 eps^{mu nu s} F_{mu nu} A_s in three dimensions, no metric."""
    spec = BundleSpec(3, ("x0", "x1", "x2"), (FieldSpec("A", FieldKind.COVECTOR),))
    jb = jet_bundle(spec)
    F = field_strength(jb)
    L = canonicalize(sympy.Rational(1, 2) * sum(
        (levi_civita(a, b, s) * F[a, b] * jb.field("A", s)
         for a, b, s in permutations(range(3))), sympy.Integer(0)))
    algebra_function("chi", jb)
    roots = _diffeo_roots(jb)
    gauge_terms = {jb.field("A", nu): SYMBOLS.jet_parameter("chi", nu) for nu in range(3)}
    generators = {
        "gauge": GeneratorFamily("gauge", _zero_base(jb), gauge_terms, ("chi",),
                                 "gauge transformation A -> A + d chi"),
        "diffeo": GeneratorFamily("diffeo", _xi_base(jb), covector_diffeo_terms(jb),
                                  tuple(roots), "diffeomorphisms of the base"),
        "diffeo_gauge": GeneratorFamily("diffeo_gauge", _xi_base(jb),
                                        _merge(covector_diffeo_terms(jb), gauge_terms),
                                        tuple(roots) + ("chi",),
                                        "diffeomorphisms together with gauge transformations"),
    }
    return Theory("chern_simons", spec, L, generators, parametrized=True,
                  description="abelian Chern-Simons theory")


# =================== Bosonic string ===================

def string_target_label(d: int) -> str:
    return "G" if d == 3 else f"G{d}"


def make_polyakov_string(d: int = 3) -> Theory:
    """
    L = -1/2 sqrt|h| h^{mu nu} G_AB(phi) v^A_mu v^B_nu on a two-dimensional worldsheet.

    Both phi and h are varied. Generators: worldsheet diffeomorphisms xi,
    conformal rescalings lam, and both together.
    """
    if d < 1:
        raise ValueError("target dimension must be at least 1")
    label = string_target_label(d)
    spec = BundleSpec(
        2, ("x0", "x1"),
        (FieldSpec("phi", FieldKind.SCALAR, True, d), FieldSpec("h", FieldKind.SYM2, True)),
        MetricSpec(MetricKind.VARIATIONAL, "h", minkowski_signature(2)),
        (TargetSpec(label, "phi", (1,) * d),),
    )
    jb = jet_bundle(spec)
    _, hinv, sqrth = jb.metric_matrices()
    G = _target_matrix(jb, label)
    phis = [jb.field("phi", a) for a in range(d)]
    L = sympy.Integer(0)
    for mu, nu, a, b in product(range(2), range(2), range(d), range(d)):
        L += hinv[mu, nu] * G[a, b] * jb.velocity(phis[a], mu) * jb.velocity(phis[b], nu)
    L = canonicalize(-sympy.Rational(1, 2) * sqrth * L)
    roots = _diffeo_roots(jb)
    lam = algebra_function("lam", jb)
    conformal = {jb.field("h", s, r): 2 * lam * jb.field("h", s, r)
                 for s in range(2) for r in range(s, 2)}
    diffeo = sym2_diffeo_terms(jb, "h")
    generators = {
        "diffeo": GeneratorFamily("diffeo", _xi_base(jb), diffeo, tuple(roots),
                                  "worldsheet diffeomorphisms"),
        "conformal": GeneratorFamily("conformal", _zero_base(jb), conformal, ("lam",),
                                     "conformal rescalings of h"),
        "diffeo_conformal": GeneratorFamily("diffeo_conformal", _xi_base(jb),
                                            _merge(diffeo, conformal),
                                            tuple(roots) + ("lam",),
                                            "diffeomorphisms together with conformal rescalings"),
    }
    return Theory("polyakov", spec, L, generators, parametrized=True,
                  description="Polyakov bosonic string")


# =================== Random polynomial theories ===================

def make_random_polynomial(seed: int, n_terms: int = 6) -> Theory:
    """
    A two-dimensional theory of two scalars with a random polynomial L and a
    random affine generator "affine" (xi^mu = a^mu + B^mu_nu x^nu, xi^A = c^A + D^A_B u^B).

    The generator is generally not a symmetry; identities that hold for every
    Lagrangian and every projectable generator are tested against it.
    """
    rng = np.random.default_rng(seed)
    spec = BundleSpec(2, ("x0", "x1"), (FieldSpec("u", FieldKind.SCALAR, True, 2),))
    jb = jet_bundle(spec)
    pool = list(jb.base) + list(jb.fibers) + [jb.velocity(y, mu) for y in jb.fibers for mu in range(2)]

    def coeff(low: int = -3, high: int = 4) -> sympy.Integer:
        c = 0
        while c == 0:
            c = int(rng.integers(low, high))
        return sympy.Integer(c)

    L = sympy.Integer(0)
    for _ in range(n_terms):
        degree = int(rng.integers(2, 4))
        factors = [pool[int(i)] for i in rng.integers(0, len(pool), size=degree)]
        L += coeff() * sympy.Mul(*factors)
    base = tuple(sympy.Integer(int(rng.integers(-2, 3))) + sum(
        (int(rng.integers(-2, 3)) * x for x in jb.base), sympy.Integer(0)) for _ in range(2))
    fiber = {y: sympy.Integer(int(rng.integers(-2, 3))) + sum(
        (int(rng.integers(-2, 3)) * z for z in jb.fibers), sympy.Integer(0)) for y in jb.fibers}
    generators = {"affine": GeneratorFamily("affine", base, fiber, (), "random affine generator")}
    return Theory(f"random_polynomial_{seed}", spec, canonicalize(L), generators,
                  description="random polynomial Lagrangian")


# =================== Expected closed forms ===================

def expected_momentum_map(jb: JetBundle, chart, base_components, fiber_terms,
                          momenta=None, hamiltonian=None) -> DiffForm:
    """
    A momentum map written termwise:
    (p_A^mu xi^A + p xi^mu) d^n x_mu - p_A^mu xi^nu dy^A ^ d^{n-1} x_{mu nu}.
    """
    mom = momenta or (lambda A, mu: jb.momentum(A, mu))
    ham = jb.hamiltonian if hamiltonian is None else hamiltonian
    form = DiffForm.zero(chart, jb.n1 - 1)
    for mu in range(jb.n1):
        coeff = ham * base_components[mu]
        for A, xiA in fiber_terms.items():
            if A in jb.variational:
                coeff += mom(A, mu) * xiA
        form = form + base_hodge(chart, mu).scale(coeff)
    if jb.n1 >= 2:
        for A in jb.variational:
            for mu, nu in product(range(jb.n1), repeat=2):
                if mu != nu and base_components[nu] != 0:
                    form = form - wedge(coordinate_form(chart, A),
                                        base_hodge2(chart, mu, nu)).scale(
                        mom(A, mu) * base_components[nu])
    return form


def _maxwell_expected(theory: Theory) -> Dict[str, ExpectedObject]:
    jb = jet_bundle(theory.bundle)
    g, ginv, sq = jb.metric_matrices()
    F = field_strength(jb)
    Fup = raise_both(ginv, F)
    A = [jb.field("A", nu) for nu in range(4)]
    chart = jb.J1Y
    out: Dict[str, ExpectedObject] = {}
    out["multimomenta"] = ExpectedObject(
        {jb.momentum(A[nu], mu): canonicalize(sq * Fup[nu, mu])
         for nu in range(4) for mu in range(4)},
        "p_{A_nu}^mu = sqrt|g| F^{nu mu}")
    out["covariant_hamiltonian"] = ExpectedObject(
        canonicalize(sympy.Rational(1, 4) * contract(F, Fup) * sq),
        "p = 1/4 F_{mu nu} F^{mu nu} sqrt|g|")
    cartan = volume_form(chart).scale(sympy.Rational(1, 4) * contract(F, Fup) * sq)
    for nu, mu in product(range(4), repeat=2):
        cartan = cartan + wedge(coordinate_form(chart, A[nu]),
                                base_hodge(chart, mu)).scale(sq * Fup[nu, mu])
    out["cartan_form"] = ExpectedObject(cartan, "sqrt|g| F^{nu mu} dA_nu ^ d^3x_mu + p d^4x")
    gauge_terms = {A[nu]: SYMBOLS.jet_parameter("chi", nu) for nu in range(4)}
    out["momentum_map:gauge"] = ExpectedObject(
        expected_momentum_map(jb, jb.Z, _zero_base(jb), gauge_terms),
        "F^{nu mu} chi_{,nu} d^3x_mu on Z")
    out["noether_current:gauge"] = ExpectedObject(
        [canonicalize(sum((sq * Fup[nu, mu] * SYMBOLS.jet_parameter("chi", nu)
                           for nu in range(4)), sympy.Integer(0))) for mu in range(4)],
        "(A^{mu,nu} - A^{nu,mu}) sqrt|g| chi_{,nu}")
    out["variation:gauge"] = ExpectedObject(sympy.Integer(0), "gauge invariance")
    out["legendre_equivariant:gauge"] = ExpectedObject(True, "gauge-invariant Lagrangian")
    out["cartan_invariant:gauge"] = ExpectedObject(True, "gauge-invariant Lagrangian")
    out["vertical_transitivity"] = ExpectedObject(True, "the gauge group is vertically transitive")
    out["converse_forces_all:gauge"] = ExpectedObject(True, "conservation forces Maxwell's equations")

    if theory.metric_kind == MetricKind.FIXED:
        el = {}
        for nu in range(4):
            e = sympy.Integer(0)
            for mu, a, b in product(range(4), repeat=3):
                w_nu = jb.second_velocity(A[a], b, mu)
                e += ginv[nu, a] * ginv[mu, b] * w_nu - ginv[mu, a] * ginv[nu, b] * w_nu
            el[A[nu]] = canonicalize(e)
        out["euler_lagrange"] = ExpectedObject(el, "∂_mu(A^{nu,mu} - A^{mu,nu})")
        omega = DiffForm.zero(chart, 5)
        for nu, mu, r, s in product(range(4), repeat=4):
            coeff = ginv[nu, s] * ginv[mu, r] - ginv[nu, r] * ginv[mu, s]
            if coeff != 0:
                omega = omega + wedge(wedge(coordinate_form(chart, A[nu]),
                                            coordinate_form(chart, jb.velocity(A[r], s))),
                                      base_hodge(chart, mu)).scale(coeff)
        for mu, nu in product(range(4), repeat=2):
            omega = omega - wedge(coordinate_form(chart, jb.velocity(A[nu], mu)),
                                  volume_form(chart)).scale(Fup[mu, nu])
        out["omega_L"] = ExpectedObject(omega, "Omega_L at fixed Minkowski metric")
    else:
        out["euler_lagrange"] = ExpectedObject(
            covariant_maxwell_divergence(jb), "-sqrt|g| ∇_mu F^{nu mu}, compared numerically")
        stress = {}
        F2 = contract(F, Fup)
        for s, r in product(range(4), repeat=2):
            T = sympy.Rational(1, 4) * ginv[s, r] * F2
            for a, b in product(range(4), repeat=2):
                T += ginv[r, b] * Fup[a, s] * F[b, a]
            stress[(s, r)] = canonicalize(-T * sq)
        out["stress_energy"] = ExpectedObject(
            stress, "-(1/4 g^{sr} F_ab F^ab + g^{rb} F^{as} F_ba) sqrt|g|")
        xi = _xi_base(jb)
        terms = {A[nu]: SYMBOLS.jet_parameter("chi", nu) - sum(
            (A[t] * SYMBOLS.jet_parameter(f"xi{t}", nu) for t in range(4)), sympy.Integer(0))
            for nu in range(4)}
        out["momentum_map:diffeo_gauge"] = ExpectedObject(
            expected_momentum_map(jb, jb.Z, xi, terms),
            "(F^{nu mu}(chi_{,nu} - A_t xi^t_{,nu}) + p xi^mu) d^3x_mu - F^{nu mu} xi^s dA_nu ^ d^2x_{mu s}")
        out["variation:diffeo_gauge"] = ExpectedObject(sympy.Integer(0),
                                                       "parametrized electromagnetism is covariant")
        out["vertical_transitivity"] = ExpectedObject(True, "gauge and metric directions are spanned")
    return out


def covariant_maxwell_divergence(jb: JetBundle) -> Dict[sympy.Symbol, Expr]:
    """
    -sqrt|g| ∇_mu F^{nu mu} assembled from background jets of g.

    ∂g^{ab} = -g^{ac} ∂g_cd g^{db}; Christoffels from ∂g_ab.
    """
    n = jb.n1
    g, ginv, sq = jb.metric_matrices()
    grp = jb.metric_group

    def dg(a, b, lam):
        return jb.background_jet(grp.g(a, b), lam)

    def dginv(a, b, lam):
        return -sum((ginv[a, c] * dg(c, d, lam) * ginv[d, b]
                     for c in range(n) for d in range(n)), sympy.Integer(0))

    A = [jb.field("A", nu) for nu in range(n)]
    F = field_strength(jb)

    def dF(a, b, lam):
        return jb.second_velocity(A[b], a, lam) - jb.second_velocity(A[a], b, lam)

    def christoffel(a, b, c):
        return sympy.Rational(1, 2) * sum(
            (ginv[a, k] * (dg(k, c, b) + dg(k, b, c) - dg(b, c, k)) for k in range(n)),
            sympy.Integer(0))

    Fup = raise_both(ginv, F)
    out = {}
    for nu in range(n):
        div = sympy.Integer(0)
        for mu in range(n):
            for a, b in product(range(n), repeat=2):
                div += dginv(nu, a, mu) * ginv[mu, b] * F[a, b]
                div += ginv[nu, a] * dginv(mu, b, mu) * F[a, b]
                div += ginv[nu, a] * ginv[mu, b] * dF(a, b, mu)
            for lam in range(n):
                div += christoffel(nu, mu, lam) * Fup[lam, mu]
                div += christoffel(mu, mu, lam) * Fup[nu, lam]
        out[A[nu]] = -sq * div
    return out


def _chern_simons_expected(theory: Theory) -> Dict[str, ExpectedObject]:
    jb = jet_bundle(theory.bundle)
    A = [jb.field("A", nu) for nu in range(3)]
    F = field_strength(jb)
    chart = jb.J1Y
    eps = levi_civita
    out: Dict[str, ExpectedObject] = {}
    out["multimomenta"] = ExpectedObject(
        {jb.momentum(A[nu], mu): sum((eps(mu, nu, s) * A[s] for s in range(3)), sympy.Integer(0))
         for nu in range(3) for mu in range(3)},
        "p^{nu mu} = eps^{mu nu s} A_s")
    out["covariant_hamiltonian"] = ExpectedObject(sympy.Integer(0), "p = 0")
    cartan = DiffForm.zero(chart, 3)
    omega = DiffForm.zero(chart, 4)
    for mu, nu, s in permutations(range(3)):
        e = eps(mu, nu, s)
        cartan = cartan + wedge(coordinate_form(chart, A[nu]), base_hodge(chart, mu)).scale(e * A[s])
        omega = omega - wedge(wedge(coordinate_form(chart, A[s]), coordinate_form(chart, A[nu])),
                              base_hodge(chart, mu)).scale(e)
    out["cartan_form"] = ExpectedObject(cartan, "eps^{mu nu s} A_s dA_nu ^ d^2x_mu")
    out["omega_L"] = ExpectedObject(omega, "-eps^{mu nu s} dA_s ^ dA_nu ^ d^2x_mu")
    out["euler_lagrange"] = ExpectedObject(
        {A[nu]: canonicalize(sum((eps(a, b, nu) * F[a, b] for a, b in product(range(3), repeat=2)),
                                 sympy.Integer(0))) for nu in range(3)},
        "eps^{a b nu} F_ab: flat connection")
    chi = [SYMBOLS.jet_parameter("chi", s) for s in range(3)]
    xi = _xi_base(jb)
    dxi = lambda t, nu: SYMBOLS.jet_parameter(f"xi{t}", nu)  # noqa: E731
    half_eps_F = lambda s: sympy.Rational(1, 2) * sum(  # noqa: E731
        (eps(a, b, s) * F[a, b] for a, b in product(range(3), repeat=2)), sympy.Integer(0))
    out["variation:diffeo_gauge"] = ExpectedObject(
        canonicalize(sum((half_eps_F(s) * chi[s] for s in range(3)), sympy.Integer(0))),
        "1/2 eps^{mu nu s} F_{mu nu} chi_{,s}")
    out["variation:diffeo"] = ExpectedObject(sympy.Integer(0), "diffeomorphism invariance")
    current = []
    for mu in range(3):
        j = sympy.Integer(0)
        for nu, s in product(range(3), repeat=2):
            inner = chi[nu] - sum((A[t] * dxi(t, nu) + jb.velocity(A[nu], t) * xi[t]
                                   for t in range(3)), sympy.Integer(0))
            j += eps(mu, nu, s) * inner * A[s]
        for s in range(3):
            j += half_eps_F(s) * xi[mu] * A[s]
        current.append(canonicalize(j))
    out["noether_current:diffeo_gauge"] = ExpectedObject(
        current, "(eps^{mu nu s}(chi_{,nu} - A_t xi^t_{,nu} - A_{nu,t} xi^t) + 1/2 eps F xi^mu) A_s")
    terms = {A[nu]: chi[nu] - sum((A[t] * dxi(t, nu) for t in range(3)), sympy.Integer(0))
             for nu in range(3)}
    out["momentum_map:diffeo_gauge"] = ExpectedObject(
        expected_momentum_map(jb, jb.Z, xi, terms),
        "(p^{nu mu}(chi_{,nu} - A_t xi^t_{,nu}) + p xi^mu) d^2x_mu - p^{nu mu} xi^s dA_nu ^ dx_{mu s}")
    out["legendre_equivariant:gauge"] = ExpectedObject(False, "the Legendre transformation is not equivariant")
    out["cartan_invariant:gauge"] = ExpectedObject(False, "the Cartan form is not invariant")
    out["legendre_equivariant:diffeo"] = ExpectedObject(True, "diffeomorphisms act equivariantly")
    out["vertical_transitivity"] = ExpectedObject(True, "gauge directions span the fiber")
    out["converse_forces_all:gauge"] = ExpectedObject(True, "conservation forces flatness")
    return out


def _polyakov_expected(theory: Theory) -> Dict[str, ExpectedObject]:
    jb = jet_bundle(theory.bundle)
    label = next(iter(jb.targets))
    d = jb.targets[label].dim
    _, hinv, sq = jb.metric_matrices()
    phis = [jb.field("phi", a) for a in range(d)]
    hs = {(s, r): jb.field("h", s, r) for s in range(2) for r in range(s, 2)}
    G = _target_matrix(jb, label)

    def dG(a, b, c):
        return SYMBOLS.target_derivative(label, a, b, c)

    def v(a, mu):
        return jb.velocity(phis[a], mu)

    def gvv(mu, nu):
        return sum((G[a, b] * v(a, mu) * v(b, nu) for a in range(d) for b in range(d)),
                   sympy.Integer(0))

    out: Dict[str, ExpectedObject] = {}
    momenta = {}
    for a, mu in product(range(d), range(2)):
        momenta[jb.momentum(phis[a], mu)] = canonicalize(-sq * sum(
            (hinv[mu, nu] * G[a, b] * v(b, nu) for nu in range(2) for b in range(d)),
            sympy.Integer(0)))
    for key, h in hs.items():
        for mu in range(2):
            momenta[jb.momentum(h, mu)] = sympy.Integer(0)
    out["multimomenta"] = ExpectedObject(momenta, "p_A^mu = -sqrt|h| h^{mu nu} G_AB v^B_nu, q = 0")
    trace = sum((hinv[m, n] * gvv(m, n) for m in range(2) for n in range(2)), sympy.Integer(0))
    out["covariant_hamiltonian"] = ExpectedObject(
        canonicalize(sympy.Rational(1, 2) * sq * trace), "p = 1/2 sqrt|h| h^{mu nu} G v v")

    el = {}
    for (s, r), h in hs.items():
        factor = sympy.Integer(1) if s == r else sympy.Integer(2)
        inner = sympy.Rational(1, 2) * hinv[s, r] * trace - sum(
            (hinv[s, m] * hinv[r, n] * gvv(m, n) for m in range(2) for n in range(2)),
            sympy.Integer(0))
        el[h] = canonicalize(-sympy.Rational(1, 2) * factor * sq * inner)
    for A in range(d):
        e = sympy.Integer(0)
        for mu, nu in product(range(2), repeat=2):
            for b, c in product(range(d), repeat=2):
                e -= sympy.Rational(1, 2) * sq * hinv[mu, nu] * dG(b, c, A) * v(b, mu) * v(c, nu)
            for b in range(d):
                Gv = G[A, b] * v(b, nu)
                for (s, r), h in hs.items():
                    weight = sympy.Rational(1, 2) if s == r else sympy.Integer(1)
                    dens = weight * sq * (hinv[s, r] * hinv[mu, nu]
                                          - hinv[mu, s] * hinv[r, nu] - hinv[mu, r] * hinv[s, nu])
                    e += dens * jb.velocity(h, mu) * Gv
                for c in range(d):
                    e += sq * hinv[mu, nu] * dG(A, b, c) * v(c, mu) * v(b, nu)
                e += sq * hinv[mu, nu] * G[A, b] * jb.second_velocity(phis[b], nu, mu)
        el[phis[A]] = canonicalize(e)
    out["euler_lagrange"] = ExpectedObject(el, "harmonic-map equation and the conformal equation")
    out["variation:diffeo_conformal"] = ExpectedObject(sympy.Integer(0),
                                                       "the string action is diffeomorphism and Weyl invariant")
    out["vertical_transitivity"] = ExpectedObject(False, "no generator moves phi")
    out["converse_forces_all:diffeo_conformal"] = ExpectedObject(
        False, "only δL/δh and the contracted equation (δL/δphi^A) phi^A_{,nu} are forced")
    for name in ("diffeo", "conformal", "diffeo_conformal"):
        out[f"on_shell_unsolvable:{name}"] = ExpectedObject(
            True, "the conformal equation is a quadratic constraint on the velocities")
    return out


def _relativistic_expected(theory: Theory) -> Dict[str, ExpectedObject]:
    jb = jet_bundle(theory.bundle)
    m = SYMBOLS.parameter("m")
    qs = list(jb.fibers)
    v = [jb.velocity(q, 0) for q in qs]
    w = [jb.second_velocity(q, 0, 0) for q in qs]
    curved = bool(jb.targets)
    G = _target_matrix(jb, "M") if curved else sympy.diag(*minkowski_signature(4))
    X = canonicalize(-sum((G[a, b] * v[a] * v[b] for a in range(4) for b in range(4)),
                          sympy.Integer(0)))
    s = sympy.sqrt(X)
    out: Dict[str, ExpectedObject] = {}
    out["multimomenta"] = ExpectedObject(
        {jb.momentum(qs[a], 0): m * sum((G[a, b] * v[b] for b in range(4)), sympy.Integer(0)) / s
         for a in range(4)},
        "p_A = m g_AB v^B / |v|")
    out["covariant_hamiltonian"] = ExpectedObject(sympy.Integer(0), "p = 0")
    el = {}
    if curved:
        dG = lambda a, b, c: SYMBOLS.target_derivative("M", a, b, c)  # noqa: E731
        dX = -sum((dG(b, c, e) * v[e] * v[b] * v[c] for b, c, e in product(range(4), repeat=3)),
                  sympy.Integer(0)) - 2 * sum((G[b, c] * w[b] * v[c]
                                               for b, c in product(range(4), repeat=2)),
                                              sympy.Integer(0))
        for a in range(4):
            e = m * sum((dG(b, c, a) * v[b] * v[c] for b, c in product(range(4), repeat=2)),
                        sympy.Integer(0)) / (2 * s)
            e -= m * sum((dG(a, b, c) * v[c] * v[b] for b, c in product(range(4), repeat=2)),
                         sympy.Integer(0)) / s
            e -= m * sum((G[a, b] * w[b] for b in range(4)), sympy.Integer(0)) / s
            e += m * sum((G[a, b] * v[b] for b in range(4)), sympy.Integer(0)) * dX / (2 * s ** 3)
            el[qs[a]] = e
    else:
        vw = sum((G[c, e] * v[c] * w[e] for c, e in product(range(4), repeat=2)), sympy.Integer(0))
        for a in range(4):
            el[qs[a]] = (-m * sum((G[a, b] * w[b] for b in range(4)), sympy.Integer(0)) / s
                         - m * sum((G[a, b] * v[b] for b in range(4)), sympy.Integer(0)) * vw / s ** 3)
    out["euler_lagrange"] = ExpectedObject(el, "geodesic equations")
    out["variation:reparametrization"] = ExpectedObject(sympy.Integer(0),
                                                        "reparametrization invariance")
    out["lagrangian_momentum_map:reparametrization"] = ExpectedObject(
        DiffForm.zero(jb.J1Y, 0), "the momentum map vanishes on the Legendre image")
    out["vertical_transitivity"] = ExpectedObject(False, "reparametrizations have no fiber part")
    return out


# =================== Catalog ===================

CatalogBuilder = Callable[[], Theory]

CATALOG_BUILDERS: Dict[str, Tuple[CatalogBuilder, Callable[[Theory], Dict[str, ExpectedObject]]]] = {
    "relativistic_particle": (make_relativistic_particle, _relativistic_expected),
    "maxwell": (lambda: make_maxwell(True), _maxwell_expected),
    "maxwell_parametric": (lambda: make_maxwell(False), _maxwell_expected),
    "chern_simons": (make_chern_simons, _chern_simons_expected),
    "polyakov": (make_polyakov_string, _polyakov_expected),
}


@lru_cache(maxsize=None)
def catalog_entry(entry_id: str) -> CatalogEntry:
    """Build (once) the catalog entry with its expected objects."""
    try:
        builder, expected = CATALOG_BUILDERS[entry_id]
    except KeyError:
        raise KeyError(f"no catalog entry {entry_id!r}") from None
    theory = builder()
    logger.debug("built catalog entry %s", entry_id)
    return CatalogEntry(entry_id, theory, expected(theory))


def catalog_ids() -> List[str]:
    return list(CATALOG_BUILDERS)


def expected_for(theory_name: str) -> Optional[Dict[str, ExpectedObject]]:
    """Expected objects for a theory whose name is a catalog id."""
    if theory_name not in CATALOG_BUILDERS:
        return None
    return catalog_entry(theory_name).expected
