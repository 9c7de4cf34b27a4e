"""
Check suites - named invariant checks run by `multiphase.py check`.

Suites:
- forms: canonical forms on Z, section identities, Cartan-form routes
- legendre: Legendre transform, Euler-Lagrange expressions, section identities
- noether: momentum maps, Noether currents, divergence identity, on-shell
  conservation, converse extraction
- bracket: momentum-map brackets, equivariance, Legendre equivariance
- transitivity: vertical transitivity and the parametric stress-energy

Theories whose name is a catalog id are also compared against the catalog's
closed forms, so a theory file that drifts from the catalog fails by name.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np
import sympy

from .constants import SUITES
from .geometry import (
    DiffForm,
    VectorField,
    exterior_d,
    form_is_zero,
    forms_equal,
    interior,
    lie_derivative,
)
from .jets import (
    JetBundle,
    canonical_omega,
    canonical_omega_closed_form,
    canonical_theta,
    dual_pairing,
    jet_bundle,
    pairing_via_pullback,
    section_of_Z,
    section_pairing_identity,
    verticality_condition,
)
from .models import ExpectedObject, GeneratorFamily, MetricKind, Section, Theory
from .numverify import SamplePlan, verify_identity
from .symcore import (
    MultiphaseError,
    NegativeRadicand,
    NumericFunction,
    SingularPoint,
    equal,
    sample_assignment,
)
from .symmetry import (
    cartan_invariance_check,
    converse_extraction,
    covariant_momentum_map,
    current_density,
    equivariance_infinitesimal,
    lagrangian_momentum_map,
    lagrangian_momentum_map_via_contraction,
    lagrangian_momentum_map_via_pullback,
    legendre_equivariance_check,
    lifted_generator,
    momentum_bracket,
    momentum_map_via_theta,
    noether_current,
    noether_current_via_pullback,
    noether_divergence_identity,
    on_shell_conservation,
    stress_energy_from_parametric_metric,
    variation_of_L,
    vertical_transitivity,
)
from .theories import expected_for
from .variational import (
    cartan_form,
    cartan_form_via_contact,
    cartan_form_via_legendre,
    el_residual_contraction,
    el_via_cartan,
    euler_lagrange,
    lagrangian_reconstruction,
    legendre,
    vertical_contraction_check,
    omega_L,
    omega_L_via_legendre,
)

logger = logging.getLogger(__name__)

# Sections and fields drawn per identity; the forms suite draws plan.n_samples sections of Z
SECTION_DRAWS = 2
TRANSITIVITY_SEEDS = 3


@dataclass
class CheckResult:
    """
    One named check.

    Attributes:
        suite: Suite the check belongs to
        name: What was checked, in words
        passed: Outcome
        detail: Short explanation (first mismatch, witness point, verdict)
    """
    suite: str
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    """Results of every requested suite, in suite order."""
    theory: str
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def by_suite(self, suite: str) -> List[CheckResult]:
        return [r for r in self.results if r.suite == suite]


# =================== Helpers ===================

def _kw(plan: SamplePlan) -> Dict[str, object]:
    return {"n_samples": plan.n_samples, "tol": plan.tol, "seed": plan.seed}


def _agree(actual, expected, context: str, plan: SamplePlan) -> Optional[str]:
    """None when actual matches expected, otherwise the first mismatch."""
    if isinstance(expected, DiffForm):
        return None if forms_equal(actual, expected, context=context, **_kw(plan)) else "forms differ"
    if isinstance(expected, dict):
        for key in expected:
            if key not in actual:
                return f"missing {key}"
            if not equal(actual[key], expected[key], context=context, **_kw(plan)):
                return f"mismatch at {key}"
        return None
    if isinstance(expected, (list, tuple)):
        if len(actual) != len(expected):
            return "length differs"
        for i, (a, e) in enumerate(zip(actual, expected)):
            if not equal(a, e, context=context, **_kw(plan)):
                return f"mismatch at component {i}"
        return None
    if isinstance(expected, bool):
        return None if bool(actual) == expected else f"got {actual}, expected {expected}"
    return None if equal(actual, expected, context=context, **_kw(plan)) else "expressions differ"


def _record(suite: str, name: str, mismatch: Optional[str], ok_detail: str = "") -> CheckResult:
    result = CheckResult(suite, name, mismatch is None, ok_detail if mismatch is None else mismatch)
    if not result.passed:
        logger.warning("check failed: [%s] %s: %s", suite, name, result.detail)
    return result


def _guarded(suite: str, name: str, fn: Callable[[], Optional[str]], ok_detail: str = "") -> CheckResult:
    try:
        return _record(suite, name, fn(), ok_detail)
    except (MultiphaseError, ValueError, NotImplementedError) as exc:
        return _record(suite, name, f"error: {exc}")


def random_polynomial(base: Sequence[sympy.Symbol], rng: np.random.Generator,
                      degree: int = 2) -> sympy.Expr:
    """Integer-coefficient polynomial of the given degree in the base coordinates."""
    e = sympy.Integer(int(rng.integers(-3, 4)))
    for x in base:
        for k in range(1, degree + 1):
            e += int(rng.integers(-3, 4)) * x ** k
    if len(base) >= 2:
        e += int(rng.integers(-3, 4)) * base[0] * base[1]
    return e


def random_section(jb: JetBundle, rng: np.random.Generator) -> Section:
    """Polynomial values for the variational fibers; parametric fibers stay constant."""
    return Section({y: random_polynomial(jb.base, rng) for y in jb.variational})


def _vertical_field(jb: JetBundle, rng: np.random.Generator) -> VectorField:
    return VectorField.build(jb.Y, {y: sympy.Integer(int(rng.integers(1, 4)))
                                    for y in jb.variational})


def numeric_witness(exprs: Iterable, plan: SamplePlan) -> Optional[str]:
    """A sample point where one of the expressions is clearly nonzero."""
    rng = plan.rng()
    for e in exprs:
        e = sympy.sympify(e)
        if e == 0:
            continue
        try:
            f = NumericFunction(e)
        except MultiphaseError:
            continue
        for _ in range(plan.n_samples):
            point = sample_assignment(f.symbols, rng)
            try:
                value = f(point)
            except (NegativeRadicand, SingularPoint):
                continue
            if abs(value) > max(plan.tol, 1e-6):
                return f"residual {value:.3e} at a sample point"
    return None


def _expected(theory: Theory, key: str) -> Optional[ExpectedObject]:
    table = expected_for(theory.name)
    if table is None:
        return None
    return table.get(key)


# =================== Suites ===================

def check_forms(theory: Theory, plan: SamplePlan) -> List[CheckResult]:
    suite = "forms"
    jb = jet_bundle(theory.bundle)
    rng = plan.rng()
    out = [_guarded(suite, "Omega equals -dTheta termwise", lambda: None if forms_equal(
        canonical_omega(jb), canonical_omega_closed_form(jb), context="Omega = -dTheta",
        **_kw(plan)) else "forms differ")]

    def sections_of_Z() -> Optional[str]:
        for k in range(plan.n_samples):
            comps = {c: random_polynomial(jb.base, rng, degree=1) for c in jb.Z.coords[jb.n1:]
                     if c not in jb.parametric}
            lhs, rhs = section_pairing_identity(jb, section_of_Z(jb, comps))
            if not equal(lhs, rhs, context="sigma^* Theta = phi^* sigma", **_kw(plan)):
                return f"section {k} violates sigma^* Theta = phi^* sigma"
        return None

    out.append(_guarded(suite, "sections of Z pull Theta back to the pairing", sections_of_Z,
                        f"{plan.n_samples} polynomial sections"))

    def pairing() -> Optional[str]:
        z = {c: sympy.Integer(int(rng.integers(-3, 4))) for c in jb.Z.coords[jb.Y.dim:]}
        gamma = {v: sympy.Integer(int(rng.integers(-3, 4)))
                 for A in jb.variational for v in (jb.velocity(A, mu) for mu in range(jb.n1))}
        a, b = dual_pairing(jb, z, gamma), pairing_via_pullback(jb, z, gamma)
        return None if equal(a, b, context="dual pairing") else "pairing routes disagree"

    out.append(_guarded(suite, "dual pairing equals the pulled-back n+1 form", pairing))

    def vertical() -> Optional[str]:
        fibers = jb.Z.coords[jb.n1:]
        v = VectorField.build(jb.Z, {c: sympy.Integer(int(rng.integers(-2, 3))) for c in fibers})
        w = VectorField.build(jb.Z, {c: sympy.Integer(int(rng.integers(-2, 3))) for c in fibers})
        return None if form_is_zero(verticality_condition(jb, v, w)) else "i_v i_w Theta is not zero"

    out.append(_guarded(suite, "Theta vanishes on pairs of vertical fields", vertical))

    def cartan_routes() -> Optional[str]:
        direct = cartan_form(theory)
        if not forms_equal(direct, cartan_form_via_legendre(theory), context="Cartan form", **_kw(plan)):
            return "FL^* Theta differs from the direct formula"
        if not forms_equal(direct, cartan_form_via_contact(theory), context="Cartan form", **_kw(plan)):
            return "contact-form route differs from the direct formula"
        return None

    out.append(_guarded(suite, "Cartan form agrees across three constructions", cartan_routes))
    out.append(_guarded(suite, "Omega_L equals FL^* Omega", lambda: None if forms_equal(
        omega_L(theory), omega_L_via_legendre(theory), context="Omega_L", **_kw(plan))
        else "forms differ"))

    def reconstruction() -> Optional[str]:
        for _ in range(SECTION_DRAWS):
            lhs, rhs = lagrangian_reconstruction(theory, random_section(jb, rng))
            if not equal(lhs, rhs, context="Lagrangian reconstruction", **_kw(plan)):
                return "(j^1 phi)^* Theta_L differs from L(j^1 phi)"
        return None

    out.append(_guarded(suite, "Cartan form reconstructs the Lagrangian on sections", reconstruction))
    for key, label in (("cartan_form", "Cartan form matches the catalog"),
                       ("omega_L", "Omega_L matches the catalog")):
        exp = _expected(theory, key)
        if exp is not None:
            build = cartan_form if key == "cartan_form" else omega_L
            out.append(_guarded(suite, label, lambda e=exp, b=build: _agree(b(theory), e.value, key, plan),
                                exp.note))
    return out


def check_legendre(theory: Theory, plan: SamplePlan) -> List[CheckResult]:
    suite = "legendre"
    jb = jet_bundle(theory.bundle)
    rng = plan.rng()
    out: List[CheckResult] = []
    leg = legendre(theory)
    for key, actual, label in (
            ("multimomenta", lambda: leg.momenta, "multimomenta match the catalog"),
            ("covariant_hamiltonian", lambda: leg.hamiltonian, "covariant Hamiltonian matches the catalog"),
            ("euler_lagrange", lambda: euler_lagrange(theory), "Euler-Lagrange expressions match the catalog")):
        exp = _expected(theory, key)
        if exp is not None:
            out.append(_guarded(suite, label, lambda e=exp, a=actual, k=key: _agree(a(), e.value, k, plan),
                                exp.note))

    def el_through_omega() -> Optional[str]:
        for _ in range(SECTION_DRAWS):
            phi = random_section(jb, rng)
            V = _vertical_field(jb, rng)
            if not equal(el_via_cartan(theory, phi, V), el_residual_contraction(theory, phi, V),
                         context="Euler-Lagrange through Omega_L", **_kw(plan)):
                return "(j^1 phi)^*(j^1 V ⨼ Omega_L) differs from -V^A E_A"
        return None

    out.append(_guarded(suite, "Euler-Lagrange equations through Omega_L", el_through_omega))

    def vertical_contraction() -> Optional[str]:
        phi = random_section(jb, rng)
        for A in jb.variational:
            W = VectorField.build(jb.J1Y, {jb.velocity(A, 0): sympy.Integer(1)})
            if not equal(vertical_contraction_check(theory, phi, W), 0, context="vertical contraction", **_kw(plan)):
                return f"W ⨼ Omega_L does not vanish for W = ∂/∂{jb.velocity(A, 0)}"
        return None

    out.append(_guarded(suite, "fields vertical over Y contract Omega_L to zero on sections",
                        vertical_contraction))
    return out


def _noether_for(theory: Theory, g: GeneratorFamily, plan: SamplePlan) -> List[CheckResult]:
    suite = "noether"
    jb = jet_bundle(theory.bundle)
    rng = plan.rng()
    tag = f" ({g.name})"
    out: List[CheckResult] = []

    def identity() -> Optional[str]:
        ident = noether_divergence_identity(theory, g)
        return None if ident.holds() else "D_mu j^mu differs from E_A (£ phi)^A + δL"

    out.append(_guarded(suite, "noether divergence identity" + tag, identity))
    exp = _expected(theory, f"noether_current:{g.name}")
    if exp is not None:
        def catalog_identity(density=exp.value) -> Optional[str]:
            ident = noether_divergence_identity(theory, g, list(density))
            return None if ident.holds() else \
                "D_mu j^mu of the catalog current differs from E_A (£ phi)^A + δL"

        out.append(_guarded(suite, "noether divergence identity for the catalog current" + tag,
                            catalog_identity, exp.note))

    def dJ() -> Optional[str]:
        J = covariant_momentum_map(theory, g)
        rhs = interior(lifted_generator(theory, g), canonical_omega(jb))
        return None if forms_equal(exterior_d(J), rhs, context="dJ = xi_Z ⨼ Omega", **_kw(plan)) \
            else "dJ differs from xi_Z ⨼ Omega"

    out.append(_guarded(suite, "momentum map satisfies dJ = xi_Z ⨼ Omega" + tag, dJ))
    out.append(_guarded(suite, "momentum map equals xi_Z ⨼ Theta" + tag, lambda: None if forms_equal(
        covariant_momentum_map(theory, g), momentum_map_via_theta(theory, g),
        context="J = xi_Z ⨼ Theta", **_kw(plan)) else "forms differ"))
    out.append(_guarded(suite, "lifted generator preserves Theta" + tag, lambda: None if form_is_zero(
        lie_derivative(lifted_generator(theory, g), canonical_theta(jb)), context="£ Theta")
        else "£_{xi_Z} Theta is not zero"))

    def lagrangian_routes() -> Optional[str]:
        direct = lagrangian_momentum_map(theory, g)
        if not forms_equal(direct, lagrangian_momentum_map_via_pullback(theory, g),
                           context="J^L", **_kw(plan)):
            return "FL^* J differs from the direct formula"
        if not forms_equal(direct, lagrangian_momentum_map_via_contraction(theory, g),
                           context="J^L", **_kw(plan)):
            return "xi ⨼ Theta_L differs from the direct formula"
        return None

    out.append(_guarded(suite, "Lagrangian momentum map agrees across three constructions" + tag,
                        lagrangian_routes))

    def current_routes() -> Optional[str]:
        phi = random_section(jb, rng)
        return None if forms_equal(noether_current(theory, g, phi),
                                   noether_current_via_pullback(theory, g, phi),
                                   context="Noether current", **_kw(plan)) \
            else "(j^1 phi)^* J^L differs from the current density"

    out.append(_guarded(suite, "Noether current equals the pulled-back momentum map" + tag,
                        current_routes))
    for key, actual, label in (
            (f"momentum_map:{g.name}", lambda: covariant_momentum_map(theory, g),
             "momentum map matches the catalog"),
            (f"noether_current:{g.name}", lambda: current_density(theory, g),
             "Noether current matches the catalog"),
            (f"variation:{g.name}", lambda: variation_of_L(theory, g),
             "variation of the Lagrangian matches the catalog"),
            (f"lagrangian_momentum_map:{g.name}",
             lambda: lagrangian_momentum_map(theory, g),
             "Lagrangian momentum map matches the catalog")):
        exp = _expected(theory, key)
        if exp is not None:
            out.append(_guarded(suite, label + tag,
                                lambda e=exp, a=actual, k=key: _agree(a(), e.value, k, plan), exp.note))

    unsolvable = _expected(theory, f"on_shell_unsolvable:{g.name}")

    def on_shell() -> Optional[str]:
        result = on_shell_conservation(theory, g)
        if result.residual is None:
            if unsolvable is not None and unsolvable.value:
                return None
            return "field equations could not be solved for jet symbols"
        if not equal(result.residual, 0, context="on-shell identity", **_kw(plan)):
            return "on-shell divergence differs from the on-shell source"
        if result.source == 0 or equal(result.source, 0, context="on-shell source", **_kw(plan)):
            if not (result.conserved
                    or verify_identity(result.divergence, 0, plan, name="on-shell divergence").passed):
                return "current is not conserved on shell"
        return None

    out.append(_guarded(suite, "divergence identity holds on shell" + tag, on_shell,
                        unsolvable.note if unsolvable is not None else ""))
    exp = _expected(theory, f"converse_forces_all:{g.name}")
    if exp is not None:
        out.append(_guarded(suite, "conservation law forces the field equations" + tag,
                            lambda: _agree(converse_extraction(theory, g, plan.seed).forces_all,
                                           exp.value, "converse", plan), exp.note))
    return out


def check_noether(theory: Theory, plan: SamplePlan,
                  generators: Optional[Sequence[str]] = None) -> List[CheckResult]:
    out: List[CheckResult] = []
    for name in generators or list(theory.generators):
        out.extend(_noether_for(theory, theory.generator(name), plan))
    return out


def check_bracket(theory: Theory, plan: SamplePlan,
                  generators: Optional[Sequence[str]] = None) -> List[CheckResult]:
    suite = "bracket"
    out: List[CheckResult] = []
    for name in generators or list(theory.generators):
        g = theory.generator(name)
        h = g.relabeled("b", jet_bundle(theory.bundle).base)
        tag = f" ({name})"
        out.append(_guarded(suite, "momentum bracket identity" + tag, lambda g=g, h=h: None if form_is_zero(
            momentum_bracket(theory, g, h).residual, context="momentum bracket", **_kw(plan))
            else "i_zeta i_xi Omega differs from d(i_xi i_zeta Theta) + J([xi, zeta])"))
        out.append(_guarded(suite, "infinitesimal equivariance of J" + tag, lambda g=g, h=h: None if form_is_zero(
            equivariance_infinitesimal(theory, g, h), context="equivariance", **_kw(plan))
            else "£_{zeta_Z} J(xi) differs from J([xi, zeta])"))
        for key, build, label in (
                (f"legendre_equivariant:{name}", lambda g=g: legendre_equivariance_check(theory, g).values(),
                 "Legendre transformation is equivariant"),
                (f"cartan_invariant:{name}", lambda g=g: cartan_invariance_check(theory, g).terms.values(),
                 "Cartan form is invariant")):
            exp = _expected(theory, key)
            if exp is None:
                continue
            out.append(_guarded(suite, label + tag,
                                lambda b=build, e=exp: _equivariance_verdict(list(b()), e.value, plan),
                                exp.note))
    return out


def _equivariance_verdict(residuals: List, expected: bool, plan: SamplePlan) -> Optional[str]:
    vanishes = all(equal(r, 0, context="equivariance residual", **_kw(plan)) for r in residuals)
    if expected:
        return None if vanishes else "residual does not vanish"
    if vanishes:
        return "expected a nonzero residual"
    witness = numeric_witness(residuals, plan)
    return None if witness else "no numeric witness for the nonzero residual"


def check_transitivity(theory: Theory, plan: SamplePlan) -> List[CheckResult]:
    suite = "transitivity"
    out: List[CheckResult] = []

    def verdicts() -> Optional[str]:
        results = [vertical_transitivity(theory, seed=plan.seed + k) for k in range(TRANSITIVITY_SEEDS)]
        if len({r.verdict for r in results}) != 1:
            return "verdict changes with the seed"
        exp = _expected(theory, "vertical_transitivity")
        if exp is not None and results[0].verdict != exp.value:
            return f"verdict {results[0].verdict}, expected {exp.value}"
        return None

    first = vertical_transitivity(theory, seed=plan.seed)
    detail = f"rank {first.rank} of {first.dim}"
    if first.witness and not first.verdict:
        detail += "; missed direction " + ", ".join(f"{k}={v:+.3f}" for k, v in sorted(first.witness.items()))
    out.append(_guarded(suite, "vertical transitivity verdict", verdicts, detail))
    if theory.metric_kind == MetricKind.PARAMETRIC:
        exp = _expected(theory, "stress_energy")
        if exp is not None:
            out.append(_guarded(suite, "stress-energy from the parametric metric matches the catalog",
                                lambda: _agree(stress_energy_from_parametric_metric(theory), exp.value,
                                               "stress-energy", plan), exp.note))
    return out


SUITE_RUNNERS: Dict[str, Callable[..., List[CheckResult]]] = {
    "forms": check_forms,
    "legendre": check_legendre,
    "noether": check_noether,
    "bracket": check_bracket,
    "transitivity": check_transitivity,
}


def run_suites(theory: Theory, suites: Sequence[str], plan: Optional[SamplePlan] = None,
               generators: Optional[Sequence[str]] = None) -> SuiteReport:
    """
    Run suites in the canonical order.

    Args:
        suites: Suite names, or ["all"]
        generators: Restrict the generator-based suites to these families

    Raises:
        ValueError: unknown suite name
        KeyError: unknown generator name
    """
    plan = plan or SamplePlan()
    names = list(SUITES) if "all" in suites else list(suites)
    unknown = [s for s in names if s not in SUITE_RUNNERS]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}")
    for name in generators or ():
        theory.generator(name)
    report = SuiteReport(theory.name)
    for suite in SUITES:
        if suite not in names:
            continue
        logger.info("running suite %s on %s", suite, theory.name)
        runner = SUITE_RUNNERS[suite]
        if suite in ("noether", "bracket"):
            results = runner(theory, plan, generators)
        else:
            results = runner(theory, plan)
        report.results.extend(results)
        failed = sum(1 for r in results if not r.passed)
        logger.info("suite %s finished: %d checks, %d failed", suite, len(results), failed)
    return report
