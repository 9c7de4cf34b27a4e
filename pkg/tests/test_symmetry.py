"""
Tests for symmetries, momentum maps and Noether currents

Tests cover:
- The divergence identity on catalog and random polynomial theories
- Variations of the Lagrangian under catalog generators
- Momentum maps on Z and J1Y by several constructions
- Algebra and momentum brackets
- Vertical transitivity, converse extraction and on-shell conservation
- Stress-energy from a parametric metric
"""
import dataclasses

import pytest
import sympy

from src.geometry import exterior_d, form_is_zero, forms_equal, interior
from src.jets import NotProjectable, canonical_omega, jet_bundle
from src.models import GeneratorFamily, Section
from src.symcore import SYMBOLS, DegenerateSample, equal, equal_symbolic, is_zero
from src.symmetry import (
    NoParametricMetric,
    algebra_bracket,
    cartan_invariance_check,
    converse_extraction,
    covariant_momentum_map,
    current_density,
    generator_on_Y,
    lagrangian_momentum_map,
    lagrangian_momentum_map_via_contraction,
    lagrangian_momentum_map_via_pullback,
    legendre_equivariance_check,
    lie_derivative_of_section,
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
from src.theories import catalog_entry, make_random_polynomial


class TestDivergenceIdentity:
    """Test D_mu j^mu = E_A (£ phi)^A + δL"""

    @pytest.mark.parametrize("seed", range(20))
    def test_random_polynomial(self, seed):
        theory = make_random_polynomial(seed)
        ident = noether_divergence_identity(theory, theory.generator("affine"))
        assert ident.residual == 0

    @pytest.mark.parametrize("name", ["translation", "reparametrization"])
    def test_generic_mechanics(self, mechanics, name):
        assert noether_divergence_identity(mechanics, mechanics.generator(name)).holds()

    @pytest.mark.parametrize("name", ["gauge", "diffeo", "diffeo_gauge"])
    def test_chern_simons(self, chern_simons, name):
        assert noether_divergence_identity(chern_simons, chern_simons.generator(name)).holds()

    def test_maxwell_gauge(self, maxwell):
        assert noether_divergence_identity(maxwell, maxwell.generator("gauge")).holds()

    def test_catalog_current(self, maxwell):
        density = catalog_entry("maxwell").expected["noether_current:gauge"].value
        assert noether_divergence_identity(maxwell, maxwell.generator("gauge"), density).holds()

    def test_rescaled_current_fails(self, maxwell):
        density = [2 * j for j in current_density(maxwell, maxwell.generator("gauge"))]
        assert not noether_divergence_identity(maxwell, maxwell.generator("gauge"), density).holds()

    def test_density_length(self, chern_simons):
        with pytest.raises(ValueError):
            noether_divergence_identity(chern_simons, chern_simons.generator("gauge"), [sympy.Integer(0)])


class TestVariation:
    """Test δ_xi L"""

    def test_maxwell_gauge_invariant(self, maxwell):
        assert variation_of_L(maxwell, maxwell.generator("gauge")) == 0

    def test_maxwell_translation_invariant(self, maxwell):
        assert variation_of_L(maxwell, maxwell.generator("translation")) == 0

    def test_chern_simons_diffeo_invariant(self, chern_simons):
        assert is_zero(variation_of_L(chern_simons, chern_simons.generator("diffeo")))

    def test_fiber_dependent_base_rejected(self, maxwell):
        jb = jet_bundle(maxwell.bundle)
        bad = GeneratorFamily("bad", (jb.field("A", 0), 0, 0, 0))
        with pytest.raises(NotProjectable):
            generator_on_Y(maxwell, bad)


class TestMomentumMaps:
    """Test J(xi) and J^L(xi)"""

    def test_theta_contraction(self, chern_simons):
        for g in chern_simons.generators.values():
            assert forms_equal(covariant_momentum_map(chern_simons, g),
                               momentum_map_via_theta(chern_simons, g))

    def test_exterior_derivative(self, chern_simons):
        """dJ = xi_Z ⨼ Omega"""
        jb = jet_bundle(chern_simons.bundle)
        g = chern_simons.generator("diffeo_gauge")
        rhs = interior(lifted_generator(chern_simons, g), canonical_omega(jb))
        assert forms_equal(exterior_d(covariant_momentum_map(chern_simons, g)), rhs)

    def test_maxwell_gauge_closed_form(self, maxwell):
        expected = catalog_entry("maxwell").expected["momentum_map:gauge"].value
        assert forms_equal(covariant_momentum_map(maxwell, maxwell.generator("gauge")), expected)

    def test_lagrangian_routes(self, chern_simons):
        g = chern_simons.generator("gauge")
        direct = lagrangian_momentum_map(chern_simons, g)
        assert forms_equal(direct, lagrangian_momentum_map_via_pullback(chern_simons, g))
        assert forms_equal(direct, lagrangian_momentum_map_via_contraction(chern_simons, g))

    def test_particle_reparametrization(self, relativistic_particle):
        """On a one-dimensional base J is a function"""
        g = relativistic_particle.generator("reparametrization")
        J = covariant_momentum_map(relativistic_particle, g)
        jb = jet_bundle(relativistic_particle.bundle)
        assert J.degree == 0
        assert equal_symbolic(J.coefficient(()), jb.hamiltonian * SYMBOLS.jet_parameter("chi"))


class TestNoetherCurrent:
    """Test current densities"""

    def test_maxwell_gauge_current(self, maxwell):
        expected = catalog_entry("maxwell").expected["noether_current:gauge"].value
        for j, e in zip(current_density(maxwell, maxwell.generator("gauge")), expected):
            assert equal_symbolic(j, e)

    def test_pullback_route(self, chern_simons):
        jb = jet_bundle(chern_simons.bundle)
        x0, x1, x2 = jb.base
        phi = Section({jb.field("A", 0): x1 ** 2, jb.field("A", 1): x0 * x2, jb.field("A", 2): x2 - x0})
        g = chern_simons.generator("diffeo_gauge")
        assert forms_equal(noether_current(chern_simons, g, phi),
                           noether_current_via_pullback(chern_simons, g, phi))

    def test_gauge_drift(self, maxwell):
        """£ phi of a gauge generator is -d chi"""
        jb = jet_bundle(maxwell.bundle)
        drift = lie_derivative_of_section(maxwell, Section({}), maxwell.generator("gauge"))
        for nu in range(4):
            assert drift[jb.field("A", nu)] == -SYMBOLS.jet_parameter("chi", nu)


class TestBrackets:
    """Test algebra and momentum brackets"""

    def test_gauge_transformations_commute(self, maxwell):
        jb = jet_bundle(maxwell.bundle)
        g = maxwell.generator("gauge")
        assert algebra_bracket(maxwell, g, g.relabeled("b", jb.base)).is_zero()

    def test_gauge_commutes_with_translation(self, maxwell):
        """The bracket is again a vertical direction"""
        bracket = algebra_bracket(maxwell, maxwell.generator("gauge"), maxwell.generator("translation"))
        jb = jet_bundle(maxwell.bundle)
        assert all(c == 0 for c in bracket.base_components)
        assert set(bracket.fiber_components) <= set(jb.fibers)

    def test_momentum_bracket_identity(self, chern_simons):
        jb = jet_bundle(chern_simons.bundle)
        g = chern_simons.generator("gauge")
        result = momentum_bracket(chern_simons, g, g.relabeled("b", jb.base))
        assert form_is_zero(result.residual)

    def test_relabeled_roots(self, chern_simons):
        jb = jet_bundle(chern_simons.bundle)
        h = chern_simons.generator("gauge").relabeled("b", jb.base)
        assert h.jet_roots == ("chib",)
        assert h.fiber_component(jb.field("A", 1)) == SYMBOLS.jet_parameter("chib", 1)


class TestEquivariance:
    """Test Legendre equivariance and Cartan invariance"""

    def test_maxwell_gauge_equivariant(self, maxwell):
        residuals = legendre_equivariance_check(maxwell, maxwell.generator("gauge"))
        assert all(equal(r, 0) for r in residuals.values())

    def test_chern_simons_gauge_not_equivariant(self, chern_simons):
        residuals = legendre_equivariance_check(chern_simons, chern_simons.generator("gauge"))
        assert any(not equal(r, 0) for r in residuals.values())

    def test_chern_simons_cartan_not_invariant(self, chern_simons):
        assert not form_is_zero(cartan_invariance_check(chern_simons, chern_simons.generator("gauge")))


class TestTransitivity:
    """Test vertical transitivity"""

    def test_maxwell(self, maxwell):
        result = vertical_transitivity(maxwell)
        assert result.verdict
        assert result.rank == result.dim == 4

    def test_polyakov_misses_phi(self, polyakov):
        """No generator moves the string's position"""
        result = vertical_transitivity(polyakov)
        assert not result.verdict
        assert result.rank < result.dim
        assert result.witness

    def test_translation_only(self, mechanics):
        assert not vertical_transitivity(mechanics).verdict

    def test_no_admissible_point(self, mechanics):
        """A generator that cannot be evaluated anywhere is an error, not a verdict"""
        jb = jet_bundle(mechanics.bundle)
        q = jb.fibers[0]
        g = GeneratorFamily("imaginary", (sympy.Integer(0),),
                            {q: sympy.sqrt(-1 - q ** 2) * SYMBOLS.jet_parameter("chi")}, ("chi",))
        theory = dataclasses.replace(mechanics, generators={"imaginary": g})
        with pytest.raises(DegenerateSample):
            vertical_transitivity(theory)


class TestConverseAndOnShell:
    """Test the field equations implied by conservation"""

    def test_maxwell_gauge_forces_all(self, maxwell):
        result = converse_extraction(maxwell, maxwell.generator("gauge"))
        assert result.forces_all
        assert len(result.forced) == 4
        assert len(result.with_field_equations(maxwell)) == len(result.equations)

    def test_translation_forces_nothing_alone(self, maxwell):
        """A rigid translation gives one equation in four unknowns"""
        result = converse_extraction(maxwell, maxwell.generator("translation"))
        assert not result.forces_all

    def test_polyakov_forces_h_and_the_contracted_equation(self, polyakov):
        """δL/δh vanishes on its own; the phi equations only in the combination E_A phi^A_{,nu}"""
        result = converse_extraction(polyakov, polyakov.generator("diffeo_conformal"))
        jb = jet_bundle(polyakov.bundle)
        hs = [jb.field("h", s, r) for s in range(2) for r in range(s, 2)]
        phis = [y for y in jb.variational if y not in hs]
        assert not result.forces_all
        assert set(result.forced) == set(hs)
        contracted = [sum((result.placeholders[y] * jb.velocity(y, nu) for y in phis), sympy.Integer(0))
                      for nu in range(2)]
        assert len(result.remaining) == 2
        for e in contracted:
            assert any(equal_symbolic(r, e) or equal_symbolic(r, -e) for r in result.remaining)

    def test_maxwell_gauge_conserved_on_shell(self, maxwell):
        result = on_shell_conservation(maxwell, maxwell.generator("gauge"))
        assert result.conserved
        assert len(result.solved_for) == 4


class TestStressEnergy:
    """Test T^{sr} = 2 ∂L/∂g_{sr}"""

    def test_needs_parametric_metric(self, maxwell):
        with pytest.raises(NoParametricMetric):
            stress_energy_from_parametric_metric(maxwell)

    def test_symmetric(self, maxwell_parametric):
        T = stress_energy_from_parametric_metric(maxwell_parametric)
        assert T[(0, 2)] == T[(2, 0)]
        assert len(T) == 16

    @pytest.mark.slow
    def test_maxwell_closed_form(self, maxwell_parametric):
        expected = catalog_entry("maxwell_parametric").expected["stress_energy"].value
        T = stress_energy_from_parametric_metric(maxwell_parametric)
        for key in [(0, 0), (0, 1), (2, 3)]:
            assert equal(T[key], expected[key], context="stress-energy")
