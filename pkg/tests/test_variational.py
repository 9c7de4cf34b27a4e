"""
Tests for the Lagrangian side

Tests cover:
- The covariant Legendre transform against closed forms
- Cartan form constructions and their agreement
- Euler-Lagrange expressions
- Field equations read off the Cartan form on prolonged sections
"""
import pytest
import sympy

from src.geometry import VectorField, forms_equal
from src.jets import jet_bundle
from src.models import Section
from src.symcore import equal, equal_symbolic
from src.theories import catalog_entry
from src.variational import (
    NotVertical,
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
    tangent_lift,
)


@pytest.fixture(scope="module")
def cs_section(chern_simons):
    """A polynomial configuration of the Chern-Simons potential"""
    jb = jet_bundle(chern_simons.bundle)
    x0, x1, x2 = jb.base
    A = [jb.field("A", mu) for mu in range(3)]
    return Section({A[0]: x1 * x2, A[1]: x0 ** 2 - x2, A[2]: x0 * x1 ** 2})


class TestLegendre:
    """Test multimomenta and the covariant Hamiltonian"""

    def test_mechanics(self, mechanics):
        """p = L - v ∂L/∂v for a generic Lagrangian"""
        jb = jet_bundle(mechanics.bundle)
        q = jb.fibers[0]
        v = jb.velocity(q, 0)
        L = mechanics.lagrangian
        lt = legendre(mechanics)
        assert equal_symbolic(lt.momenta[jb.momentum(q, 0)], sympy.diff(L, v))
        assert equal_symbolic(lt.hamiltonian, L - v * sympy.diff(L, v))

    def test_maxwell_momenta(self, maxwell):
        expected = catalog_entry("maxwell").expected["multimomenta"].value
        momenta = legendre(maxwell).momenta
        assert set(momenta) == set(expected)
        for p, e in expected.items():
            assert equal_symbolic(momenta[p], e)

    def test_maxwell_hamiltonian(self, maxwell):
        expected = catalog_entry("maxwell").expected["covariant_hamiltonian"].value
        assert equal_symbolic(legendre(maxwell).hamiltonian, expected)

    def test_chern_simons_hamiltonian_vanishes(self, chern_simons):
        """L is linear in the velocities"""
        assert legendre(chern_simons).hamiltonian == 0

    def test_polyakov_hamiltonian(self, polyakov):
        """Needs the metric identities of h, so equality falls back to sampling"""
        expected = catalog_entry("polyakov").expected["covariant_hamiltonian"].value
        assert equal(legendre(polyakov).hamiltonian, expected)

    def test_chart_map_fixes_Y(self, chern_simons):
        jb = jet_bundle(chern_simons.bundle)
        fl = legendre(chern_simons).chart_map
        for c in jb.Y.coords:
            assert fl.component(c) == c


class TestCartanForm:
    """Test Theta_L"""

    def test_chern_simons_closed_form(self, chern_simons):
        expected = catalog_entry("chern_simons").expected["cartan_form"].value
        assert forms_equal(cartan_form(chern_simons), expected)

    def test_routes_agree(self, chern_simons):
        theta = cartan_form(chern_simons)
        assert forms_equal(theta, cartan_form_via_legendre(chern_simons))
        assert forms_equal(theta, cartan_form_via_contact(chern_simons))

    def test_routes_agree_for_particle(self, relativistic_particle):
        theta = cartan_form(relativistic_particle)
        assert forms_equal(theta, cartan_form_via_contact(relativistic_particle))

    def test_omega_routes_agree(self, chern_simons):
        assert forms_equal(omega_L(chern_simons), omega_L_via_legendre(chern_simons))

    @pytest.mark.slow
    def test_maxwell_omega(self, maxwell):
        expected = catalog_entry("maxwell").expected["omega_L"].value
        assert forms_equal(omega_L(maxwell), expected)

    def test_lagrangian_reconstruction(self, chern_simons, cs_section):
        """The pulled-back Cartan form is L d^3x"""
        lhs, rhs = lagrangian_reconstruction(chern_simons, cs_section)
        assert equal_symbolic(lhs, rhs)


class TestEulerLagrange:
    """Test field equations"""

    def test_mechanics(self, mechanics):
        jb = jet_bundle(mechanics.bundle)
        t = jb.base[0]
        q = jb.fibers[0]
        v = jb.velocity(q, 0)
        a = jb.second_velocity(q, 0, 0)
        L = mechanics.lagrangian
        Lv = sympy.diff(L, v)
        expected = sympy.diff(L, q) - (sympy.diff(Lv, t) + sympy.diff(Lv, q) * v + sympy.diff(Lv, v) * a)
        assert equal_symbolic(euler_lagrange(mechanics)[q], expected)

    def test_maxwell(self, maxwell):
        expected = catalog_entry("maxwell").expected["euler_lagrange"].value
        el = euler_lagrange(maxwell)
        for A, e in expected.items():
            assert equal_symbolic(el[A], e)

    def test_chern_simons(self, chern_simons):
        expected = catalog_entry("chern_simons").expected["euler_lagrange"].value
        el = euler_lagrange(chern_simons)
        for A, e in expected.items():
            assert equal_symbolic(el[A], e)

    def test_parametric_fields_have_no_equation(self, maxwell_parametric):
        jb = jet_bundle(maxwell_parametric.bundle)
        el = euler_lagrange(maxwell_parametric)
        assert set(el) == set(jb.variational)


class TestFieldEquationsFromCartan:
    """Test the Cartan-form reading of the field equations"""

    def test_contraction_matches(self, chern_simons, cs_section):
        jb = jet_bundle(chern_simons.bundle)
        x0, x1, x2 = jb.base
        V = VectorField.build(jb.Y, {jb.field("A", 0): x1, jb.field("A", 2): x0 * x2})
        assert equal_symbolic(el_via_cartan(chern_simons, cs_section, V),
                              el_residual_contraction(chern_simons, cs_section, V))

    def test_rejects_base_components(self, chern_simons, cs_section):
        jb = jet_bundle(chern_simons.bundle)
        V = VectorField.coordinate(jb.Y, jb.base[0])
        with pytest.raises(NotVertical):
            el_via_cartan(chern_simons, cs_section, V)

    def test_tangent_fields_contract_to_zero(self, chern_simons, cs_section):
        """Fields tangent to the prolonged section never see Omega_L"""
        W = tangent_lift(chern_simons, cs_section, [sympy.Integer(1), sympy.Integer(0), sympy.Integer(2)])
        assert equal_symbolic(vertical_contraction_check(chern_simons, cs_section, W), 0)
