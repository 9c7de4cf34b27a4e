"""
Tests for jet bundles

Tests cover:
- Chart layout of Y, J1Y, J2Y and Z
- Name validation of bundle declarations
- Total derivatives and prolonged sections
- Projectability, prolonged automorphisms and lifts to Z
- The canonical forms of Z and the dual pairing
"""
import pytest
import sympy

from src.geometry import ChartMap, VectorField, form_is_zero, forms_equal
from src.jets import (
    DuplicateFieldName,
    MissingInverse,
    NotProjectable,
    affine_automorphism,
    canonical_omega,
    canonical_omega_closed_form,
    check_projectable,
    dual_pairing,
    jet_bundle,
    lift_automorphism_to_Z,
    linear_reparametrization,
    pairing_via_pullback,
    prolong_automorphism,
    prolong_vector,
    section_bindings,
    section_of_Z,
    section_pairing_identity,
    total_derivative,
    verticality_condition,
)
from src.models import BundleSpec, FieldKind, FieldSpec, Section
from src.symcore import SYMBOLS, SymbolKind, equal_symbolic, substitute


@pytest.fixture(scope="module")
def jb():
    """Two scalars w0, w1 over a two-dimensional base"""
    return jet_bundle(BundleSpec(2, ("x0", "x1"), (FieldSpec("w", FieldKind.SCALAR, True, 2),)))


class TestCharts:
    """Test chart layout"""

    def test_dimensions(self, jb):
        assert jb.Y.dim == 4
        assert jb.J1Y.dim == 8
        assert jb.J2Y.dim == 14
        assert jb.Z.dim == 9

    def test_base_first(self, jb):
        assert jb.J1Y.coords[:2] == jb.base
        assert jb.Z.coords[4] == jb.hamiltonian

    def test_cached(self, jb):
        """The same description yields the same charts"""
        again = jet_bundle(BundleSpec(2, ("x0", "x1"), (FieldSpec("w", FieldKind.SCALAR, True, 2),)))
        assert again is jb

    def test_maxwell_layout(self, maxwell):
        mjb = jet_bundle(maxwell.bundle)
        assert mjb.Y.dim == 8
        assert mjb.J1Y.dim == 24
        assert mjb.Z.dim == 25

    def test_parametric_metric_has_no_momenta(self, maxwell_parametric):
        """g gets ten fiber coordinates and neither velocities nor momenta"""
        mjb = jet_bundle(maxwell_parametric.bundle)
        assert len(mjb.parametric) == 10
        assert len(mjb.variational) == 4
        assert mjb.Z.dim == 4 + 14 + 1 + 16

    def test_parametric_jets_are_background(self, maxwell_parametric):
        mjb = jet_bundle(maxwell_parametric.bundle)
        g01 = mjb.field("g", 1, 0)
        assert g01 == mjb.field("g", 0, 1)
        assert SYMBOLS.kind_of(mjb.jet(g01, 2)) == SymbolKind.BACKGROUND_JET
        assert mjb.jet(g01, 2) not in mjb.J1Y


class TestDeclarations:
    """Test bundle validation"""

    def test_field_named_like_coordinate(self):
        with pytest.raises(DuplicateFieldName):
            jet_bundle(BundleSpec(2, ("x0", "x1"), (FieldSpec("x0", FieldKind.SCALAR),)))

    def test_reserved_name(self):
        with pytest.raises(DuplicateFieldName):
            jet_bundle(BundleSpec(1, ("t",), (FieldSpec("eta", FieldKind.SCALAR),)))

    def test_coordinate_count(self):
        with pytest.raises(ValueError):
            BundleSpec(2, ("x0",), (FieldSpec("u", FieldKind.SCALAR),))

    def test_needs_a_variational_field(self):
        with pytest.raises(ValueError):
            BundleSpec(1, ("t",), (FieldSpec("u", FieldKind.SCALAR, variational=False),))


class TestTotalDerivative:
    """Test D_mu"""

    def test_on_fiber_coordinate(self, jb):
        w0 = jb.field("w", 0)
        x1 = jb.base[1]
        assert total_derivative(jb, w0 * x1, 0) == x1 * jb.velocity(w0, 0)

    def test_on_velocity(self, jb):
        w1 = jb.field("w", 1)
        assert total_derivative(jb, jb.velocity(w1, 0), 1) == jb.second_velocity(w1, 0, 1)

    def test_agrees_with_prolonged_section(self, jb):
        """(D_mu e) on j^2 phi equals ∂_mu of e on j^1 phi"""
        x0, x1 = jb.base
        w0, w1 = jb.fibers
        phi = Section({w0: x0 ** 2 * x1, w1: x0 - 3 * x1 ** 3})
        e = w0 * jb.velocity(w1, 1) + x0 * jb.velocity(w0, 0) ** 2
        for mu, x in enumerate(jb.base):
            lhs = substitute(total_derivative(jb, e, mu), section_bindings(jb, phi, 2))
            rhs = sympy.diff(substitute(e, section_bindings(jb, phi, 1)), x)
            assert equal_symbolic(lhs, rhs)

    def test_section_bindings(self, jb):
        x0, x1 = jb.base
        w0, w1 = jb.fibers
        b = section_bindings(jb, Section({w0: x0 ** 2 * x1}))
        assert b[jb.velocity(w0, 0)] == 2 * x0 * x1
        assert b[w1] == w1


class TestVectorFields:
    """Test projectability and prolongation"""

    def test_not_projectable(self, jb):
        with pytest.raises(NotProjectable):
            check_projectable(jb, [jb.fibers[0], 0])

    def test_prolong_rejects_fiber_dependent_base(self, jb):
        V = VectorField.build(jb.Y, {jb.base[0]: jb.fibers[1]})
        with pytest.raises(NotProjectable):
            prolong_vector(jb, V)

    def test_prolonged_translation(self, jb):
        """A base translation leaves velocities alone"""
        V = VectorField.coordinate(jb.Y, jb.base[0])
        assert prolong_vector(jb, V) == VectorField.coordinate(jb.J1Y, jb.base[0])

    def test_prolonged_scaling(self, jb):
        """x0 ∂_x0 rescales the x0-velocities"""
        x0 = jb.base[0]
        w0 = jb.fibers[0]
        j1 = prolong_vector(jb, VectorField.build(jb.Y, {x0: x0}))
        assert j1.component(jb.velocity(w0, 0)) == -jb.velocity(w0, 0)
        assert j1.component(jb.velocity(w0, 1)) == 0


class TestAutomorphisms:
    """Test prolongation and lifts of bundle automorphisms"""

    def test_needs_inverse(self, jb):
        eta = ChartMap(jb.Y, jb.Y, tuple(jb.Y.coords))
        with pytest.raises(MissingInverse):
            prolong_automorphism(jb, eta)

    def test_reparametrization_rescales_velocity(self, jb):
        """x0 -> 2 x0 + 1 halves the x0-velocity"""
        j1 = prolong_automorphism(jb, linear_reparametrization(jb, 2, 1))
        w0 = jb.fibers[0]
        assert equal_symbolic(j1.component(jb.velocity(w0, 0)), jb.velocity(w0, 0) / 2)
        assert j1.check_inverse()

    def test_lift_to_Z_has_inverse(self, jb):
        eta = affine_automorphism(jb, base_matrix=[[1, 1], [0, 2]], fiber_matrix=[[2, 0], [1, 1]],
                                  fiber_shift=[1, -1])
        lifted = lift_automorphism_to_Z(jb, eta)
        assert lifted.check_inverse()


class TestCanonicalForms:
    """Test Theta, Omega and the dual pairing"""

    def test_omega_closed_form(self, jb):
        assert forms_equal(canonical_omega(jb), canonical_omega_closed_form(jb))

    def test_pairing_default(self, jb):
        expected = jb.hamiltonian + sum(jb.momentum(A, mu) * jb.velocity(A, mu)
                                        for A in jb.variational for mu in range(2))
        assert equal_symbolic(dual_pairing(jb), expected)

    def test_pairing_via_pullback(self, jb):
        w0 = jb.fibers[0]
        z = {jb.hamiltonian: 3, jb.momentum(w0, 1): jb.base[0]}
        gamma = {jb.velocity(w0, 1): 5}
        assert equal_symbolic(pairing_via_pullback(jb, z, gamma), dual_pairing(jb, z, gamma))

    def test_section_pairing_identity(self, jb):
        x0, x1 = jb.base
        w0, w1 = jb.fibers
        sigma = section_of_Z(jb, {w0: x0 * x1, w1: x1 ** 2, jb.hamiltonian: x0,
                                  jb.momentum(w0, 0): x1, jb.momentum(w1, 1): x0 ** 2})
        lhs, rhs = section_pairing_identity(jb, sigma)
        assert equal_symbolic(lhs, rhs)

    def test_verticality(self, jb):
        w0, w1 = jb.fibers
        v = VectorField.build(jb.Z, {w0: 1, jb.momentum(w1, 0): jb.base[1]})
        w = VectorField.build(jb.Z, {w1: jb.base[0]})
        assert form_is_zero(verticality_condition(jb, v, w))

    def test_verticality_rejects_base_components(self, jb):
        v = VectorField.coordinate(jb.Z, jb.base[0])
        with pytest.raises(NotProjectable):
            verticality_condition(jb, v, v)
