"""
Tests for numeric verification

Tests cover:
- Sample plans
- Seeded identity checks with worst-point reporting
- Finite-difference checks of symbolic derivatives
- Flow generators against their vector fields
"""
import pytest
import sympy

from src.geometry import VectorField
from src.jets import jet_bundle, scaling_flow
from src.models import BundleSpec, FieldKind, FieldSpec
from src.numverify import SamplePlan, finite_difference_check, flow_generator_check, sample_point, verify_identity
from src.symcore import SYMBOLS, SymbolKind


@pytest.fixture(scope="module")
def jb():
    return jet_bundle(BundleSpec(2, ("x0", "x1"), (FieldSpec("w", FieldKind.SCALAR, True, 2),)))


class TestSamplePlan:
    """Test plan validation"""

    def test_defaults(self):
        plan = SamplePlan()
        assert plan.n_samples == 20
        assert plan.tol == 1e-9

    def test_rejects_empty_plan(self):
        with pytest.raises(ValueError):
            SamplePlan(n_samples=0)

    def test_rejects_nonpositive_tolerance(self):
        with pytest.raises(ValueError):
            SamplePlan(tol=0.0)


class TestVerifyIdentity:
    """Test seeded comparisons"""

    def test_identity_passes(self, quick_plan):
        x, y = sympy.symbols("x y")
        report = verify_identity((x + y) ** 2, x ** 2 + 2 * x * y + y ** 2, quick_plan)
        assert report.passed
        assert report.samples == 5

    def test_mismatch_reports_worst_point(self, quick_plan):
        x = sympy.Symbol("x")
        report = verify_identity(x, x + 1, quick_plan, name="shifted")
        assert not report.passed
        assert report.max_deviation > 0
        assert "x" in report.worst_point
        assert "FAIL" in report.summary()

    def test_metric_identity(self, quick_plan):
        """g_0b g^b1 = 0 at every sampled metric"""
        grp = SYMBOLS.register_metric("nv", 3)
        e = sum(grp.g(0, b) * grp.ginv(b, 1) for b in range(3))
        assert verify_identity(e, 0, quick_plan).passed

    def test_sample_point_covers_chart(self, jb):
        point = sample_point(jb.J1Y, seed=1)
        assert set(point) == set(jb.J1Y.coords)


class TestFiniteDifferences:
    """Test derivatives against central differences"""

    def test_polynomial(self):
        x, y = SYMBOLS.symbol(SymbolKind.BASE, "x0"), SYMBOLS.symbol(SymbolKind.BASE, "x1")
        assert finite_difference_check(x ** 3 * y - 2 * x * y ** 2, x).passed

    def test_density_along_metric(self):
        """The whole metric group moves with the perturbed component"""
        grp = SYMBOLS.register_metric("nv", 3)
        assert finite_difference_check(grp.sqrt_det, grp.g(0, 0)).passed
        assert finite_difference_check(grp.ginv(0, 1) * grp.sqrt_det, grp.g(1, 2)).passed

    def test_dependent_must_be_lower_component(self):
        grp = SYMBOLS.register_metric("nv", 3)
        with pytest.raises(ValueError):
            finite_difference_check(grp.g(0, 0), grp.ginv(0, 0))

    def test_hidden_dependents(self):
        """Jet parameters move with the base coordinates but samples cannot follow"""
        x = SYMBOLS.symbol(SymbolKind.BASE, "x0")
        kappa = SYMBOLS.register_jet_root("kappa", (x,))
        with pytest.raises(ValueError):
            finite_difference_check(kappa * x, x)


class TestFlowGenerator:
    """Test flows against their generators"""

    def test_scaling(self, jb):
        V = VectorField.build(jb.Y, {y: y for y in jb.variational})
        assert flow_generator_check(lambda s: scaling_flow(jb, s), V).passed

    def test_wrong_generator(self, jb):
        V = VectorField.build(jb.Y, {y: 2 * y for y in jb.variational})
        assert not flow_generator_check(lambda s: scaling_flow(jb, s), V, SamplePlan(n_samples=3)).passed
