"""
Tests for the invariant suites

Tests cover:
- Suite selection and argument validation
- Report bookkeeping
- Full suite runs on the shipped catalog
- Failure detection for a Lagrangian with the wrong sign
"""
import numpy as np
import pytest
import sympy

from src.checks import (
    CheckResult,
    SuiteReport,
    numeric_witness,
    random_polynomial,
    random_section,
    run_suites,
)
from src.constants import SHIPPED_THEORIES
from src.jets import jet_bundle
from src.models import Theory
from src.numverify import SamplePlan
from src.symmetry import OnShellResult
from src.theories import catalog_ids


def flipped(theory: Theory) -> Theory:
    """The same theory with L replaced by -L, still under its catalog name"""
    return Theory(theory.name, theory.bundle, -theory.lagrangian, dict(theory.generators),
                  theory.parametrized, theory.constants)


class TestSuiteReport:
    """Test result bookkeeping"""

    def test_passed_and_failures(self):
        report = SuiteReport("t", [CheckResult("forms", "a", True), CheckResult("noether", "b", False, "off")])
        assert not report.passed
        assert [r.name for r in report.failures()] == ["b"]
        assert [r.name for r in report.by_suite("forms")] == ["a"]

    def test_empty_report_passes(self):
        assert SuiteReport("t").passed


class TestHelpers:
    """Test random draws and witnesses"""

    def test_random_polynomial_is_seeded(self, chern_simons):
        jb = jet_bundle(chern_simons.bundle)
        a = random_polynomial(jb.base, np.random.default_rng(4))
        b = random_polynomial(jb.base, np.random.default_rng(4))
        assert a == b

    def test_random_section_skips_parametric(self, maxwell_parametric):
        jb = jet_bundle(maxwell_parametric.bundle)
        phi = random_section(jb, np.random.default_rng(2))
        assert set(phi.components) == set(jb.variational)

    def test_numeric_witness(self, quick_plan):
        x = sympy.Symbol("x")
        assert numeric_witness([sympy.Integer(0)], quick_plan) is None
        assert numeric_witness([x + 2], quick_plan) is not None


class TestRunSuites:
    """Test suite selection"""

    def test_unknown_suite(self, chern_simons):
        with pytest.raises(ValueError):
            run_suites(chern_simons, ["symplectic"])

    def test_unknown_generator(self, chern_simons):
        with pytest.raises(KeyError):
            run_suites(chern_simons, ["noether"], generators=["boost"])

    def test_suite_order(self, chern_simons, quick_plan):
        """Results come in the canonical order whatever the request order"""
        report = run_suites(chern_simons, ["transitivity", "forms"], quick_plan)
        suites = [r.suite for r in report.results]
        assert suites == sorted(suites, key=["forms", "transitivity"].index)
        assert set(suites) == {"forms", "transitivity"}

    def test_generator_restriction(self, chern_simons, quick_plan):
        report = run_suites(chern_simons, ["noether"], quick_plan, generators=["gauge"])
        assert report.results
        assert all("(gauge)" in r.name for r in report.results)


class TestCatalog:
    """Test every suite on the shipped theories"""

    def test_every_catalog_theory_ships_a_file(self):
        assert sorted(catalog_ids()) == sorted(SHIPPED_THEORIES)

    @pytest.mark.slow
    @pytest.mark.parametrize("theory_id", ["chern_simons", "relativistic_particle", "polyakov",
                                           "maxwell_parametric"])
    def test_shipped_theories_pass(self, theory_id, shipped, quick_plan):
        report = run_suites(shipped(theory_id), ["all"], quick_plan)
        assert report.passed, [f"{r.name}: {r.detail}" for r in report.failures()]

    @pytest.mark.slow
    def test_maxwell_passes(self, maxwell):
        report = run_suites(maxwell, ["all"], SamplePlan(n_samples=3))
        assert report.passed, [f"{r.name}: {r.detail}" for r in report.failures()]

    def test_chern_simons_forms(self, chern_simons, quick_plan):
        assert run_suites(chern_simons, ["forms"], quick_plan).passed


class TestFailureDetection:
    """Test that a wrong Lagrangian is caught"""

    def test_flipped_chern_simons(self, chern_simons, quick_plan):
        report = run_suites(flipped(chern_simons), ["legendre"], quick_plan)
        assert not report.passed
        assert any("multimomenta" in r.name for r in report.failures())

    @pytest.mark.slow
    def test_flipped_maxwell(self, maxwell):
        report = run_suites(flipped(maxwell), ["noether"], SamplePlan(n_samples=3), ["gauge"])
        assert not report.passed
        names = [r.name for r in report.failures()]
        assert "noether divergence identity for the catalog current (gauge)" in names
        assert "Noether current matches the catalog (gauge)" in names

    def test_unsolved_field_equations_fail(self, chern_simons, quick_plan, mocker):
        mocker.patch("src.checks.on_shell_conservation",
                     return_value=OnShellResult([], None, None, None, None))
        report = run_suites(chern_simons, ["noether"], quick_plan, ["gauge"])
        (failure,) = report.failures()
        assert failure.name == "divergence identity holds on shell (gauge)"
        assert failure.detail == "field equations could not be solved for jet symbols"

    def test_unconserved_current_fails(self, chern_simons, quick_plan, mocker):
        """A vanishing source requires a vanishing divergence"""
        x = sympy.Symbol("x")
        mocker.patch("src.checks.on_shell_conservation",
                     return_value=OnShellResult([], x ** 2 + 1, sympy.Integer(0), sympy.Integer(0), False))
        report = run_suites(chern_simons, ["noether"], quick_plan, ["gauge"])
        (failure,) = report.failures()
        assert failure.name == "divergence identity holds on shell (gauge)"
        assert failure.detail == "current is not conserved on shell"

    def test_unsolvable_theory_is_noted(self, polyakov, quick_plan, mocker):
        """Polyakov's conformal equation cannot be solved for a jet symbol"""
        mocker.patch("src.checks.on_shell_conservation",
                     return_value=OnShellResult([], None, None, None, None))
        report = run_suites(polyakov, ["noether"], quick_plan, ["conformal"])
        (result,) = [r for r in report.results if r.name == "divergence identity holds on shell (conformal)"]
        assert result.passed
        assert "quadratic constraint" in result.detail
