"""
Tests for reports: assembly, structured documents, file I/O and text rendering
"""
import json

import pytest

from i18n import i18n
from src.checks import CheckResult, SuiteReport
from src.constants import REPORT_SCHEMA_VERSION
from src.display.components import render_box, render_ratio_bar, render_separator, render_table
from src.display.report import (
    FormDocument,
    Report,
    check_report,
    derive_report,
    from_structured,
    load_report,
    noether_report,
    to_structured,
    write_report,
)
from src.display.text import display_expr, render_report
from src.geometry import DiffForm
from src.jets import jet_bundle
from src.symcore import equal_symbolic


@pytest.fixture(scope="module")
def cs_derive(chern_simons):
    return derive_report(chern_simons)


@pytest.fixture(scope="module")
def cs_noether(chern_simons):
    return noether_report(chern_simons, chern_simons.generator("gauge"))


def sample_suite_report() -> SuiteReport:
    return SuiteReport("probe", [
        CheckResult("forms", "d of the Cartan form", True),
        CheckResult("legendre", "multimomenta", False, "p[A_0]^1 differs"),
    ])


class TestAssembly:
    """Each command fills its own report keys"""

    def test_derive_sections(self, cs_derive):
        assert list(cs_derive.sections) == ["multimomenta", "covariant_hamiltonian",
                                            "cartan_form", "euler_lagrange"]
        assert isinstance(cs_derive.sections["cartan_form"], DiffForm)
        assert set(cs_derive.sections["euler_lagrange"]) == {"A_0", "A_1", "A_2"}

    def test_noether_sections(self, cs_noether):
        assert cs_noether.generator == "gauge"
        assert cs_noether.command == "noether"
        for key in ("momentum_map", "noether_current", "divergence_residual", "on_shell",
                    "converse_equations", "vertical_transitivity"):
            assert key in cs_noether.sections
        assert set(cs_noether.sections["noether_current"]) == {"x0", "x1", "x2"}
        assert cs_noether.sections["divergence_residual"] == 0

    def test_check_sections(self):
        report = check_report(sample_suite_report())
        results = report.sections["check_results"]
        assert [r["passed"] for r in results] == [True, False]
        assert results[1]["detail"] == "p[A_0]^1 differs"

    def test_unknown_key_rejected(self):
        with pytest.raises(ValueError):
            Report("probe", "derive", {"lagrangian_density": 0})


class TestStructured:
    """The JSON document and its inverse"""

    def test_document_is_json(self, cs_derive):
        doc = to_structured(cs_derive)
        text = json.dumps(doc)
        assert json.loads(text)["schema_version"] == REPORT_SCHEMA_VERSION
        assert doc["theory"] == "chern_simons"
        assert doc["command"] == "derive"

    def test_expressions_come_back_equal(self, cs_derive):
        back = from_structured(json.loads(json.dumps(to_structured(cs_derive))))
        for name, e in cs_derive.sections["multimomenta"].items():
            assert equal_symbolic(back.sections["multimomenta"][name], e)
        assert equal_symbolic(back.sections["covariant_hamiltonian"],
                              cs_derive.sections["covariant_hamiltonian"])

    def test_forms_come_back_as_documents(self, cs_derive):
        form = cs_derive.sections["cartan_form"]
        back = from_structured(to_structured(cs_derive)).sections["cartan_form"]
        assert isinstance(back, FormDocument)
        assert back.chart == form.chart.name
        assert back.degree == form.degree
        assert len(back.terms) == len(form.terms)

    def test_noether_round_trip(self, cs_noether):
        back = from_structured(to_structured(cs_noether))
        assert back.generator == "gauge"
        assert back.sections["vertical_transitivity"] == cs_noether.sections["vertical_transitivity"]
        assert back.sections["converse_equations"]["forces_all"] == \
            cs_noether.sections["converse_equations"]["forces_all"]

    def test_unsupported_schema(self, cs_derive):
        doc = to_structured(cs_derive)
        doc["schema_version"] = "0.1"
        with pytest.raises(ValueError):
            from_structured(doc)


class TestFileIO:
    """Writing and loading documents"""

    def test_write_and_load(self, tmp_path, cs_derive):
        path = str(tmp_path / "derive.json")
        assert write_report(to_structured(cs_derive), path)
        back = load_report(path)
        assert back is not None
        assert back.theory == "chern_simons"
        assert set(back.sections) == set(cs_derive.sections)

    def test_unwritable_path(self, tmp_path, cs_derive):
        assert not write_report(to_structured(cs_derive), str(tmp_path / "missing" / "r.json"))

    def test_load_missing(self, tmp_path):
        assert load_report(str(tmp_path / "absent.json")) is None

    def test_load_malformed(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        assert load_report(str(path)) is None


class TestText:
    """Rendering for reading"""

    def test_headings(self, cs_derive):
        text = render_report(cs_derive)
        assert text.startswith("derive: chern_simons")
        for key in cs_derive.sections:
            assert i18n.t(f"report.sections.{key}") in text

    def test_check_table(self):
        text = render_report(check_report(sample_suite_report()))
        assert "1/2 checks passed" in text
        assert "FAIL" in text

    def test_display_names(self, chern_simons):
        jb = jet_bundle(chern_simons.bundle)
        assert display_expr(jb.field("A", 0)) == "A_0"


@pytest.mark.unit
class TestComponents:
    """Box, table, bar and separator building blocks"""

    def test_ratio_bar(self):
        assert render_ratio_bar(5, 10, 10) == "█████░░░░░"
        assert render_ratio_bar(0, 0, 4) == "░░░░"
        assert render_ratio_bar(3, 3, 6) == "██████"

    def test_box_wraps_long_lines(self):
        box = render_box("x" * 30, "t", 20)
        lines = box.split("\n")
        assert len(lines) == 4
        assert all(len(line) == 20 for line in lines)

    def test_table(self):
        table = render_table(["check", "verdict"], [["dJ", "pass"]])
        assert table.split("\n")[3] == "│ dJ    │ pass    │"
        assert render_table([], []) == ""

    def test_separator(self):
        assert render_separator(5, "double") == "═════"
        assert render_separator(3, "unknown") == "───"
