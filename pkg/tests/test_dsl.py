"""
Tests for theory files: parser diagnostics and elaboration
"""
import textwrap

import pytest

from src.dsl import ElaborationError, load_source, load_theory, parse, shipped_source
from src.symcore import equal, equal_symbolic
from src.jets import jet_bundle
from src.theories import catalog_entry


def source(body: str, header: str = "") -> str:
    header = header or """\
        base dim 4 coords (x0, x1, x2, x3);
        field A : covector variational;
        metric fixed minkowski;"""
    return "theory probe {\n" + textwrap.indent(textwrap.dedent(header), "  ") + "\n" \
        + textwrap.indent(textwrap.dedent(body), "  ") + "}\n"


def diagnostics_of(text: str):
    with pytest.raises(ElaborationError) as exc:
        load_source(text)
    return exc.value.diagnostics


class TestParser:
    """Parsing never raises and reports every problem it finds"""

    def test_empty_input(self):
        result = parse("")
        assert not result.ok
        assert [d.message for d in result.diagnostics] == ["missing theory declaration"]

    def test_shipped_files_parse_cleanly(self):
        for theory_id in ("maxwell", "chern_simons", "polyakov", "relativistic_particle",
                          "maxwell_parametric"):
            result = parse(shipped_source(theory_id))
            assert result.ok, theory_id
            assert result.diagnostics == []

    def test_unbalanced_bracket_reported_once_at_the_bracket(self):
        text = "theory broken {\n  base dim 1 coords (t);\n  field u : scalar;\n  lagrangian u[0;\n}\n"
        result = parse(text)
        assert len(result.diagnostics) == 1
        d = result.diagnostics[0]
        assert d.message == "unbalanced '[': expected ']'"
        assert (d.span.line, d.span.column) == (4, 15)

    def test_garbage_does_not_raise(self):
        result = parse("}}}{{{;;")
        assert not result.ok
        assert result.diagnostics

    def test_unexpected_character(self):
        result = parse(source("lagrangian A[0] @ A[1];\n"))
        assert any(d.message == "unexpected character '@'" for d in result.diagnostics)

    def test_duplicate_field_points_at_first_declaration(self):
        text = source("field A : covector;\nlagrangian 0;\n")
        result = parse(text)
        dup = [d for d in result.diagnostics if "declared more than once" in d.message]
        assert len(dup) == 1
        assert "first declared on line 3" in dup[0].hint

    def test_missing_base_and_lagrangian(self):
        result = parse("theory t {\n  field u : scalar;\n}\n")
        messages = [d.message for d in result.diagnostics]
        assert "missing base declaration" in messages
        assert "missing lagrangian declaration" in messages

    def test_unknown_statement(self):
        result = parse(source("frobnicate x;\nlagrangian 0;\n"))
        assert any(d.message == "unknown statement 'frobnicate'" for d in result.diagnostics)

    def test_trailing_input(self):
        result = parse(source("lagrangian 0;\n") + "extra\n")
        assert any(d.message == "unexpected input after the theory block" for d in result.diagnostics)

    def test_unknown_function(self):
        result = parse(source("lagrangian foo(A[0]);\n"))
        d = next(d for d in result.diagnostics if d.message == "unknown function foo")
        assert "sqrt" in d.hint

    def test_diagnostic_format(self):
        d = parse("").diagnostics[0]
        assert d.format("empty.thy").startswith("empty.thy:")
        assert ": error: missing theory declaration" in d.format("empty.thy")


class TestElaboration:
    """Shipped files elaborate to the catalog theories"""

    @pytest.mark.parametrize("theory_id", ["chern_simons", "relativistic_particle", "polyakov",
                                           "maxwell", "maxwell_parametric"])
    def test_lagrangian_matches_catalog(self, shipped, theory_id):
        loaded = shipped(theory_id)
        expected = catalog_entry(theory_id).theory
        assert loaded.name == theory_id
        assert equal(loaded.lagrangian, expected.lagrangian, context=theory_id)
        assert set(loaded.generators) == set(expected.generators)

    def test_exact_lagrangians(self, shipped, chern_simons, relativistic_particle):
        assert equal_symbolic(shipped("chern_simons").lagrangian, chern_simons.lagrangian)
        assert equal_symbolic(shipped("relativistic_particle").lagrangian,
                              relativistic_particle.lagrangian)

    def test_parametrized_flags(self, shipped):
        assert not shipped("maxwell").parametrized
        assert shipped("chern_simons").parametrized
        assert shipped("polyakov").parametrized
        assert shipped("relativistic_particle").parametrized

    def test_constants(self, shipped):
        assert [c.name for c in shipped("relativistic_particle").constants] == ["m"]
        assert shipped("maxwell").constants == ()

    def test_gauge_generator_fiber(self, shipped, maxwell):
        loaded = shipped("maxwell").generator("gauge")
        expected = maxwell.generator("gauge")
        assert loaded.base == (0, 0, 0, 0)
        assert set(loaded.fiber) == set(expected.fiber)
        for y, v in loaded.fiber.items():
            assert equal_symbolic(v, expected.fiber[y])

    def test_translation_base(self, shipped):
        g = shipped("maxwell").generator("translation")
        assert tuple(g.base) == (1, 0, 0, 0)
        assert g.fiber == {}

    def test_raised_contraction_on_minkowski(self):
        theory = load_source(source("field B : covector variational;\nlagrangian A[mu] * B[^mu];\n"))
        jb = jet_bundle(theory.bundle)
        A = [jb.field("A", mu) for mu in range(4)]
        B = [jb.field("B", mu) for mu in range(4)]
        expected = -A[0] * B[0] + A[1] * B[1] + A[2] * B[2] + A[3] * B[3]
        assert equal_symbolic(theory.lagrangian, expected)

    def test_load_theory_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_theory(str(tmp_path / "absent.thy"))

    def test_parse_errors_raise(self):
        with pytest.raises(ElaborationError) as exc:
            load_source("")
        assert str(exc.value) == "missing theory declaration"


class TestElaborationErrors:
    """Index and declaration errors become diagnostics"""

    def test_index_twice_up(self):
        (d,) = diagnostics_of(source("lagrangian A[^mu] * A[^mu];\n"))
        assert d.message == "index mu appears twice up"

    def test_index_twice_down(self):
        (d,) = diagnostics_of(source("lagrangian A[mu] * A[mu];\n"))
        assert d.message == "index mu appears twice down"

    def test_free_index_mismatch(self):
        (d,) = diagnostics_of(source("lagrangian A[mu] * A[^mu] + A[nu];\n"))
        assert d.message.startswith("free-index mismatch")

    def test_lagrangian_with_free_index(self):
        (d,) = diagnostics_of(source("lagrangian A[mu];\n"))
        assert d.message.startswith("the lagrangian must be a scalar")

    def test_raising_needs_metric(self):
        header = """\
            base dim 4 coords (x0, x1, x2, x3);
            field A : covector variational;
            metric none;"""
        (d,) = diagnostics_of(source("lagrangian A[^mu] * A[mu];\n", header))
        assert d.message == "A needs a metric but the theory declares none"

    def test_unknown_identifier(self):
        (d,) = diagnostics_of(source("lagrangian zz * A[0];\n"))
        assert d.message == "unknown identifier zz"
        assert d.span.line == 5

    def test_derivative_of_parametric_field(self):
        header = """\
            base dim 4 coords (x0, x1, x2, x3);
            field A : covector variational;
            param g : sym2 parametric;
            metric parametric g;"""
        (d,) = diagnostics_of(source("lagrangian d(g[0,0], 0) * A[0];\n", header))
        assert d.message == "d() of the parametric field g"

    def test_eps_dimension(self):
        (d,) = diagnostics_of(source("lagrangian eps[^a,^b,^c] * A[a] * A[b] * A[c];\n"))
        assert d.message == "eps with 3 indices used over a range of dimension 4"

    def test_generator_not_projectable(self):
        body = """\
            field psi : scalar variational;
            generator bad {
              base: psi, 0, 0, 0;
            }
            lagrangian A[0];
            """
        (d,) = diagnostics_of(source(body))
        assert d.message.startswith("generator is not projectable")

    def test_component_assigned_twice(self):
        body = """\
            generator gauge (params: chi) {
              fiber: A[nu] = d(chi, nu), A[0] = 1;
            }
            lagrangian A[0];
            """
        (d,) = diagnostics_of(source(body))
        assert d.message == "A_0 is assigned twice"

    def test_all_errors_reported_together(self):
        body = """\
            let P = zz;
            let Q = A[mu];
            lagrangian A[0];
            """
        diagnostics = diagnostics_of(source(body))
        assert len(diagnostics) == 2
        assert diagnostics[0].span.line < diagnostics[1].span.line
