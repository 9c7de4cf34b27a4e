"""
Tests for differential forms on coordinate charts

Tests cover:
- Wedge products, exterior derivative and interior product
- Lie derivatives and brackets of vector fields
- Pullbacks along chart maps
- Base volume and Hodge forms
"""
import pytest
import sympy

from src.geometry import (
    Chart,
    ChartMap,
    ChartMismatch,
    DegreeZero,
    DiffForm,
    VectorField,
    base_hodge,
    coordinate_form,
    exterior_d,
    forms_equal,
    interior,
    lie_derivative,
    pullback,
    volume_form,
    wedge,
)
from src.symcore import SYMBOLS, SymbolKind


@pytest.fixture(scope="module")
def chart():
    """A three-dimensional chart (x0, x1, x2) with two base directions"""
    coords = tuple(SYMBOLS.symbol(SymbolKind.BASE, f"x{i}") for i in range(3))
    return Chart("T", coords, 2)


def one_form(chart, *coeffs):
    return DiffForm.build(chart, 1, [((i,), c) for i, c in enumerate(coeffs)])


class TestWedge:
    """Test the exterior algebra"""

    def test_antisymmetry(self, chart):
        dx, dy = (coordinate_form(chart, c) for c in chart.coords[:2])
        assert wedge(dx, dy) == -wedge(dy, dx)

    def test_square_vanishes(self, chart):
        dx = coordinate_form(chart, chart.coords[0])
        assert wedge(dx, dx).is_zero()

    def test_coefficient_sign(self, chart):
        """Reading a coefficient in another order picks up the permutation sign"""
        x, y, z = chart.coords
        f = wedge(coordinate_form(chart, y), coordinate_form(chart, x))
        assert f.coefficient([0, 1]) == -1
        assert f.coefficient_of([y, x]) == 1

    def test_degree_mismatch(self, chart):
        with pytest.raises(ValueError):
            _ = volume_form(chart) + coordinate_form(chart, chart.coords[0])

    def test_different_charts(self, chart):
        other = Chart("U", chart.coords, 1)
        with pytest.raises(ChartMismatch):
            wedge(coordinate_form(chart, chart.coords[0]), coordinate_form(other, chart.coords[0]))


class TestExteriorDerivative:
    """Test d"""

    def test_function(self, chart):
        x, y, z = chart.coords
        df = exterior_d(DiffForm.function(chart, x ** 2 * y))
        assert df.coefficient([0]) == 2 * x * y
        assert df.coefficient([1]) == x ** 2
        assert df.coefficient([2]) == 0

    def test_d_squared_is_zero(self, chart):
        x, y, z = chart.coords
        a = one_form(chart, x * y * z, y ** 3 - x, z * x ** 2)
        assert exterior_d(exterior_d(a)).is_zero()

    def test_leibniz(self, chart):
        """d(a ^ b) = da ^ b - a ^ db for a 1-form a"""
        x, y, z = chart.coords
        a = one_form(chart, y, x * z, 1)
        b = one_form(chart, z ** 2, 0, x * y)
        lhs = exterior_d(wedge(a, b))
        rhs = wedge(exterior_d(a), b) - wedge(a, exterior_d(b))
        assert forms_equal(lhs, rhs)


class TestInterior:
    """Test contraction"""

    def test_coordinate_contraction(self, chart):
        x, y, z = chart.coords
        dxdy = wedge(coordinate_form(chart, x), coordinate_form(chart, y))
        assert interior(VectorField.coordinate(chart, x), dxdy) == coordinate_form(chart, y)
        assert interior(VectorField.coordinate(chart, y), dxdy) == -coordinate_form(chart, x)

    def test_zero_form(self, chart):
        with pytest.raises(DegreeZero):
            interior(VectorField.coordinate(chart, chart.coords[0]), DiffForm.function(chart, 1))

    def test_twice_is_zero(self, chart):
        x, y, z = chart.coords
        v = VectorField.build(chart, {x: y, z: x * z})
        a = wedge(one_form(chart, 1, z, x), one_form(chart, y, 0, 1))
        assert interior(v, interior(v, a)).is_zero()

    def test_base_hodge(self, chart):
        """∂_0 ⨼ dx0 ^ dx1 = dx1"""
        assert base_hodge(chart, 0) == coordinate_form(chart, chart.coords[1])
        assert base_hodge(chart, 1) == -coordinate_form(chart, chart.coords[0])


class TestVectorFields:
    """Test brackets and Lie derivatives"""

    def test_bracket(self, chart):
        """[∂_x, x ∂_y] = ∂_y"""
        x, y, z = chart.coords
        v = VectorField.coordinate(chart, x)
        w = VectorField.build(chart, {y: x})
        assert v.bracket(w) == VectorField.coordinate(chart, y)

    def test_bracket_antisymmetric(self, chart):
        x, y, z = chart.coords
        v = VectorField.build(chart, {x: y * z, y: x})
        w = VectorField.build(chart, {z: x ** 2, x: 1})
        assert v.bracket(w) == w.bracket(v).scale(-1)

    def test_lie_derivative_of_function(self, chart):
        x, y, z = chart.coords
        v = VectorField.build(chart, {x: y, y: 2})
        lf = lie_derivative(v, DiffForm.function(chart, x * y))
        assert sympy.expand(lf.coefficient([]) - (y ** 2 + 2 * x)) == 0

    def test_lie_commutes_with_d(self, chart):
        x, y, z = chart.coords
        v = VectorField.build(chart, {x: y * z, z: x})
        a = one_form(chart, x * y, z, y ** 2)
        assert forms_equal(lie_derivative(v, exterior_d(a)), exterior_d(lie_derivative(v, a)))


class TestPullback:
    """Test chart maps"""

    def test_pullback_of_one_form(self, chart):
        """y = x^2 pulls dy back to 2x dx"""
        x = chart.coords[0]
        line = Chart("L", (x,), 1)
        m = ChartMap(line, chart, (x, x ** 2, sympy.Integer(0)))
        pulled = pullback(m, coordinate_form(chart, chart.coords[1]))
        assert pulled.coefficient([0]) == 2 * x

    def test_pullback_commutes_with_d(self, chart):
        x, y, z = chart.coords
        m = ChartMap(chart, chart, (x + y, x * y, z))
        a = one_form(chart, z, x, y ** 2)
        assert forms_equal(pullback(m, exterior_d(a)), exterior_d(pullback(m, a)))

    def test_inverse(self, chart):
        x, y, z = chart.coords
        m = ChartMap(chart, chart, (x + 2 * y, y, z), (x - 2 * y, y, z))
        assert m.check_inverse()
        assert m.compose(ChartMap.identity(chart)).components == m.components

    def test_wrong_arity(self, chart):
        with pytest.raises(ValueError):
            ChartMap(chart, chart, (chart.coords[0],))
