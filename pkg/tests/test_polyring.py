from hypothesis import given, strategies as st

from katosurf.exact import ExactComplex
from katosurf.polyring import Poly

x, y, c = Poly.var("x"), Poly.var("y"), Poly.var("c")
ints = st.integers(-5, 5)


@given(ints, ints, ints)
def test_arithmetic_and_evaluation(a, b, k):
    p = (x + a) * (y - b) + k * x * x
    vals = {"x": ExactComplex(2), "y": ExactComplex(-3)}
    assert p.evaluate(vals) == (2 + a) * (-3 - b) + 4 * k


def test_structure():
    p = 3 * x * x * y + c - 1
    assert p.variables() == {"x", "y", "c"}
    assert p.total_degree() == 3
    assert p.degree_in("x") == 2
    parts = p.coefficients_in("x")
    assert parts[2] == 3 * y and parts[0] == c - 1
    assert not (p - p)
    assert Poly.const(ExactComplex(4)).is_constant()


def test_substitute_polys():
    p = x * x + y
    q = p.substitute({"x": y + 1})
    assert q == y * y + 3 * y + 1
