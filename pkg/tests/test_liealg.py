import itertools

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from paper_source import paper_contains
from strategies import lie_elements, rationals
from twistlab.liealg import (
    BASIS, LieElement, LieError, ad, apply_operator, bracket, carrier_cartan, closes_under_bracket,
    exp_ad, generator, gl3_table, jacobi_gl3_violations, named_generators, span_coordinates,
)
from twistlab.matrix import Matrix, MatrixError
from twistlab.scalars import S, Scalar

g = named_generators()
lam, v = Scalar.param("lambda"), Scalar.param("v")


def test_bracket_examples():
    assert bracket(g["E12"], g["E23"]) == g["E13"]
    assert bracket(g["H"], g["E12"]).is_zero()
    assert bracket(carrier_cartan(lam), g["E12"]) == lam * g["E12"]
    assert paper_contains(r"[H, E_{12} ]   =  0")
    assert paper_contains(r"[H + \lambda K,E_{12}] = \lambda E_{12}")


@given(lie_elements())
def test_bracket_antisymmetric(x):
    assert bracket(x, x).is_zero()


@given(lie_elements(), lie_elements())
def test_bracket_matches_matrix_commutator(x, y):
    # oracle: commutator of explicit 3x3 sympy matrices
    def mat(z):
        m = sympy.zeros(3, 3)
        for name, c in z.items():
            m[int(name[1]) - 1, int(name[2]) - 1] = sympy.Rational(str(c))
        return m
    assert mat(bracket(x, y)) == mat(x) * mat(y) - mat(y) * mat(x)


def test_ad_examples():
    assert apply_operator(ad(g["E13"]), g["E31"]) == g["H13"]
    assert ad(LieElement()).is_zero()
    assert (ad(g["E13"]) ** 3).is_zero()
    assert not (ad(g["E13"]) ** 2).is_zero()


def test_exp_ad_examples():
    assert exp_ad(g["E13"], 0).is_identity()
    assert (exp_ad(g["E13"], v) @ exp_ad(g["E13"], -v)).is_identity()
    img = apply_operator(exp_ad(g["E13"], v), g["E31"])
    assert img == g["E31"] + v * g["H13"] - v ** 2 * g["E13"]


def test_exp_ad_rejects_non_nilpotent():
    with pytest.raises(MatrixError) as err:
        exp_ad(g["H13"], 1)
    assert "power" in str(err.value)


def test_named_generators():
    assert g["K"] == (g["H12"] - g["H23"]) / 3
    assert bracket(g["K"], g["E13"]).is_zero()
    assert g["H"] == (g["E11"] + g["E22"] - 2 * g["E33"]) / 3
    assert paper_contains(r"K = \frac{1}{3}(H_{12} - H_{23})")
    with pytest.raises(LieError):
        generator("H99")


def test_trace_and_sl():
    assert g["H"].in_sl() and g["K"].in_sl()
    assert not g["I"].in_sl()


def test_jacobi_exhaustive():
    assert jacobi_gl3_violations() == []


def test_carrier_table_symbolic():
    c = [carrier_cartan(lam), g["E12"], g["E23"], g["E13"]]
    assert closes_under_bracket(c)
    h, a, b, e = c
    assert bracket(h, e) == e
    assert bracket(h, a) == lam * a
    assert bracket(h, b) == (1 - lam) * b
    assert bracket(a, b) == e
    assert bracket(a, e).is_zero() and bracket(b, e).is_zero()


def test_carrier_at_zero_is_L01():
    h, a, b, e = carrier_cartan(0), g["E12"], g["E23"], g["E13"]
    assert bracket(h, a).is_zero() and bracket(h, b) == b and bracket(h, e) == e


def test_exp_ad_is_automorphism_symbolically():
    phi = exp_ad(g["E13"], v)
    for x, y in itertools.combinations(BASIS, 2):
        X, Y = LieElement.basis(x), LieElement.basis(y)
        assert apply_operator(phi, bracket(X, Y)) == bracket(apply_operator(phi, X), apply_operator(phi, Y))


@given(st.sampled_from(["E12", "E13", "E23", "E21", "E31", "E32"]), rationals, lie_elements(), lie_elements())
def test_exp_ad_automorphism_random(root, t, x, y):
    phi = exp_ad(g[root], t)
    assert apply_operator(phi, bracket(x, y)) == bracket(apply_operator(phi, x), apply_operator(phi, y))


@given(lie_elements())
def test_span_coordinates_round_trip(x):
    coords = span_coordinates(x, [LieElement.basis(b) for b in BASIS])
    assert LieElement(dict(zip(BASIS, coords))) == x


def test_gl3_table_agrees_with_bracket():
    t = gl3_table()
    for a, b in itertools.product(BASIS, BASIS):
        want = bracket(LieElement.basis(a), LieElement.basis(b))
        assert LieElement(t.bracket_basis(a, b)) == want
