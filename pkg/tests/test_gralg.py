"""Graded function algebra: products, derivatives, serialization."""

from fractions import Fraction

import pytest

from gradedgeom.errors import DegreeMismatch, UnknownCoordinate, ValidationError
from gradedgeom.gralg import (
    Chart,
    GFunction,
    chart_from_json,
    chart_to_json,
    gfunction_from_json,
    gfunction_to_json,
    graded_monomials,
    monomials,
    mul_monomials,
    normalize_word,
)
from gradedgeom.scalars import GAUSSIAN, GaussianRational, I


@pytest.fixture
def chart():
    return Chart.build([("x", 0), ("th1", 1), ("th2", 1), ("w", -1)])


def test_chart_lookup(chart):
    assert chart.n == 4
    assert chart.degree_of("th2") == 1
    assert chart.degree_of("w") == -1
    with pytest.raises(UnknownCoordinate):
        chart.index("zz")


def test_normalize_word_signs(chart):
    sw = normalize_word(chart, ["th2", "th1"])
    assert sw.exps == (0, 1, 1, 0)
    assert sw.sign == -1
    sw = normalize_word(chart, ["th1", "x"])
    assert sw.exps == (1, 1, 0, 0)
    assert sw.sign == 1
    sw = normalize_word(chart, ["th1", "th1"])
    assert sw.sign == 0
    # odd times odd of distinct flavors anticommute as well
    sw = normalize_word(chart, ["w", "th1"])
    assert sw.exps == (0, 1, 0, 1)
    assert sw.sign == -1


def test_product_signs(chart):
    th1 = GFunction.var(chart, "th1")
    th2 = GFunction.var(chart, "th2")
    x = GFunction.var(chart, "x")
    assert th2 * th1 == -(th1 * th2)
    assert th1 * th1 == 0
    assert x * th1 == th1 * x
    assert (x * th1) * th2 == x * (th1 * th2)


def test_degree_bookkeeping(chart):
    th1 = GFunction.var(chart, "th1")
    w = GFunction.var(chart, "w")
    assert (th1 * w).degree == 0
    with pytest.raises(DegreeMismatch):
        th1 + w


def test_left_partial(chart):
    th1 = GFunction.var(chart, "th1")
    th2 = GFunction.var(chart, "th2")
    x = GFunction.var(chart, "x")
    p = th1 * th2
    assert p.partial("th2") == -th1
    assert p.partial("th1") == th2
    q = x * x * th1
    assert q.partial("x") == 2 * (x * th1)
    assert q.partial("th2").is_zero()


def test_partial_product_rule(chart):
    # d/dz(fg) = (df)g + (-1)^{|z||f|} f (dg) for the left derivative
    x = GFunction.var(chart, "x")
    th1 = GFunction.var(chart, "th1")
    th2 = GFunction.var(chart, "th2")
    w = GFunction.var(chart, "w")
    for name, dz in (("th1", 1), ("w", -1), ("x", 0)):
        for f, g in [(th1, th2 * x), (th1 * w, th2), (x * th2, w)]:
            lhs = (f * g).partial(name)
            sign = -1 if (dz * f.degree) % 2 else 1
            rhs = f.partial(name) * g + (f * g.partial(name)).scale(sign)
            assert lhs == rhs, (name, f, g)


def test_body(chart):
    x = GFunction.var(chart, "x")
    th1 = GFunction.var(chart, "th1")
    w = GFunction.var(chart, "w")
    f = x * x + 3
    assert f.body() == f
    g = x * (th1 * w) + x
    assert g.body() == x
    assert g.eval_body({"x": 2}) == Fraction(2)


def test_monomial_enumeration(chart):
    # graded monomials of degree 0 with cap 2: the constant and th*w pairs
    got = set(graded_monomials(chart, 0, cap=2))
    assert (0, 0, 0, 0) in got
    assert (0, 1, 0, 1) in got
    for m in got:
        assert chart.monomial_degree(m) == 0
    basis = monomials(chart, 1, max_weight0=1, cap=2)
    assert all(chart.monomial_degree(m) == 1 for m in basis)
    assert (0, 1, 0, 0) in basis
    assert (1, 1, 0, 0) in basis  # x*th1


def test_mul_monomials_zero_on_odd_square(chart):
    m1 = (0, 1, 0, 0)
    assert mul_monomials(chart, m1, m1) is None


def test_gaussian_scalars():
    ch = Chart.build([("x", 0), ("th", 1)], scalars=GAUSSIAN)
    th = GFunction.var(ch, "th")
    f = th * I
    assert f * f == 0
    assert (f + th) == th * GaussianRational(1, 1)


def test_json_roundtrip(chart):
    x = GFunction.var(chart, "x")
    th1 = GFunction.var(chart, "th1")
    f = x * th1 - th1.scale(2)
    data = gfunction_to_json(f)
    back = gfunction_from_json(chart, data)
    assert back == f
    cjson = chart_to_json(chart)
    assert chart_from_json(cjson) == chart


def test_json_rejects_duplicates(chart):
    data = {
        "degree": 1,
        "terms": [
            {"exps": [0, 1, 0, 0], "num": 1, "den": 1},
            {"exps": [0, 1, 0, 0], "num": 2, "den": 1},
        ],
    }
    with pytest.raises(ValidationError):
        gfunction_from_json(chart, data)
