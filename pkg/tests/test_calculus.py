"""Sections, forms, the differential, Lie derivatives, Schouten brackets."""

import random

import pytest

from gradedgeom.calculus import (
    SKEW,
    SYM,
    Algebroid,
    Form,
    Frame,
    Section,
    VectorField,
    check_cartan,
    cotangent_frame,
    d_form,
    d_function,
    form1_to_section,
    interior,
    lie_form,
    lie_multivector,
    normalize_frame_tuple,
    pair_form_section,
    schouten,
    section_as_dual_form,
    section_from_dual_form,
    section_to_vf,
    tangent_algebroid,
    tangent_frame,
    vf_to_section,
    wedge,
)
from gradedgeom.gralg import Chart, GFunction
from gradedgeom import sampling

from oracles import d_components_tangent


@pytest.fixture
def chart():
    return Chart.build([("x", 0), ("th", 1)])


@pytest.fixture
def alg(chart):
    return tangent_algebroid(chart, 0)


def gf(chart, name):
    return GFunction.var(chart, name)


class TestVectorFields:
    def test_apply_and_degree(self, chart):
        x, th = gf(chart, "x"), gf(chart, "th")
        X = VectorField(chart, 0, {"x": x, "th": th})
        assert X.apply(x * th) == x * th + x * th
        D = VectorField.coordinate(chart, "th")
        assert D.degree == -1
        assert D.apply(th * x) == x

    def test_commutator_frozen(self, chart):
        x, th = gf(chart, "x"), gf(chart, "th")
        d_x = VectorField.coordinate(chart, "x")
        d_th = VectorField.coordinate(chart, "th")
        # [d_th, th d_th] = d_th for the odd coordinate
        assert d_th.commutator(d_th.fmul(th)) == d_th
        # [th d_x, d_th] = d_x
        assert d_x.fmul(th).commutator(d_th) == d_x
        # odd-odd commutator is the anticommutator: [d_th, th d_x] = d_x too
        assert d_th.commutator(d_x.fmul(th)) == d_x

    def test_commutator_derivation_property(self, chart):
        rng = random.Random(3)
        for _ in range(25):
            X = sampling.random_vector_field(rng, chart)
            Y = sampling.random_vector_field(rng, chart)
            f = sampling.random_function(rng, chart)
            sign = -1 if (X.degree * Y.degree) % 2 else 1
            lhs = X.commutator(Y).apply(f)
            rhs = X.apply(Y.apply(f)) - Y.apply(X.apply(f)).scale(sign)
            assert lhs == rhs


class TestFramesAndConversions:
    def test_tangent_frame_degrees(self, chart):
        assert tangent_frame(chart, 0).degrees == (0, -1)
        assert tangent_frame(chart, 1).degrees == (-1, -2)
        assert cotangent_frame(chart, 0).degrees == (0, 1)
        assert tangent_frame(chart, 1).dual() == cotangent_frame(chart, -1)

    def test_section_vf_roundtrip(self, chart):
        rng = random.Random(5)
        for shift in (0, 1, -1, 2):
            frame = tangent_frame(chart, shift)
            for _ in range(10):
                s = sampling.random_section(rng, chart, frame)
                X = section_to_vf(s, shift)
                assert X.degree == s.degree + shift
                assert vf_to_section(X, frame, shift) == s

    def test_double_dual_twist(self, chart):
        frame = tangent_frame(chart, 0)
        rng = random.Random(9)
        for _ in range(10):
            s = sampling.random_section(rng, chart, frame)
            back = section_from_dual_form(section_as_dual_form(s))
            assert back == s

    def test_dual_action_sign(self, chart):
        # X(omega) = (-1)^{|X||omega|} omega(X)
        frame = tangent_frame(chart, 0)
        rng = random.Random(11)
        for _ in range(20):
            s = sampling.random_section(rng, chart, frame)
            omega = sampling.random_form(rng, chart, frame, 1, SKEW)
            lhs = pair_form_section(
                section_as_dual_form(s), form1_to_section(omega)
            )
            sign = -1 if (s.degree * omega.degree) % 2 else 1
            rhs = pair_form_section(omega, s).scale(sign)
            assert lhs == rhs


class TestFormEvaluation:
    def test_normalize_tuple(self, chart):
        frame = tangent_frame(chart, 0)  # degrees (0, -1)
        assert normalize_frame_tuple(frame, SKEW, (1, 0)) == ((0, 1), -1)
        assert normalize_frame_tuple(frame, SKEW, (1, 1)) == ((1, 1), 1)
        assert normalize_frame_tuple(frame, SKEW, (0, 0)) is None
        assert normalize_frame_tuple(frame, SYM, (1, 1)) is None
        assert normalize_frame_tuple(frame, SYM, (1, 0)) == ((0, 1), 1)

    def test_coefficient_pull(self, chart):
        # omega(f X) = (-1)^{|f||omega|} f omega(X)
        frame = tangent_frame(chart, 0)
        rng = random.Random(13)
        for flavor in (SKEW, SYM):
            for _ in range(15):
                omega = sampling.random_form(rng, chart, frame, 1, flavor)
                s = sampling.random_section(rng, chart, frame)
                f = sampling.random_function(rng, chart)
                sign = -1 if (f.degree * omega.degree) % 2 else 1
                lhs = omega.eval([s.fmul(f)])
                rhs = (f * omega.eval([s])).scale(sign)
                assert lhs == rhs


class TestDifferentialOracles:
    def test_d_of_coordinates(self, chart, alg):
        one = GFunction.one(chart)
        d_x = alg.unit(0)
        d_th = alg.unit(1)
        dth = d_function(alg, gf(chart, "th"))
        assert pair_form_section(dth, d_th) == one
        assert pair_form_section(dth, d_x).is_zero()
        dx = d_function(alg, gf(chart, "x"))
        assert pair_form_section(dx, d_x) == one

    def test_component_differential_cross_check(self, chart):
        alg = tangent_algebroid(chart, 0)
        rng = random.Random(17)
        for arity in (0, 1, 2):
            for _ in range(12):
                omega = sampling.random_form(rng, chart, alg.frame, arity, SKEW)
                assert d_form(alg, omega) == d_components_tangent(omega)

    def test_component_differential_bigger_chart(self):
        chart = Chart.build([("x", 0), ("th", 1), ("w", -1)])
        alg = tangent_algebroid(chart, 0)
        rng = random.Random(19)
        for arity in (0, 1, 2):
            for _ in range(10):
                omega = sampling.random_form(rng, chart, alg.frame, arity, SKEW)
                assert d_form(alg, omega) == d_components_tangent(omega)

    def test_lie_and_interior_frozen(self, chart, alg):
        one = GFunction.one(chart)
        x = gf(chart, "x")
        d_x = alg.unit(0)
        dx = d_function(alg, x)
        assert interior(d_x, dx).as_function() == one
        assert lie_form(alg, d_x.fmul(x), dx) == dx


class TestPropertySuites:
    CHARTS = [
        [("x", 0), ("th", 1)],
        [("x", 0), ("th", 1), ("w", -1)],
        [("x", 0), ("y", 0), ("u", 2)],
    ]

    @pytest.mark.parametrize("ell", [0, 1, -1, 2])
    def test_full_suite(self, ell):
        for spec in self.CHARTS:
            chart = Chart.build(spec)
            alg = tangent_algebroid(chart, ell)
            report = check_cartan(alg, rng=random.Random(23), samples=4)
            failures = [r.name for r in report.results if r.verdict != "PASS"]
            assert not failures, (ell, spec, failures)


class TestBrokenAlgebroid:
    def make_broken(self):
        # constant structure functions failing the Jacobi identity:
        # [e1,e2]=e2, [e1,e3]=e3, [e2,e3]=e1
        chart = Chart.build([("x", 0), ("y", 0), ("z", 0)])
        frame = Frame([("e1", 0), ("e2", 0), ("e3", 0)])
        table = {(0, 1): (1, 1), (0, 2): (2, 1), (1, 2): (0, 1)}

        def anchor(s):
            return VectorField.zero(chart, s.degree)

        def bracket(s, t):
            out = Section.zero(chart, frame, s.degree + t.degree)
            for i, a in s.comps.items():
                for j, b in t.comps.items():
                    hit = table.get((i, j))
                    sgn = 1
                    if hit is None:
                        hit = table.get((j, i))
                        sgn = -1
                        if hit is None:
                            continue
                    k, s0 = hit
                    out = out + Section(
                        chart, frame, s.degree + t.degree, {k: (a * b).scale(sgn * s0)}
                    )
            return out

        return Algebroid(chart, 0, frame, anchor, bracket, name="broken"), chart, frame

    def test_jacobiator_nonzero(self):
        alg, chart, frame = self.make_broken()
        e1, e2, e3 = (alg.unit(i) for i in range(3))
        jac = (
            alg.bracket(e1, alg.bracket(e2, e3))
            - alg.bracket(alg.bracket(e1, e2), e3)
            - alg.bracket(e2, alg.bracket(e1, e3))
        )
        assert jac == alg.unit(0).scale(-2)

    def test_d_squared_detects_failure(self):
        alg, chart, frame = self.make_broken()
        eps1 = Form(chart, frame, 1, 0, SKEW, {(0,): GFunction.one(chart)})
        dd = d_form(alg, d_form(alg, eps1))
        assert not dd.is_zero()
        assert dd.comps[(0, 1, 2)] == GFunction.one(chart).scale(2)


class TestSchoutenFrozen:
    def test_vector_bracket_matches_commutator(self, chart, alg):
        rng = random.Random(29)
        for _ in range(10):
            x = sampling.random_section(rng, chart, alg.frame)
            y = sampling.random_section(rng, chart, alg.frame)
            lhs = schouten(
                alg, section_as_dual_form(x), section_as_dual_form(y)
            )
            rhs = section_as_dual_form(alg.bracket(x, y))
            assert lhs == rhs

    def test_wedge_unit_normalization(self, chart, alg):
        # decomposition handles the repeated odd slot with multiplicity two
        dual = alg.frame.dual()
        th = gf(chart, "th")
        U = Form(chart, dual, 2, -2, SKEW, {(1, 1): GFunction.one(chart)})
        V = section_as_dual_form(alg.unit(0).fmul(th * gf(chart, "x")))
        got = schouten(alg, U, V)
        flipped = schouten(alg, V, U)
        # graded symmetry pins the pair down
        sign = -1 if ((2 - 1 + U.degree) * (1 - 1 + V.degree)) % 2 else 1
        assert got == flipped.scale(-sign)
