"""Differentials on shifted generalized tangent bundles and their reports."""

import random
from fractions import Fraction

import pytest

from gradedgeom import (
    Bivector,
    CourantData,
    DeltaSpec,
    Form,
    GCSMap,
    GFunction,
    GenSection,
    HomologicalSection,
    SKEW,
    SYM,
    Section,
    VectorField,
    check_delta_axioms,
    complex_gcs,
    cotangent_frame,
    d_form,
    d_primitive,
    dee,
    delta_apply,
    delta_from_section,
    delta_section,
    dirac_delta_compat,
    dorfman,
    gcs_delta_compat,
    plug,
    symplectic_gcs,
    tangent_algebroid,
    tangent_frame,
    vf_to_section,
)
from gradedgeom.errors import (
    ArityMismatch,
    ChartMismatch,
    DegreeMismatch,
    FrameMismatch,
    PreconditionUnmet,
    UnsolvableError,
)
from gradedgeom.gralg import Chart
from gradedgeom.sampling import random_gen_section


def gf(chart, name):
    return GFunction.var(chart, name)


def xth_chart():
    return Chart.build([("x", 0), ("th", 1)])


def xthw_chart():
    return Chart.build([("x", 0), ("th", 1), ("w", -1)])


def plain_spec():
    chart = xth_chart()
    Q = VectorField(chart, 1, {"x": gf(chart, "th")})
    return DeltaSpec(CourantData(chart, 0), Q)


def twisted_data(chart):
    # the closed twist -dx dth dw on a three coordinate chart
    fr = tangent_frame(chart, 0)
    H = Form(chart, fr, 3, 0, SKEW, {(0, 1, 2): GFunction.one(chart).scale(-1)})
    return CourantData(chart, 0, H)


def homological_theta(chart):
    fr = tangent_frame(chart, 0)
    w, th = gf(chart, "w"), gf(chart, "th")
    return Form(chart, fr, 2, 1, SKEW, {(1, 1): w.scale(-2), (1, 2): th})


def twisted_bivector(chart):
    cf = cotangent_frame(chart, 0)
    th, w = gf(chart, "th"), gf(chart, "w")
    one = GFunction.one(chart)
    return Bivector(Form(chart, cf, 2, 0, SKEW, {
        (0, 1): th, (0, 2): w.scale(-1), (1, 2): one - th * w,
    }))


def rotation_blocks():
    return {
        ("x2", "x1"): 1, ("x1", "x2"): -1,
        ("th2", "th1"): 1, ("th1", "th2"): -1,
    }


class TestDeltaSpec:
    def test_point_value(self):
        # the operator pushes the odd frame direction onto the even one
        chart = xth_chart()
        fr = tangent_frame(chart, 0)
        spec = plain_spec()
        a = GenSection(chart, 0, -1, Section.unit(chart, fr, 1),
                       Form.zero(chart, fr, 1, -1, SKEW))
        out = delta_apply(spec, a)
        assert out.degree == 0
        assert out.x.comps == {0: GFunction.one(chart)}
        assert out.xi.is_zero()

    def test_zero_spec_acts_by_zero(self):
        chart = xth_chart()
        spec = DeltaSpec(CourantData(chart, 0))
        assert spec.underlying().is_zero()
        rng = random.Random(0)
        for _ in range(4):
            psi = random_gen_section(rng, chart, 0)
            assert delta_apply(spec, psi).is_zero()

    def test_form_only_spec_is_flat_on_tangent_parts(self):
        chart = xth_chart()
        fr = tangent_frame(chart, 0)
        theta = Form(chart, fr, 2, 1, SKEW, {(0, 1): GFunction.one(chart)})
        spec = DeltaSpec(CourantData(chart, 0), None, theta)
        rng = random.Random(1)
        for _ in range(4):
            psi = random_gen_section(rng, chart, 0)
            got = delta_apply(spec, psi)
            assert got.x.is_zero()
            assert (got.xi - plug(theta, [psi.x])).is_zero()

    def test_underlying_sign_flips_with_odd_shift(self):
        chart = xth_chart()
        Q = VectorField(chart, 1, {"x": gf(chart, "th")})
        even = DeltaSpec(CourantData(chart, 0), Q)
        odd = DeltaSpec(CourantData(chart, 1), Q)
        assert (even.underlying() - Q).is_zero()
        assert (odd.underlying() - Q.scale(-1)).is_zero()

    def test_validation(self):
        chart = xthw_chart()
        fr = tangent_frame(chart, 0)
        data = CourantData(chart, 0)
        one = GFunction.one(chart)
        with pytest.raises(DegreeMismatch):
            DeltaSpec(data, VectorField(chart, -1, {"x": gf(chart, "w")}))
        with pytest.raises(FrameMismatch):
            DeltaSpec(data, None, Form.zero(chart, cotangent_frame(chart, 0),
                                            2, 1, SKEW))
        with pytest.raises(ArityMismatch):
            DeltaSpec(data, None, Form.zero(chart, fr, 3, 1, SKEW))
        with pytest.raises(DegreeMismatch):
            DeltaSpec(data, None, Form(chart, fr, 2, 0, SKEW, {(1, 2): one}))
        with pytest.raises(ChartMismatch):
            DeltaSpec(data, VectorField(xth_chart(), 1, {"x": gf(xth_chart(), "th")}))


class TestAxiomBattery:
    names = [
        "module_rule", "metric_rule", "anchor_rule", "anchor_dee_equivalent",
        "bracket_derivation", "derivation_iff_closed", "square_zero",
        "square_conditions", "square_routes_agree", "contraction_exact",
    ]

    def test_plain_field_passes_everything(self):
        rep = check_delta_axioms(plain_spec(), samples=6, rng=random.Random(2))
        assert rep.title == "differential (ell=0)"
        assert [r.name for r in rep.results] == self.names
        assert rep.all_pass

    def test_square_breaks_when_flow_moves_theta(self):
        # closed theta with a nonzero Lie derivative: only the square fails
        chart = xth_chart()
        Q = VectorField(chart, 1, {"x": gf(chart, "th")})
        theta = Form(chart, tangent_frame(chart, 0), 2, 1, SKEW,
                     {(0, 1): GFunction.one(chart)})
        spec = DeltaSpec(CourantData(chart, 0), Q, theta)
        rep = check_delta_axioms(spec, samples=6, rng=random.Random(3))
        byname = {r.name: r.verdict for r in rep.results}
        for name in self.names:
            want = "FAIL" if name in ("square_zero", "square_conditions",
                                      "contraction_exact") else "PASS"
            assert byname[name] == want, name

    def test_square_breaks_on_self_commutator(self):
        chart = Chart.build([("x", 0), ("th1", 1), ("th2", 1)])
        th1, th2, x = gf(chart, "th1"), gf(chart, "th2"), gf(chart, "x")
        Q = VectorField(chart, 1, {"x": th1 + x * th2})
        qq = Q.commutator(Q)
        assert qq.comps == {"x": (th1 * th2).scale(2)}
        rep = check_delta_axioms(DeltaSpec(CourantData(chart, 0), Q),
                                 samples=5, rng=random.Random(4))
        byname = {r.name: r.verdict for r in rep.results}
        assert byname["square_zero"] == "FAIL"
        assert byname["square_conditions"] == "FAIL"
        assert byname["square_routes_agree"] == "PASS"
        assert byname["bracket_derivation"] == "PASS"
        assert byname["derivation_iff_closed"] == "PASS"

    def test_open_theta_breaks_the_derivation_rule(self):
        chart = xthw_chart()
        fr = tangent_frame(chart, 0)
        theta = Form(chart, fr, 2, 1, SKEW,
                     {(1, 1): gf(chart, "x") * gf(chart, "w")})
        spec = DeltaSpec(CourantData(chart, 0), None, theta)
        rep = check_delta_axioms(spec, samples=5, rng=random.Random(5))
        byname = {r.name: r.verdict for r in rep.results}
        assert byname["bracket_derivation"] == "FAIL"
        assert byname["derivation_iff_closed"] == "PASS"
        assert byname["square_zero"] == "PASS"

    def test_homological_spec_with_and_without_twist(self):
        chart = xthw_chart()
        Q = VectorField(chart, 1, {"x": gf(chart, "th")})
        theta = homological_theta(chart)
        for data in (CourantData(chart, 0), twisted_data(chart)):
            rep = check_delta_axioms(DeltaSpec(data, Q, theta), samples=5,
                                     rng=random.Random(6))
            assert rep.all_pass

    def test_twisted_spec_with_transverse_field(self):
        chart = xthw_chart()
        fr = tangent_frame(chart, 0)
        one = GFunction.one(chart)
        Q = VectorField(chart, 1, {"x": gf(chart, "th"), "w": one})
        theta = Form(chart, fr, 2, 1, SKEW, {(0, 1): one.scale(-1)})
        rep = check_delta_axioms(DeltaSpec(twisted_data(chart), Q, theta),
                                 samples=5, rng=random.Random(7))
        assert rep.all_pass

    def test_shift_one_battery(self):
        chart = xth_chart()
        Q = VectorField(chart, 1, {"x": gf(chart, "th")})
        rep = check_delta_axioms(DeltaSpec(CourantData(chart, 1), Q),
                                 samples=5, rng=random.Random(8))
        assert rep.title == "differential (ell=1)"
        assert rep.all_pass

    def test_negative_shift_battery_with_twist(self):
        chart = Chart.build([("x1", 0), ("x2", 0), ("th1", 1), ("th2", 1)])
        fr = tangent_frame(chart, 0)
        one = GFunction.one(chart)
        H = Form(chart, fr, 3, 2, SKEW, {(0, 2, 2): one, (0, 3, 3): one})
        data = CourantData(chart, -2, H)
        th1, th2 = gf(chart, "th1"), gf(chart, "th2")
        for Q in (VectorField(chart, 1, {"x1": th1, "x2": th2}),
                  VectorField(chart, 1, {"x1": th2, "x2": th1.scale(-1)})):
            rep = check_delta_axioms(DeltaSpec(data, Q), samples=3,
                                     rng=random.Random(9))
            assert rep.all_pass


class TestPrimitive:
    def test_roundtrip_on_closed_forms(self):
        chart = xthw_chart()
        fr = tangent_frame(chart, 0)
        alg = tangent_algebroid(chart, 0)
        one = GFunction.one(chart)
        targets = [
            Form(chart, fr, 2, 0, SKEW, {(1, 2): one}),
            Form(chart, fr, 3, 0, SKEW, {(0, 1, 2): one.scale(-1)}),
            homological_theta(chart),
        ]
        for omega in targets:
            eta = d_primitive(alg, omega)
            assert eta.arity == omega.arity - 1
            assert (d_form(alg, eta) - omega).is_zero()

    def test_zero_target_gives_zero(self):
        chart = xthw_chart()
        alg = tangent_algebroid(chart, 0)
        eta = d_primitive(alg, Form.zero(chart, tangent_frame(chart, 0), 2, 1, SKEW))
        assert eta.is_zero()
        assert eta.arity == 1

    def test_open_form_has_no_primitive(self):
        chart = xthw_chart()
        fr = tangent_frame(chart, 0)
        alg = tangent_algebroid(chart, 0)
        bad = Form(chart, fr, 2, 0, SKEW, {(0, 2): gf(chart, "th")})
        assert not d_form(alg, bad).is_zero()
        with pytest.raises(UnsolvableError):
            d_primitive(alg, bad)


class TestHomologicalSection:
    def test_section_reproduces_the_operator(self):
        chart = xthw_chart()
        Q = VectorField(chart, 1, {"x": gf(chart, "th")})
        theta = homological_theta(chart)
        for data in (CourantData(chart, 0), twisted_data(chart)):
            spec = DeltaSpec(data, Q, theta)
            hs = delta_section(spec)
            assert hs.phi.degree == 1
            rng = random.Random(10)
            for _ in range(6):
                psi = random_gen_section(rng, chart, 0)
                assert (hs.apply(psi) - delta_apply(spec, psi)).is_zero()

    def test_section_at_shift_one(self):
        # the primitive exists here even though the shift is exceptional
        chart = xthw_chart()
        fr = tangent_frame(chart, 0)
        Q = VectorField(chart, 1, {"x": gf(chart, "th")})
        theta = Form(chart, fr, 2, 0, SKEW, {(1, 2): GFunction.one(chart)})
        spec = DeltaSpec(CourantData(chart, 1), Q, theta)
        hs = delta_section(spec)
        rng = random.Random(11)
        for _ in range(6):
            psi = random_gen_section(rng, chart, 1)
            assert (hs.apply(psi) - delta_apply(spec, psi)).is_zero()
        hs2, rep = delta_from_section(spec.data, hs.phi, samples=4,
                                      rng=random.Random(12))
        assert rep.all_pass

    def test_report_for_homological_section(self):
        chart = xthw_chart()
        data = twisted_data(chart)
        Q = VectorField(chart, 1, {"x": gf(chart, "th")})
        spec = DeltaSpec(data, Q, homological_theta(chart))
        hs, rep = delta_from_section(data, delta_section(spec).phi,
                                     samples=5, rng=random.Random(13))
        assert rep.title == "homological section (ell=0)"
        assert [r.name for r in rep.results] == [
            "square_bracket_identity", "squares_to_zero", "self_bracket_exact",
        ]
        assert rep.all_pass
        assert rep.result("self_bracket_exact").reason == "the self-bracket vanishes"

    def test_exact_sections_act_by_zero(self):
        chart = xth_chart()
        data = CourantData(chart, 0)
        phi = dee(data, gf(chart, "x") * gf(chart, "th"))
        hs, rep = delta_from_section(data, phi, samples=4, rng=random.Random(14))
        assert rep.all_pass
        rng = random.Random(15)
        for _ in range(4):
            psi = random_gen_section(rng, chart, 0)
            assert hs.apply(psi).is_zero()

    def test_open_self_bracket_is_refused(self):
        chart = xth_chart()
        fr = tangent_frame(chart, 0)
        data = CourantData(chart, 0)
        x, th = gf(chart, "x"), gf(chart, "th")
        phi = GenSection(chart, 0, 1,
                         vf_to_section(VectorField(chart, 1, {"x": th}), fr, 0),
                         Form(chart, fr, 1, 1, SKEW, {(0,): x * th}))
        pp = dorfman(data, phi, phi)
        assert pp.x.is_zero() and not pp.xi.is_zero()
        hs, rep = delta_from_section(data, phi, samples=4, rng=random.Random(16))
        byname = {r.name: r for r in rep.results}
        assert byname["square_bracket_identity"].verdict == "PASS"
        assert byname["squares_to_zero"].verdict == "FAIL"
        res = byname["self_bracket_exact"]
        assert res.verdict == "FAIL"
        assert res.reason == "the self-bracket form part is not closed"

    def test_tangent_self_bracket_is_refused(self):
        chart = Chart.build([("x", 0), ("th1", 1), ("th2", 1)])
        fr = tangent_frame(chart, 0)
        data = CourantData(chart, 0)
        Q = VectorField(chart, 1, {"x": gf(chart, "th1") + gf(chart, "x") * gf(chart, "th2")})
        phi = GenSection(chart, 0, 1, vf_to_section(Q, fr, 0),
                         Form.zero(chart, fr, 1, 1, SKEW))
        hs, rep = delta_from_section(data, phi, samples=4, rng=random.Random(17))
        byname = {r.name: r for r in rep.results}
        assert byname["squares_to_zero"].verdict == "FAIL"
        res = byname["self_bracket_exact"]
        assert res.verdict == "FAIL"
        assert res.reason == "the self-bracket has a tangent part"

    def test_degree_guard(self):
        chart = Chart.build([("x", 0), ("th1", 1), ("th2", 1)])
        fr = tangent_frame(chart, 0)
        data = CourantData(chart, 0)
        bad = GenSection(
            chart, 0, 2,
            vf_to_section(VectorField(chart, 2, {"x": gf(chart, "th1") * gf(chart, "th2")}), fr, 0),
            Form.zero(chart, fr, 1, 2, SKEW))
        with pytest.raises(DegreeMismatch):
            HomologicalSection(data, bad)

    def test_delta_section_needs_an_exact_form(self):
        chart = xthw_chart()
        fr = tangent_frame(chart, 0)
        theta = Form(chart, fr, 2, 1, SKEW,
                     {(1, 1): gf(chart, "x") * gf(chart, "w")})
        spec = DeltaSpec(CourantData(chart, 0), None, theta)
        with pytest.raises(UnsolvableError):
            delta_section(spec)


class TestDiracDeltaCompat:
    def chart(self):
        return Chart.build([("x1", 0), ("x2", 0), ("th", 1)])

    def test_invariant_bivector_is_compatible(self):
        chart = self.chart()
        data = CourantData(chart, 0)
        Q = VectorField(chart, 1, {"x1": gf(chart, "th")})
        Pi = Bivector.from_components(chart, 0, {("x1", "x2"): GFunction.one(chart)})
        rep = dirac_delta_compat(DeltaSpec(data, Q), Pi, samples=5,
                                 rng=random.Random(21))
        assert rep.title == "delta on a bivector graph (ell=0)"
        assert [r.name for r in rep.results] == [
            "bivector_identity", "bracket_identity", "criteria_agree",
        ]
        assert rep.all_pass

    def test_correction_cancels_the_flow(self):
        # L_Q Pi is nonzero but the 2-form term balances it exactly
        chart = self.chart()
        th = gf(chart, "th")
        one = GFunction.one(chart)
        Pi = Bivector.from_components(chart, 0,
                                      {("x1", "x2"): one, ("x2", "th"): th})
        Q = VectorField(chart, 1, {"x1": th})
        theta = Form(chart, tangent_frame(chart, 0), 2, 1, SKEW, {(1, 2): one})
        rep = dirac_delta_compat(DeltaSpec(CourantData(chart, 0), Q, theta),
                                 Pi, samples=6, rng=random.Random(5))
        assert rep.all_pass

    def test_moving_bivector_without_correction_fails(self):
        chart = self.chart()
        th = gf(chart, "th")
        one = GFunction.one(chart)
        Pi = Bivector.from_components(chart, 0,
                                      {("x1", "x2"): one, ("x2", "th"): th})
        Q = VectorField(chart, 1, {"x1": th})
        rep = dirac_delta_compat(DeltaSpec(CourantData(chart, 0), Q), Pi,
                                 samples=6, rng=random.Random(3))
        assert rep.result("bivector_identity").verdict == "FAIL"
        assert rep.result("bivector_identity").witness == {"pair": ("x1", "x2")}
        assert rep.result("bracket_identity").verdict == "FAIL"
        assert rep.result("criteria_agree").verdict == "PASS"

    def test_trivial_spec_is_always_compatible(self):
        chart = self.chart()
        th = gf(chart, "th")
        one = GFunction.one(chart)
        Pi = Bivector.from_components(chart, 0,
                                      {("x1", "x2"): one, ("x2", "th"): th})
        rep = dirac_delta_compat(DeltaSpec(CourantData(chart, 0)), Pi,
                                 samples=4, rng=random.Random(4))
        assert rep.all_pass

    def test_symmetric_graph_at_shift_one(self):
        chart = xth_chart()
        cf = cotangent_frame(chart, 0)
        Pi = Bivector(Form(chart, cf, 2, 1, SYM, {(0, 0): gf(chart, "th")}))
        Q = VectorField(chart, 1, {"x": gf(chart, "th")})
        rep = dirac_delta_compat(DeltaSpec(CourantData(chart, 1), Q), Pi,
                                 samples=5, rng=random.Random(51))
        assert rep.all_pass

    def test_twisted_compatibility(self):
        chart = xthw_chart()
        one = GFunction.one(chart)
        Q = VectorField(chart, 1, {"x": gf(chart, "th"), "w": one})
        theta = Form(chart, tangent_frame(chart, 0), 2, 1, SKEW,
                     {(0, 1): one.scale(-1)})
        spec = DeltaSpec(twisted_data(chart), Q, theta)
        rep = dirac_delta_compat(spec, twisted_bivector(chart), samples=4,
                                 rng=random.Random(42))
        assert rep.all_pass

    def test_preconditions(self):
        chart = Chart.build([("y1", 0), ("y2", 0), ("y3", 0)])
        one = GFunction.one(chart)
        Pi = Bivector.from_components(
            chart, 0, {("y1", "y2"): one, ("y2", "y3"): gf(chart, "y2")})
        with pytest.raises(PreconditionUnmet):
            dirac_delta_compat(DeltaSpec(CourantData(chart, 0)), Pi)
        with pytest.raises(ChartMismatch):
            dirac_delta_compat(DeltaSpec(CourantData(xth_chart(), 0)), Pi)
        chart3 = xthw_chart()
        fr3 = tangent_frame(chart3, 0)
        open_h = Form(chart3, fr3, 3, 0, SKEW, {
            (0, 1, 2): GFunction.one(chart3) + gf(chart3, "th") * gf(chart3, "w")})
        spec = DeltaSpec(CourantData(chart3, 0, open_h))
        with pytest.raises(PreconditionUnmet):
            dirac_delta_compat(spec, Bivector.from_components(chart3, 0, {}))


class TestGCSDeltaCompat:
    def setup_plane(self):
        chart = Chart.build([("x1", 0), ("x2", 0), ("th1", 1), ("th2", 1)])
        fr = tangent_frame(chart, 0)
        one = GFunction.one(chart)
        omega = Form(chart, fr, 2, 1, SKEW, {(0, 2): one, (1, 3): one})
        return chart, omega, symplectic_gcs(omega), CourantData(chart, -1)

    def test_symplectic_flow_is_compatible(self):
        chart, omega, J, data = self.setup_plane()
        Q = VectorField(chart, 1, {"x1": gf(chart, "th2"),
                                   "x2": gf(chart, "th1").scale(-1)})
        rep = gcs_delta_compat(DeltaSpec(data, Q), J, omega=omega,
                               samples=5, rng=random.Random(26))
        assert rep.title == "delta with a generalized complex map (ell=-1)"
        assert [r.name for r in rep.results] == [
            "commutes", "theta_vanishes", "flow_preserves_form",
            "characterization_agree",
        ]
        assert rep.all_pass

    def test_non_symplectic_flow_fails_both_sides(self):
        chart, omega, J, data = self.setup_plane()
        Q = VectorField(chart, 1, {"x1": gf(chart, "th1")})
        rep = gcs_delta_compat(DeltaSpec(data, Q), J, omega=omega,
                               samples=5, rng=random.Random(27))
        byname = {r.name: r.verdict for r in rep.results}
        assert byname == {
            "commutes": "FAIL", "theta_vanishes": "PASS",
            "flow_preserves_form": "FAIL", "characterization_agree": "PASS",
        }

    def test_form_part_blocks_compatibility(self):
        chart, omega, J, data = self.setup_plane()
        one = GFunction.one(chart)
        Q = VectorField(chart, 1, {"x1": gf(chart, "th2"),
                                   "x2": gf(chart, "th1").scale(-1)})
        theta = Form(chart, tangent_frame(chart, 0), 2, 2, SKEW, {(2, 3): one})
        rep = gcs_delta_compat(DeltaSpec(data, Q, theta), J, omega=omega,
                               samples=5, rng=random.Random(28))
        byname = {r.name: r.verdict for r in rep.results}
        assert byname == {
            "commutes": "FAIL", "theta_vanishes": "FAIL",
            "flow_preserves_form": "PASS", "characterization_agree": "PASS",
        }

    def test_map_only_mode(self):
        chart, omega, J, data = self.setup_plane()
        Q = VectorField(chart, 1, {"x1": gf(chart, "th2"),
                                   "x2": gf(chart, "th1").scale(-1)})
        rep = gcs_delta_compat(DeltaSpec(data, Q), J, samples=5,
                               rng=random.Random(29))
        assert [r.name for r in rep.results] == ["commutes"]
        assert rep.all_pass

    def test_twisted_complex_map_commutes(self):
        chart = Chart.build([("x1", 0), ("x2", 0), ("th1", 1), ("th2", 1)])
        fr = tangent_frame(chart, 0)
        one = GFunction.one(chart)
        J = complex_gcs(chart, -2, rotation_blocks())
        H = Form(chart, fr, 3, 2, SKEW, {(0, 2, 2): one, (0, 3, 3): one})
        data = CourantData(chart, -2, H)
        Q = VectorField(chart, 1, {"x1": gf(chart, "th2"),
                                   "x2": gf(chart, "th1").scale(-1)})
        rep = gcs_delta_compat(DeltaSpec(data, Q), J, samples=4,
                               rng=random.Random(64))
        assert rep.all_pass

    def test_trivial_even_symplectic(self):
        chart = Chart.build([("x1", 0), ("x2", 0)])
        fr = tangent_frame(chart, 0)
        omega = Form(chart, fr, 2, 0, SKEW, {(0, 1): GFunction.one(chart)})
        rep = gcs_delta_compat(DeltaSpec(CourantData(chart, 0)),
                               symplectic_gcs(omega), omega=omega,
                               samples=4, rng=random.Random(30))
        assert rep.all_pass

    def test_preconditions(self):
        chart, omega, J, data = self.setup_plane()
        Q = VectorField(chart, 1, {"x1": gf(chart, "th2"),
                                   "x2": gf(chart, "th1").scale(-1)})
        spec = DeltaSpec(data, Q)
        with pytest.raises(PreconditionUnmet, match="come from the given form"):
            gcs_delta_compat(spec, J, omega=omega.scale(2))
        ident = GCSMap.from_blocks(chart, -1, a={(k, k): 1 for k in range(4)},
                                   d={(k, k): 1 for k in range(4)})
        with pytest.raises(PreconditionUnmet, match="structure checks"):
            gcs_delta_compat(spec, ident)
        fr = tangent_frame(chart, 0)
        one = GFunction.one(chart)
        J2 = complex_gcs(chart, -2, rotation_blocks())
        H = Form(chart, fr, 3, 2, SKEW, {(0, 2, 2): one, (0, 3, 3): one})
        twisted = DeltaSpec(CourantData(chart, -2, H))
        dummy = Form(chart, fr, 2, 2, SKEW, {(2, 3): one})
        with pytest.raises(PreconditionUnmet, match="vanishing twist"):
            gcs_delta_compat(twisted, J2, omega=dummy)
