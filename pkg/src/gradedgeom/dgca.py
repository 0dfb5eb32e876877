"""Differentials on twisted generalized tangent bundles.

A degree 1 operator on generalized sections is pinned down by a degree 1
vector field Q, a 2-form theta of degree 1 - ell over the tangent frame
and the twist carried by the underlying CourantData.  The module provides
the operator itself, the axiom battery for it, the equivalent route
through a bracketing section of degree 1 - ell, an exact linear solver for
primitives of closed forms, and the compatibility checks against bivector
graphs and generalized complex maps.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple

from .calculus import (
    SKEW,
    Form,
    Section,
    VectorField,
    Algebroid,
    canonical_tuples,
    cotangent_frame,
    d_form,
    lie_form,
    lie_multivector,
    plug,
    section_to_vf,
    vf_to_section,
)
from .courant import CourantData, GenSection, dee, dorfman, pairing
from .dirac_gc import (
    Bivector,
    GCSMap,
    _dz,
    gcs_checks,
    hamiltonian,
    poisson_bracket,
    symplectic_gcs,
    twisted_poisson_defects,
)
from .errors import (
    ArityMismatch,
    ChartMismatch,
    DegreeMismatch,
    FrameMismatch,
    PreconditionUnmet,
    ShiftMismatch,
    UnsolvableError,
)
from .gralg import Chart, GFunction, monomials
from .linalg import solve
from .reporting import FAIL, INDETERMINATE, PASS, CheckResult, Report
from .sampling import ensure_rng, random_function, random_gen_section
from .scalars import GAUSSIAN, GaussianRational


def _sgn(exp: int) -> int:
    return -1 if exp % 2 else 1


class DeltaSpec:
    """A degree 1 operator on generalized sections, pinned by (Q, theta).

    Q is a degree 1 vector field driving the tangent half, theta a 2-form
    of degree 1 - ell feeding tangent parts into form parts, and the
    CourantData supplies the shift and the twist.  The base derivation
    acting on coefficients is (-1)^ell Q.
    """

    __slots__ = ("data", "Q", "theta")

    def __init__(
        self,
        data: CourantData,
        Q: Optional[VectorField] = None,
        theta: Optional[Form] = None,
    ):
        chart = data.chart
        frame = data.alg.frame
        if Q is None or Q.is_zero():
            Q = VectorField.zero(chart, 1)
        if Q.chart != chart:
            raise ChartMismatch("vector field lives on a different chart")
        if Q.degree != 1:
            raise DegreeMismatch(f"base field has degree {Q.degree}, expected 1")
        want = 1 - data.ell
        if theta is None:
            theta = Form.zero(chart, frame, 2, want, SKEW)
        if theta.frame != frame:
            raise FrameMismatch("the 2-form must live over the tangent frame")
        if theta.arity != 2:
            raise ArityMismatch("the form part of a spec has arity 2")
        if not theta.is_zero() and theta.degree != want:
            raise DegreeMismatch(
                f"the 2-form has degree {theta.degree}, expected {want}"
            )
        self.data = data
        self.Q = Q
        self.theta = theta

    @property
    def chart(self) -> Chart:
        return self.data.chart

    @property
    def ell(self) -> int:
        return self.data.ell

    def underlying(self) -> VectorField:
        """The base derivation: Q carries the extra sign (-1)^ell."""
        return self.Q.scale(_sgn(self.ell))

    def q_section(self) -> Section:
        frame = self.data.alg.frame
        if self.Q.is_zero():
            return Section.zero(self.chart, frame, 1)
        return vf_to_section(self.Q, frame, 0)

    def correction(self) -> Form:
        """theta + i_Q H, the 2-form controlling all squared terms."""
        return self.theta + plug(self.data.H, [self.q_section()])

    def __repr__(self):
        return f"DeltaSpec(ell={self.ell}, Q={self.Q!r})"


def delta_apply(spec: DeltaSpec, a: GenSection) -> GenSection:
    """([Q,X], (-1)^ell {L_Q xi + theta(X,.) + H(Q,X,.)}) on a = (X, xi)."""
    data = spec.data
    if a.chart != spec.chart:
        raise ChartMismatch("section lives on a different chart")
    if a.ell != data.ell:
        raise ShiftMismatch("section built for a different shift")
    alg = data.alg
    qs = spec.q_section()
    x_part = alg.bracket(qs, a.x)
    form = lie_form(alg, qs, a.xi) + plug(spec.theta, [a.x]) + plug(data.H, [qs, a.x])
    return GenSection(
        spec.chart, data.ell, a.degree + 1, x_part, form.scale(_sgn(data.ell))
    )


# -- exact primitives ------------------------------------------------------


def _one(chart: Chart):
    return GaussianRational(1) if chart.scalars == GAUSSIAN else Fraction(1)


def _form_coords(omega: Form) -> dict:
    out = {}
    for tup, f in omega.comps.items():
        for mono, c in f.terms.items():
            if c:
                out[(tup, mono)] = c
    return out


def d_primitive(
    alg: Algebroid,
    omega: Form,
    max_weight0: Optional[int] = None,
    cap: Optional[int] = None,
) -> Form:
    """Solve d eta = omega for eta of one lower arity, same degree.

    The unknown runs over a monomial basis whose exponents are bounded by
    the target's plus one, which covers the polynomial homotopy.  Raises
    UnsolvableError when no combination matches, in particular whenever
    the target is not closed.
    """
    chart = alg.chart
    frame = alg.frame
    if omega.frame != frame:
        raise FrameMismatch("the target must live over the algebroid frame")
    if omega.arity < 1:
        raise ArityMismatch("a primitive needs arity at least 1")
    deg = omega.degree - alg.ell
    if omega.is_zero():
        return Form.zero(chart, frame, omega.arity - 1, deg, omega.flavor)
    if max_weight0 is None:
        max_weight0 = max(f.weight0() for f in omega.comps.values()) + 1
    if cap is None:
        cap = 2
        for f in omega.comps.values():
            for mono in f.terms:
                for e, d in zip(mono, chart.degrees):
                    if d != 0:
                        cap = max(cap, e + 1)
    unknowns = []
    images = []
    for tup in canonical_tuples(frame, omega.arity - 1, omega.flavor):
        comp_deg = deg + sum(frame.degrees[t] for t in tup)
        for mono in monomials(chart, comp_deg, max_weight0, cap):
            basis = Form(
                chart,
                frame,
                omega.arity - 1,
                deg,
                omega.flavor,
                {tup: GFunction(chart, comp_deg, {mono: _one(chart)})},
            )
            unknowns.append((tup, mono))
            images.append(_form_coords(d_form(alg, basis)))
    target = _form_coords(omega)
    keys = set(target)
    for img in images:
        keys.update(img)
    keys = sorted(keys)
    zero = chart.zero_scalar()
    rows = [[img.get(k, zero) for img in images] for k in keys]
    rhs = [target.get(k, zero) for k in keys]
    sol = solve(rows, rhs) if rows else None
    if sol is None:
        raise UnsolvableError("no polynomial primitive matches the target")
    comps: dict = {}
    for (tup, mono), c in zip(unknowns, sol):
        if not c:
            continue
        got = comps.get(tup)
        term = GFunction(chart, deg + sum(frame.degrees[t] for t in tup), {mono: c})
        comps[tup] = term if got is None else got + term
    return Form(chart, frame, omega.arity - 1, deg, omega.flavor, comps)


# -- the bracketing route --------------------------------------------------


class HomologicalSection:
    """A degree 1 - ell section acting by bracketing on all sections."""

    __slots__ = ("data", "phi")

    def __init__(self, data: CourantData, phi: GenSection):
        if phi.chart != data.chart:
            raise ChartMismatch("section lives on a different chart")
        if phi.ell != data.ell:
            raise ShiftMismatch("section built for a different shift")
        if not phi.is_zero() and phi.degree != 1 - data.ell:
            raise DegreeMismatch(
                f"bracketing section has degree {phi.degree}, expected {1 - data.ell}"
            )
        self.data = data
        self.phi = phi

    def apply(self, psi: GenSection) -> GenSection:
        return dorfman(self.data, self.phi, psi)

    def square(self, psi: GenSection) -> GenSection:
        return self.apply(self.apply(psi))

    def __repr__(self):
        return f"HomologicalSection(ell={self.data.ell})"


def delta_section(spec: DeltaSpec) -> HomologicalSection:
    """Rewrite the operator as bracketing by (Q, primitive of theta).

    Solvable exactly when theta has a polynomial primitive; at shift one
    the primitive has degree zero and may genuinely fail to exist, so the
    solver reports UnsolvableError instead of any hard-coded answer.
    """
    data = spec.data
    vart = d_primitive(data.alg, spec.theta)
    phi = GenSection(spec.chart, data.ell, 1 - data.ell, spec.q_section(), vart)
    return HomologicalSection(data, phi)


def _generators(data: CourantData) -> List[GenSection]:
    chart = data.chart
    frame = data.alg.frame
    out = []
    for A in range(chart.n):
        dA = chart.degrees[A]
        out.append(
            GenSection(
                chart,
                data.ell,
                -dA - data.ell,
                Section.unit(chart, frame, A),
                Form.zero(chart, frame, 1, -dA - data.ell, SKEW),
            )
        )
        out.append(
            GenSection(
                chart,
                data.ell,
                dA,
                Section.zero(chart, frame, dA + data.ell),
                Form(chart, frame, 1, dA, SKEW, {(A,): GFunction.one(chart)}),
            )
        )
    return out


def _span(data: CourantData, rng, samples: int) -> List[GenSection]:
    """Frame generators, coordinate multiples and random sections."""
    chart = data.chart
    units = _generators(data)
    out = list(units)
    for gen in units:
        for name in chart.coords:
            out.append(gen.action(GFunction.var(chart, name)))
    for _ in range(samples):
        out.append(random_gen_section(rng, chart, data.ell))
    return out


def delta_from_section(
    data: CourantData, phi: GenSection, samples: int = 8, rng=None
) -> Tuple[HomologicalSection, Report]:
    """Bracketing operator for a degree 1 - ell section, with its report.

    The report records the structural identity for the square, whether the
    operator actually squares to zero on a spanning family, and whether
    the self-bracket is the image of a function under the generalized
    differential, which is the standard sufficient condition.
    """
    rng = ensure_rng(rng)
    hs = HomologicalSection(data, phi)
    pool = _span(data, rng, samples)
    pp = dorfman(data, phi, phi)
    half = Fraction(1, 2)

    identity_wit = None
    square_wit = None
    for k, psi in enumerate(pool):
        sq = hs.square(psi)
        rhs = dorfman(data, pp, psi).scale(half)
        if identity_wit is None and not (sq - rhs).is_zero():
            identity_wit = {"sample": k}
        if square_wit is None and not sq.is_zero():
            square_wit = {"sample": k}
    results = [
        CheckResult(
            "square_bracket_identity",
            PASS if identity_wit is None else FAIL,
            witness=identity_wit,
        ),
        CheckResult(
            "squares_to_zero",
            PASS if square_wit is None else FAIL,
            witness=square_wit,
        ),
    ]

    if pp.is_zero():
        results.append(
            CheckResult("self_bracket_exact", PASS, reason="the self-bracket vanishes")
        )
    elif not pp.x.is_zero():
        results.append(
            CheckResult(
                "self_bracket_exact",
                FAIL,
                reason="the self-bracket has a tangent part",
            )
        )
    elif not d_form(data.alg, pp.xi).is_zero():
        results.append(
            CheckResult(
                "self_bracket_exact",
                FAIL,
                reason="the self-bracket form part is not closed",
            )
        )
    else:
        try:
            d_primitive(data.alg, pp.xi.scale(_sgn(data.ell)))
            results.append(CheckResult("self_bracket_exact", PASS))
        except UnsolvableError:
            results.append(
                CheckResult(
                    "self_bracket_exact",
                    INDETERMINATE,
                    reason="no polynomial primitive found",
                )
            )
    return hs, Report(f"homological section (ell={data.ell})", results)


# -- the axiom battery -----------------------------------------------------


def check_delta_axioms(spec: DeltaSpec, samples: int = 8, rng=None) -> Report:
    """Module rule, metric and anchor compatibility, bracket derivation,
    and both routes to the vanishing of the square."""
    rng = ensure_rng(rng)
    data = spec.data
    chart, ell = spec.chart, spec.ell
    alg = data.alg
    qs = spec.q_section()
    ulD = spec.underlying()

    units = _generators(data)
    pool = _span(data, rng, samples)
    funcs = [GFunction.var(chart, name) for name in chart.coords]
    for _ in range(max(2, samples // 2)):
        funcs.append(random_function(rng, chart))
    rand_pairs = [
        (random_gen_section(rng, chart, ell), random_gen_section(rng, chart, ell))
        for _ in range(samples)
    ]

    def delta(psi: GenSection) -> GenSection:
        return delta_apply(spec, psi)

    results = []

    # (ii) the module rule against the base derivation
    witness = None
    for k, psi in enumerate(units):
        for f in funcs:
            lhs = delta(psi.action(f))
            rhs = delta(psi).action(f).scale(_sgn(f.degree)) + psi.action(
                ulD.apply(f)
            )
            if not (lhs - rhs).is_zero():
                witness = {"generator": k, "function": repr(f)}
                break
        if witness:
            break
    results.append(CheckResult("module_rule", PASS if witness is None else FAIL,
                               witness=witness))

    # (iii) compatibility with the pairing
    witness = None
    pairs = [(a, b) for a in units for b in units] + rand_pairs
    for k, (a, b) in enumerate(pairs):
        lhs = ulD.apply(pairing(data, a, b))
        rhs = pairing(data, delta(a), b) + pairing(data, a, delta(b)).scale(
            _sgn(a.degree + ell)
        )
        if not (lhs - rhs).is_zero():
            witness = {"pair": k}
            break
    results.append(CheckResult("metric_rule", PASS if witness is None else FAIL,
                               witness=witness))

    # (iv) compatibility with the anchor, both as stated and through dee
    witness = None
    for k, psi in enumerate(pool):
        lhs = section_to_vf(delta(psi).x, 0)
        rhs = ulD.commutator(section_to_vf(psi.x, 0)).scale(_sgn(ell))
        if not (lhs - rhs).is_zero():
            witness = {"sample": k}
            break
    results.append(CheckResult("anchor_rule", PASS if witness is None else FAIL,
                               witness=witness))

    witness = None
    for f in funcs:
        out = delta(dee(data, f)) + dee(data, ulD.apply(f))
        if not out.is_zero():
            witness = {"function": repr(f)}
            break
    results.append(
        CheckResult("anchor_dee_equivalent", PASS if witness is None else FAIL,
                     witness=witness)
    )

    # (v) graded derivation of the bracket, and its closedness criterion
    witness = None
    for k, (a, b) in enumerate(pairs):
        lhs = delta(dorfman(data, a, b))
        rhs = dorfman(data, delta(a), b) + dorfman(data, a, delta(b)).scale(
            _sgn(a.degree + ell)
        )
        if not (lhs - rhs).is_zero():
            witness = {"pair": k}
            break
    derivation_ok = witness is None
    results.append(
        CheckResult("bracket_derivation", PASS if derivation_ok else FAIL,
                     witness=witness)
    )
    closed = d_form(alg, spec.theta).is_zero()
    results.append(
        CheckResult(
            "derivation_iff_closed",
            PASS if derivation_ok == closed else FAIL,
            reason=f"derivation={derivation_ok}, closed 2-form={closed}",
        )
    )

    # (i) the square, directly and through the closed-form conditions
    witness = None
    for k, psi in enumerate(pool):
        if not delta(delta(psi)).is_zero():
            witness = {"sample": k}
            break
    direct_ok = witness is None
    results.append(
        CheckResult("square_zero", PASS if direct_ok else FAIL, witness=witness)
    )

    qq_ok = spec.Q.commutator(spec.Q).is_zero()
    flow_ok = lie_form(alg, qs, spec.correction()).is_zero()
    conditions_ok = qq_ok and flow_ok
    results.append(
        CheckResult(
            "square_conditions",
            PASS if conditions_ok else FAIL,
            reason=f"self-commutator zero={qq_ok}, invariant correction={flow_ok}",
        )
    )
    results.append(
        CheckResult(
            "square_routes_agree",
            PASS if direct_ok == conditions_ok else FAIL,
        )
    )

    # the contracted condition: i_Q theta + 1/2 H(Q,Q,.) should be exact
    contracted = plug(spec.theta, [qs]) + plug(data.H, [qs, qs]).scale(
        Fraction(1, 2)
    )
    if not d_form(alg, contracted).is_zero():
        results.append(
            CheckResult(
                "contraction_exact", FAIL, reason="the contraction is not closed"
            )
        )
    else:
        try:
            d_primitive(alg, contracted)
            results.append(CheckResult("contraction_exact", PASS))
        except UnsolvableError:
            results.append(
                CheckResult(
                    "contraction_exact",
                    INDETERMINATE,
                    reason="no polynomial primitive found",
                )
            )

    return Report(f"differential (ell={ell})", results)


# -- compatibility with graphs and maps ------------------------------------


def dirac_delta_compat(
    spec: DeltaSpec, Pi: Bivector, samples: int = 8, rng=None
) -> Report:
    """Whether the operator preserves the graph of a bivector.

    Checked in two equivalent shapes: the frame-pair identity on the
    bivector itself, and the derivation identity on brackets of sampled
    functions.  Both must agree.
    """
    rng = ensure_rng(rng)
    data = spec.data
    chart, ell = spec.chart, spec.ell
    if Pi.chart != chart:
        raise ChartMismatch("bivector lives on a different chart")
    if Pi.ell != ell:
        raise ShiftMismatch("bivector built for a different shift")
    if not data.twist_closed():
        raise PreconditionUnmet("the twist must be closed")
    if twisted_poisson_defects(Pi, data.H):
        raise PreconditionUnmet("the bivector graph is not involutive")

    alg = data.alg
    qs = spec.q_section()
    corr = spec.correction()
    lq_pi = lie_multivector(alg, qs, Pi.form)
    sharps = [Pi.sharp(_dz(chart, A)) for A in range(chart.n)]

    witness = None
    for tup in canonical_tuples(cotangent_frame(chart, 0), 2, Pi.flavor):
        A, B = tup
        lhs = lq_pi.eval_frame(tup)
        rhs = corr.eval([sharps[A], sharps[B]]).scale(
            _sgn(ell * (1 + chart.degrees[A]))
        )
        if not (lhs + rhs).is_zero():
            witness = {"pair": (chart.coords[A], chart.coords[B])}
            break
    bivector_ok = witness is None
    results = [
        CheckResult("bivector_identity", PASS if bivector_ok else FAIL,
                     witness=witness)
    ]

    funcs = [GFunction.var(chart, name) for name in chart.coords]
    pairs = [(f, g) for f in funcs for g in funcs]
    for _ in range(samples):
        pairs.append((random_function(rng, chart), random_function(rng, chart)))
    witness = None
    for k, (f, g) in enumerate(pairs):
        lhs = spec.Q.apply(poisson_bracket(Pi, f, g))
        rhs = (
            poisson_bracket(Pi, spec.Q.apply(f), g)
            + poisson_bracket(Pi, f, spec.Q.apply(g)).scale(_sgn(f.degree + ell))
            + corr.eval([hamiltonian(Pi, f), hamiltonian(Pi, g)]).scale(
                _sgn(ell * (1 + f.degree + g.degree))
            )
        )
        if not (lhs - rhs).is_zero():
            witness = {"pair": k, "f": repr(f), "g": repr(g)}
            break
    bracket_ok = witness is None
    results.append(
        CheckResult("bracket_identity", PASS if bracket_ok else FAIL,
                     witness=witness)
    )
    results.append(
        CheckResult("criteria_agree", PASS if bivector_ok == bracket_ok else FAIL)
    )
    return Report(f"delta on a bivector graph (ell={ell})", results)


def gcs_delta_compat(
    spec: DeltaSpec,
    J: GCSMap,
    omega: Optional[Form] = None,
    samples: int = 8,
    rng=None,
) -> Report:
    """Whether the operator commutes with a generalized complex map.

    When the symplectic form behind the map is supplied, the commutation
    is cross-checked against its known characterization: the 2-form of the
    spec vanishes and the flow of Q preserves the symplectic form.
    """
    rng = ensure_rng(rng)
    data = spec.data
    chart, ell = spec.chart, spec.ell
    if J.chart != chart:
        raise ChartMismatch("map lives on a different chart")
    if J.ell != ell:
        raise ShiftMismatch("map built for a different shift")
    pre = gcs_checks(data, J, samples=4, rng=rng)
    if pre.verdict == FAIL:
        raise PreconditionUnmet("the map fails its structure checks")
    if omega is not None:
        if not data.H.is_zero():
            raise PreconditionUnmet("the symplectic case needs a vanishing twist")
        ref = symplectic_gcs(omega)
        for gen in ref.generators():
            if not (J.apply(gen) - ref.apply(gen)).is_zero():
                raise PreconditionUnmet("the map does not come from the given form")

    pool = _span(data, rng, samples)
    witness = None
    for k, psi in enumerate(pool):
        out = delta_apply(spec, J.apply(psi)) - J.apply(delta_apply(spec, psi))
        if not out.is_zero():
            witness = {"sample": k}
            break
    commutes = witness is None
    results = [CheckResult("commutes", PASS if commutes else FAIL, witness=witness)]

    if omega is not None:
        theta_ok = spec.theta.is_zero()
        flow_ok = lie_form(data.alg, spec.q_section(), omega).is_zero()
        results.append(
            CheckResult("theta_vanishes", PASS if theta_ok else FAIL)
        )
        results.append(
            CheckResult("flow_preserves_form", PASS if flow_ok else FAIL)
        )
        results.append(
            CheckResult(
                "characterization_agree",
                PASS if commutes == (theta_ok and flow_ok) else FAIL,
                reason=f"commutes={commutes}, theta zero={theta_ok}, "
                f"invariant form={flow_ok}",
            )
        )
    return Report(f"delta with a generalized complex map (ell={ell})", results)
