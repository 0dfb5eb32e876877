"""The generalized tangent bundle with its pairing and twisted Dorfman bracket.

Sections are pairs (X, xi): a vector field of degree k + ell together with a
1-form of degree k.  The shift ell enters the module action, the pairing
degree and almost every sign below, while the underlying Cartan calculus is
the plain unshifted one.
"""

from .errors import (
    ChartMismatch,
    DegreeMismatch,
    ShiftMismatch,
)
from .gralg import Chart, GFunction
from .calculus import (
    SKEW,
    Form,
    Section,
    d_form,
    d_function,
    interior,
    lie_form,
    pair_form_section,
    plug,
    section_to_vf,
    tangent_algebroid,
    tangent_frame,
)


def _sgn(exp: int) -> int:
    return -1 if exp % 2 else 1


class GenSection:
    """A section (X, xi) of T[ell]M + T*M of degree k."""

    __slots__ = ("chart", "ell", "degree", "x", "xi")

    def __init__(self, chart: Chart, ell: int, degree: int, x: Section, xi: Form):
        self.chart = chart
        self.ell = int(ell)
        self.degree = int(degree)
        if x.frame != tangent_frame(chart, 0):
            raise ChartMismatch("vector part must live over the tangent frame")
        if not x.is_zero() and x.degree != self.degree + self.ell:
            raise DegreeMismatch(
                f"vector part has degree {x.degree}, expected {self.degree + self.ell}"
            )
        if xi.arity != 1:
            raise DegreeMismatch("form part must have arity 1")
        if not xi.is_zero() and xi.degree != self.degree:
            raise DegreeMismatch(
                f"form part has degree {xi.degree}, expected {self.degree}"
            )
        self.x = x
        self.xi = xi

    @staticmethod
    def zero(chart: Chart, ell: int, degree: int = 0) -> "GenSection":
        frame = tangent_frame(chart, 0)
        return GenSection(
            chart,
            ell,
            degree,
            Section.zero(chart, frame, degree + ell),
            Form.zero(chart, frame, 1, degree, SKEW),
        )

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.xi.is_zero()

    def action(self, f: GFunction) -> "GenSection":
        """The module action f > (X, xi) = ((-1)^{|f| ell} f X, f xi)."""
        return GenSection(
            self.chart,
            self.ell,
            self.degree + f.degree,
            self.x.fmul(f).scale(_sgn(f.degree * self.ell)),
            self.xi.fmul(f),
        )

    def scale(self, value) -> "GenSection":
        return GenSection(
            self.chart, self.ell, self.degree, self.x.scale(value), self.xi.scale(value)
        )

    def __add__(self, other: "GenSection") -> "GenSection":
        if not isinstance(other, GenSection):
            return NotImplemented
        if self.ell != other.ell:
            raise ShiftMismatch("cannot add sections with different shifts")
        degree = other.degree if self.is_zero() else self.degree
        return GenSection(
            self.chart, self.ell, degree, self.x + other.x, self.xi + other.xi
        )

    def __neg__(self) -> "GenSection":
        return self.scale(-1)

    def __sub__(self, other: "GenSection") -> "GenSection":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, GenSection):
            return NotImplemented
        return self.ell == other.ell and self.x == other.x and self.xi == other.xi

    def __hash__(self):
        raise TypeError("GenSection is not hashable")

    def __repr__(self):
        return f"GenSection(degree={self.degree}, x={self.x!r}, xi={self.xi!r})"


class CourantData:
    """The H-twisted Dorfman structure of degree ell on T[ell]M + T*M."""

    __slots__ = ("chart", "ell", "H", "alg")

    def __init__(self, chart: Chart, ell: int, H: Form = None):
        self.chart = chart
        self.ell = int(ell)
        self.alg = tangent_algebroid(chart, 0)
        if H is None:
            H = Form.zero(chart, self.alg.frame, 3, -self.ell, SKEW)
        if H.arity != 3:
            raise DegreeMismatch("twist must be a 3-form")
        if not H.is_zero() and H.degree != -self.ell:
            raise DegreeMismatch(
                f"twist has degree {H.degree}, expected {-self.ell}"
            )
        self.H = H

    def section(self, x: Section, xi: Form) -> GenSection:
        degree = xi.degree if x.is_zero() else x.degree - self.ell
        return GenSection(self.chart, self.ell, degree, x, xi)

    def zero(self, degree: int = 0) -> GenSection:
        return GenSection.zero(self.chart, self.ell, degree)

    def rho(self, psi: GenSection) -> Section:
        return psi.x

    def rho_hat(self, psi: GenSection) -> Section:
        """The anchor with the auxiliary sign (-1)^{(|psi|+ell) ell}."""
        return psi.x.scale(_sgn((psi.degree + self.ell) * self.ell))

    def rho_hat_apply(self, psi: GenSection, f: GFunction) -> GFunction:
        return section_to_vf(self.rho_hat(psi), 0).apply(f)

    def twist_closed(self) -> bool:
        return d_form(self.alg, self.H).is_zero()

    # The axiom battery only touches the structure through these three
    # methods plus rho/rho_hat, so other brackets on the same sections
    # (for example a bialgebroid double) can reuse it verbatim.
    def bracket(self, a: GenSection, b: GenSection) -> GenSection:
        return dorfman(self, a, b)

    def pair(self, a: GenSection, b: GenSection) -> GFunction:
        return pairing(self, a, b)

    def dee(self, f: GFunction) -> GenSection:
        return dee(self, f)

    def __repr__(self):
        return f"CourantData(ell={self.ell}, twisted={not self.H.is_zero()})"


def _check_pair(data: CourantData, a: GenSection, b: GenSection):
    if a.chart is not b.chart or a.chart != b.chart:
        raise ChartMismatch("sections live on different charts")
    if a.ell != b.ell or a.ell != data.ell:
        raise ShiftMismatch("sections built for a different shift")


def pairing(data: CourantData, a: GenSection, b: GenSection) -> GFunction:
    """<(X,xi),(Y,eta)> = xi(Y) + (-1)^{|X||Y|} eta(X), of degree |a|+|b|+ell."""
    _check_pair(data, a, b)
    first = pair_form_section(a.xi, b.x)
    second = pair_form_section(b.xi, a.x).scale(
        _sgn((a.degree + data.ell) * (b.degree + data.ell))
    )
    return first + second


def dorfman(data: CourantData, a: GenSection, b: GenSection) -> GenSection:
    """[(X,xi),(Y,eta)] with the three signed form terms and the H twist."""
    _check_pair(data, a, b)
    ell = data.ell
    dx, dy = a.degree + ell, b.degree + ell
    x_part = data.alg.bracket(a.x, b.x)
    form = lie_form(data.alg, a.x, b.xi).scale(_sgn(dx * ell))
    form = form - interior(b.x, d_form(data.alg, a.xi)).scale(_sgn(dy * (dx + ell)))
    form = form + plug(data.H, [a.x, b.x]).scale(_sgn(ell))
    return GenSection(data.chart, ell, a.degree + b.degree + ell, x_part, form)


def dee(data: CourantData, f: GFunction) -> GenSection:
    """Df = (0, (-1)^ell df); R-linear of degree zero."""
    frame = data.alg.frame
    xi = d_function(data.alg, f).scale(_sgn(data.ell))
    return GenSection(
        data.chart,
        data.ell,
        f.degree,
        Section.zero(data.chart, frame, f.degree + data.ell),
        xi,
    )


def omega_flat(omega: Form, x: Section) -> Form:
    """omega^flat(X) = omega(X, *) as a 1-form."""
    return plug(omega, [x])


def b_transform(omega: Form, a: GenSection) -> GenSection:
    """e^omega (X, xi) = (X, xi + omega(X, *)); needs |omega| = -ell."""
    if omega.arity != 2:
        raise DegreeMismatch("transform needs a 2-form")
    if not omega.is_zero() and omega.degree != -a.ell:
        raise DegreeMismatch(
            f"transform form has degree {omega.degree}, expected {-a.ell}"
        )
    return GenSection(a.chart, a.ell, a.degree, a.x, a.xi + omega_flat(omega, a.x))


def splitting_curvature(data: CourantData, omega: Form) -> Form:
    """Curvature of the splitting s'(X) = (X, omega(X, *)): H + d omega."""
    if omega.arity != 2:
        raise DegreeMismatch("splitting offset must be a 2-form")
    if not omega.is_zero() and omega.degree != -data.ell:
        raise DegreeMismatch(
            f"offset has degree {omega.degree}, expected {-data.ell}"
        )
    return data.H + d_form(data.alg, omega)


def jacobiator(data, a: GenSection, b: GenSection, c: GenSection) -> GenSection:
    """[a,[b,c]] - [[a,b],c] - (-1)^{(|a|+ell)(|b|+ell)} [b,[a,c]]."""
    ell = data.ell
    sign = _sgn((a.degree + ell) * (b.degree + ell))
    return (
        data.bracket(a, data.bracket(b, c))
        - data.bracket(data.bracket(a, b), c)
        - data.bracket(b, data.bracket(a, c)).scale(sign)
    )


def curvature_defect(
    data: CourantData, a: GenSection, b: GenSection, c: GenSection
) -> GenSection:
    """The section (0, dH(X,Y,Z,*)) that obstructs the Jacobi identity."""
    dH = d_form(data.alg, data.H)
    xi = plug(dH, [a.x, b.x, c.x])
    degree = a.degree + b.degree + c.degree + 2 * data.ell
    frame = data.alg.frame
    return GenSection(
        data.chart,
        data.ell,
        degree,
        Section.zero(data.chart, frame, degree + data.ell),
        xi,
    )


def check_courant_axioms(data, samples: int = 12, rng=None):
    """Property-check the pairing/bracket axioms and their consequences.

    Accepts any structure exposing the CourantData protocol (bracket,
    pair, dee, rho, rho_hat_apply, section, alg); the curvature and
    splitting checks specific to the twisted Dorfman bracket only run
    for CourantData itself.
    """
    from . import sampling
    from .reporting import FAIL, PASS, CheckResult, Report

    rng = sampling.ensure_rng(rng)
    chart, ell = data.chart, data.ell
    results = []

    def rgen():
        return sampling.random_gen_section(rng, chart, ell)

    def rfun(degree=None):
        return sampling.random_function(rng, chart, degree)

    def run(name, body):
        for k in range(samples):
            witness = body(k)
            if witness is not None:
                results.append(CheckResult(name, FAIL, witness=witness))
                return
        results.append(CheckResult(name, PASS))

    def pairing_symmetry(k):
        a, b = rgen(), rgen()
        lhs = data.pair(a, b)
        rhs = data.pair(b, a).scale(
            _sgn((a.degree + ell) * (b.degree + ell))
        )
        if lhs != rhs:
            return {"a": repr(a), "b": repr(b)}
        return None

    run("pairing_graded_symmetry", pairing_symmetry)

    def pairing_linearity(k):
        a, b = rgen(), rgen()
        f = rfun()
        if data.pair(a.action(f), b) != f * data.pair(a, b):
            return {"side": "first", "a": repr(a), "b": repr(b), "f": repr(f)}
        lhs = data.pair(a, b.action(f))
        rhs = (f * data.pair(a, b)).scale(_sgn((a.degree + ell) * f.degree))
        if lhs != rhs:
            return {"side": "second", "a": repr(a), "b": repr(b), "f": repr(f)}
        return None

    run("pairing_module_rules", pairing_linearity)

    def anchor_action(k):
        a = rgen()
        f = rfun()
        lhs = data.rho(a.action(f))
        rhs = data.rho(a).fmul(f).scale(_sgn(f.degree * ell))
        if lhs != rhs:
            return {"a": repr(a), "f": repr(f)}
        return None

    run("anchor_module_rule", anchor_action)

    def compat(k):
        a, b, c = rgen(), rgen(), rgen()
        lhs = data.rho_hat_apply(a, data.pair(b, c))
        rhs = data.pair(data.bracket(a, b), c) + data.pair(
            b, data.bracket(a, c)
        ).scale(_sgn((a.degree + ell) * (b.degree + ell)))
        if lhs != rhs:
            return {"a": repr(a), "b": repr(b), "c": repr(c)}
        return None

    run("pairing_bracket_compatibility", compat)

    def skew_defect(k):
        a, b = rgen(), rgen()
        lhs = data.bracket(a, b) + data.bracket(b, a).scale(
            _sgn((a.degree + ell) * (b.degree + ell))
        )
        rhs = data.dee(data.pair(a, b)).scale(_sgn(a.degree + b.degree))
        if lhs != rhs:
            return {"a": repr(a), "b": repr(b)}
        return None

    run("skew_symmetry_defect", skew_defect)

    def unit_gen(idx):
        frame = data.alg.frame
        x = Section.unit(chart, frame, idx)
        return GenSection(
            chart,
            ell,
            x.degree - ell,
            x,
            Form.zero(chart, frame, 1, x.degree - ell, SKEW),
        )

    def jacobi(k):
        twist = getattr(data, "H", None)
        if k == 0 and twist is not None:
            # probe the support of dH directly so a non-closed twist
            # cannot slip through undersampling
            dH = d_form(data.alg, twist)
            for tup in dH.comps:
                a, b, c = (unit_gen(i) for i in tup[:3])
                res = jacobiator(data, a, b, c)
                if not res.is_zero():
                    return {
                        "a": repr(a),
                        "b": repr(b),
                        "c": repr(c),
                        "residual": repr(res),
                    }
        a, b, c = rgen(), rgen(), rgen()
        res = jacobiator(data, a, b, c)
        if not res.is_zero():
            return {"a": repr(a), "b": repr(b), "c": repr(c), "residual": repr(res)}
        return None

    run("graded_jacobi", jacobi)

    def jacobi_vs_curvature(k):
        a, b, c = rgen(), rgen(), rgen()
        if jacobiator(data, a, b, c) != curvature_defect(data, a, b, c):
            return {"a": repr(a), "b": repr(b), "c": repr(c)}
        return None

    if isinstance(data, CourantData):
        run("jacobi_defect_is_curvature", jacobi_vs_curvature)

    def leibniz(k):
        a, b = rgen(), rgen()
        f = rfun()
        lhs = data.bracket(a, b.action(f))
        rhs = b.action(data.rho_hat_apply(a, f)) + data.bracket(a, b).action(
            f
        ).scale(_sgn(f.degree * (a.degree + ell)))
        if lhs != rhs:
            return {"a": repr(a), "b": repr(b), "f": repr(f)}
        return None

    run("bracket_leibniz_rule", leibniz)

    def anchor_morphism(k):
        a, b = rgen(), rgen()
        lhs = data.rho(data.bracket(a, b))
        rhs = data.alg.bracket(data.rho(a), data.rho(b))
        if lhs != rhs:
            return {"a": repr(a), "b": repr(b)}
        return None

    run("anchor_bracket_morphism", anchor_morphism)

    def anchor_kills_dee(k):
        f = rfun()
        if not data.rho(data.dee(f)).is_zero():
            return {"f": repr(f)}
        return None

    run("anchor_kills_dee", anchor_kills_dee)

    def dee_brackets(k):
        a = rgen()
        f = rfun()
        left = data.bracket(data.dee(f), a)
        if not left.is_zero():
            return {"side": "left", "a": repr(a), "f": repr(f)}
        # the sign follows from the skew-symmetry defect with [Df, a] = 0
        lhs = data.bracket(a, data.dee(f))
        rhs = data.dee(data.pair(a, data.dee(f))).scale(
            _sgn(a.degree + f.degree)
        )
        if lhs != rhs:
            return {"side": "right", "a": repr(a), "f": repr(f)}
        return None

    run("brackets_with_dee", dee_brackets)

    def dee_pairing(k):
        a = rgen()
        f = rfun()
        lhs = data.pair(a, data.dee(f))
        rhs = data.rho_hat_apply(a, f).scale(_sgn(f.degree + ell))
        if lhs != rhs:
            return {"a": repr(a), "f": repr(f)}
        return None

    run("pairing_with_dee", dee_pairing)

    def transform_isometry(k):
        omega = sampling.random_form(
            rng, chart, data.alg.frame, 2, SKEW, degree=-ell
        )
        a, b = rgen(), rgen()
        ta, tb = b_transform(omega, a), b_transform(omega, b)
        if data.rho(ta) != data.rho(a):
            return {"part": "anchor", "omega": repr(omega), "a": repr(a)}
        if pairing(data, ta, tb) != pairing(data, a, b):
            return {"part": "pairing", "omega": repr(omega), "a": repr(a), "b": repr(b)}
        back = b_transform(omega.scale(-1), ta)
        if back != a:
            return {"part": "inverse", "omega": repr(omega), "a": repr(a)}
        return None

    if isinstance(data, CourantData):
        run("transform_preserves_structure", transform_isometry)

    def transform_bracket(k):
        omega = sampling.random_form(
            rng, chart, data.alg.frame, 2, SKEW, degree=-ell
        )
        shifted = CourantData(chart, ell, splitting_curvature(data, omega))
        a, b = rgen(), rgen()
        lhs = b_transform(omega, dorfman(shifted, a, b))
        rhs = dorfman(data, b_transform(omega, a), b_transform(omega, b))
        if lhs != rhs:
            return {"omega": repr(omega), "a": repr(a), "b": repr(b)}
        return None

    if isinstance(data, CourantData):
        run("transform_intertwines_brackets", transform_bracket)

    def splitting_check(k):
        omega = sampling.random_form(
            rng, chart, data.alg.frame, 2, SKEW, degree=-ell
        )
        curv = splitting_curvature(data, omega)
        x = sampling.random_section(rng, chart, data.alg.frame)
        y = sampling.random_section(rng, chart, data.alg.frame)

        def lift(v):
            return b_transform(omega, data.section(v, Form.zero(
                chart, data.alg.frame, 1, v.degree - ell, SKEW
            )))

        lhs = dorfman(data, lift(x), lift(y))
        rest = plug(curv, [x, y]).scale(_sgn(ell))
        rhs = lift(data.alg.bracket(x, y)) + data.section(
            Section.zero(chart, data.alg.frame, x.degree + y.degree), rest
        )
        if lhs != rhs:
            return {"omega": repr(omega), "x": repr(x), "y": repr(y)}
        return None

    if isinstance(data, CourantData):
        run("splitting_curvature_relation", splitting_check)

    return Report(getattr(data, "report_title", f"courant ell={ell}"), results)
