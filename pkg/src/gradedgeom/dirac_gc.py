"""Isotropic subspaces, graphs of bivectors and generalized complex maps.

The linear layer models quadratic graded vector spaces exactly: one
rational Gram block per degree pair, subspaces as canonical row spaces,
and maximal isotropy decided by rank counting (plus the inertia of the
middle block when the shift is divisible by four).  The geometric layer
sits on top of the shifted generalized tangent bundle: graphs of graded
bivectors, the Koszul bracket on one-forms, the twisted Poisson criterion
checked through two independent routes, Hamiltonian sections, and almost
complex endomorphisms probed through orthogonality, the Nijenhuis defect
and eigenspace extraction over the Gaussian rationals.
"""
from __future__ import annotations

from collections import namedtuple
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .calculus import (
    SKEW,
    SYM,
    Algebroid,
    Form,
    Section,
    cotangent_frame,
    d_form,
    d_function,
    form1_to_section,
    interior,
    lie_form,
    plug,
    section_to_form1,
    section_to_vf,
    tangent_algebroid,
    tangent_frame,
)
from .courant import CourantData, GenSection, dorfman, pairing
from .errors import (
    ArityMismatch,
    ChartMismatch,
    DegreeMismatch,
    FlavorMismatch,
    FrameMismatch,
    NotASubspace,
    NotAlmostComplex,
    PreconditionUnmet,
    ShiftMismatch,
    UnsolvableError,
    ValidationError,
)
from .gralg import Chart, GFunction
from .linalg import inertia, nullspace, rank, row_space_basis, solve
from .reporting import FAIL, INDETERMINATE, PASS, CheckResult, Report
from .scalars import GaussianRational


def _sgn(exp: int) -> int:
    return -1 if exp % 2 else 1


# -- quadratic graded vector spaces ------------------------------------


class QuadSpace:
    """A finite dimensional graded vector space with a degree -ell pairing.

    The pairing is stored as one block per degree: ``blocks[j][a][b]`` is
    the value on the a-th basis vector of the degree-j summand against the
    b-th basis vector of the degree ``-j-ell`` summand.  Missing degrees
    are zero dimensional.  Either member of a block pair may be omitted;
    the partner is filled in from the graded symmetry of the pairing.
    """

    __slots__ = ("ell", "blocks")

    def __init__(self, ell: int, blocks: Dict[int, Sequence[Sequence]]):
        self.ell = int(ell)
        clean: Dict[int, tuple] = {}
        for j, mat in blocks.items():
            rows = tuple(tuple(Fraction(x) for x in row) for row in mat)
            if rows and any(len(r) != len(rows[0]) for r in rows):
                raise ValidationError(["pairing block rows have unequal lengths"])
            clean[int(j)] = rows
        for j in list(clean):
            p = -j - self.ell
            if p not in clean:
                clean[p] = self._transpose_partner(j, clean[j])
        self.blocks = clean
        self._validate()

    def _transpose_partner(self, j: int, mat: tuple) -> tuple:
        s = _sgn(j * (1 + self.ell))
        nrows = len(mat[0]) if mat else 0
        ncols = len(mat)
        return tuple(
            tuple(s * mat[b][a] for b in range(ncols)) for a in range(nrows)
        )

    def _validate(self):
        problems = []
        for j, mat in self.blocks.items():
            p = -j - self.ell
            partner = self.blocks[p]
            r_j = len(mat)
            r_p = len(partner)
            ncols = len(mat[0]) if mat else 0
            if ncols != r_p:
                problems.append(f"block at degree {j} has {ncols} columns, "
                                f"degree {p} has rank {r_p}")
                continue
            if r_j != r_p:
                problems.append(f"rank {r_j} at degree {j} differs from "
                                f"rank {r_p} at degree {p}")
                continue
            if r_j and rank([list(row) for row in mat]) != r_j:
                problems.append(f"degenerate pairing block at degree {j}")
            s = _sgn(j * (1 + self.ell))
            for a in range(r_j):
                for b in range(r_p):
                    if mat[a][b] != s * partner[b][a]:
                        problems.append(
                            f"pairing blocks at degrees {j} and {p} are not "
                            "graded symmetric"
                        )
                        break
                else:
                    continue
                break
        if problems:
            raise ValidationError(problems)

    @property
    def gdim(self) -> Dict[int, int]:
        return {j: len(mat) for j, mat in self.blocks.items() if mat}

    def degrees(self) -> List[int]:
        return sorted(self.gdim)

    def dim(self, j: int) -> int:
        return len(self.blocks.get(j, ()))

    def pair(self, j: int, v: Sequence, w: Sequence):
        """Pair v in the degree-j summand with w in degree -j-ell."""
        mat = self.blocks.get(j, ())
        if len(v) != len(mat):
            raise DegreeMismatch("vector length does not match the rank")
        total = Fraction(0)
        for a, va in enumerate(v):
            if not va:
                continue
            for b, blk in enumerate(mat[a]):
                if blk and w[b]:
                    total = total + va * blk * w[b]
        return total

    def subspace(self, gens: Dict[int, Sequence[Sequence]]) -> "Subspace":
        """Canonicalize homogeneous generators into a Subspace."""
        canon = {}
        for j, vecs in gens.items():
            vecs = [list(v) for v in vecs]
            if not vecs:
                continue
            r = self.dim(int(j))
            if any(len(v) != r for v in vecs):
                raise NotASubspace(
                    f"generator at degree {j} does not have length {r}"
                )
            basis = row_space_basis(vecs)
            if len(basis) != len(vecs):
                raise NotASubspace(f"dependent generators at degree {j}")
            canon[int(j)] = tuple(tuple(row) for row in basis)
        return Subspace(self, canon)

    def zero_subspace(self) -> "Subspace":
        return Subspace(self, {})

    def full_subspace(self) -> "Subspace":
        gens = {}
        for j, r in self.gdim.items():
            gens[j] = [[1 if a == b else 0 for b in range(r)] for a in range(r)]
        return self.subspace(gens)

    def __repr__(self):
        dims = ", ".join(f"{j}:{r}" for j, r in sorted(self.gdim.items()))
        return f"QuadSpace(ell={self.ell}; {dims})"


class Subspace:
    """A graded subspace held as a canonical row-reduced basis per degree."""

    __slots__ = ("space", "gens")

    def __init__(self, space: QuadSpace, gens: Dict[int, tuple]):
        self.space = space
        self.gens = {j: v for j, v in gens.items() if v}

    @property
    def gdim(self) -> Dict[int, int]:
        return {j: len(v) for j, v in self.gens.items()}

    def dim(self, j: int) -> int:
        return len(self.gens.get(j, ()))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.space.ell == other.space.ell and self.gens == other.gens

    def __repr__(self):
        dims = ", ".join(f"{j}:{r}" for j, r in sorted(self.gdim.items()))
        return f"Subspace({dims or '0'})"


def annihilator(space: QuadSpace, L: Subspace) -> Dict[int, list]:
    """Per-degree bases of the functionals killing L.

    The degree-j part pairs with the degree ``-j`` summand, so its vectors
    have length ``dim V_{-j}`` and the graded dimension at j is
    ``dim V_{-j} - dim L_{-j}``.
    """
    out = {}
    for p in space.degrees():
        j = -p
        rows = [list(v) for v in L.gens.get(p, ())]
        out[j] = nullspace(rows, ncols=space.dim(p))
    return out


def orthogonal_complement(space: QuadSpace, L: Subspace) -> Subspace:
    """All vectors pairing to zero against L."""
    gens = {}
    for j in space.degrees():
        mat = space.blocks[j]
        rows = []
        for w in L.gens.get(-j - space.ell, ()):
            rows.append([
                sum(mat[a][b] * w[b] for b in range(len(w)) if w[b])
                for a in range(len(mat))
            ])
        gens[j] = nullspace(rows, ncols=space.dim(j))
    return space.subspace(gens)


def is_isotropic(space: QuadSpace, L: Subspace) -> bool:
    for j, vecs in L.gens.items():
        partners = L.gens.get(-j - space.ell, ())
        for v in vecs:
            for w in partners:
                if space.pair(j, v, w) != 0:
                    return False
    return True


def is_max_isotropic(space: QuadSpace, L: Subspace) -> Dict[str, bool]:
    """Flags {isotropic, maximal, lagrangian} for a graded subspace.

    Maximality is pure rank counting except when the shift is divisible
    by four, where the middle summand carries a symmetric pairing and the
    answer depends on its signature.
    """
    iso = is_isotropic(space, L)
    lagrangian = iso and L == orthogonal_complement(space, L)
    ell = space.ell
    q = L.gdim

    def ranks_fill(skip=None):
        for j, r in space.gdim.items():
            if j == skip:
                continue
            if q.get(j, 0) + q.get(-j - ell, 0) != r:
                return False
        return True

    if ell % 4 != 0:
        maximal = iso and ranks_fill()
    else:
        mid = -ell // 2
        gram = [list(row) for row in space.blocks.get(mid, ())]
        if gram:
            pos, neg, null = inertia(gram)
        else:
            pos = neg = null = 0
        maximal = (
            iso
            and ranks_fill(skip=mid)
            and q.get(mid, 0) == min(pos, neg)
        )
    return {"isotropic": iso, "maximal": maximal, "lagrangian": lagrangian}


# -- the generalized tangent fiber --------------------------------------


def fiber_basis(chart: Chart, ell: int, j: int) -> List[tuple]:
    """Ordered basis labels of the degree-j summand: tangent then form."""
    tangent = [("v", A) for A, d in enumerate(chart.degrees) if -d - ell == j]
    forms = [("f", A) for A, d in enumerate(chart.degrees) if d == j]
    return tangent + forms


def generalized_fiber(chart: Chart, ell: int) -> QuadSpace:
    """The fiber of T[ell]M + T*M with its canonical pairing."""
    degrees = sorted({-d - ell for d in chart.degrees} | set(chart.degrees))
    blocks = {}
    for j in degrees:
        rows = fiber_basis(chart, ell, j)
        if not rows:
            continue
        cols = fiber_basis(chart, ell, -j - ell)
        mat = [[Fraction(0)] * len(cols) for _ in rows]
        for r, (rkind, rA) in enumerate(rows):
            for c, (ckind, cA) in enumerate(cols):
                if rA != cA or rkind == ckind:
                    continue
                if rkind == "v":
                    mat[r][c] = Fraction(_sgn(j * (1 + ell)))
                else:
                    mat[r][c] = Fraction(1)
        blocks[j] = mat
    return QuadSpace(ell, blocks)


def fiber_value(gs: GenSection, point: Optional[dict] = None) -> list:
    """Evaluate a generalized section at a base point, in the fiber basis."""
    point = point or {}
    vec = []
    for kind, A in fiber_basis(gs.chart, gs.ell, gs.degree):
        if kind == "v":
            f = gs.x.comps.get(A)
        else:
            f = gs.xi.comps.get((A,))
        vec.append(f.eval_body(point) if f is not None else gs.chart.zero_scalar())
    return vec


def fiber_subspace(
    chart: Chart, ell: int, gens: Sequence[GenSection], point: Optional[dict] = None
) -> Subspace:
    """The span of the values of homogeneous generalized sections."""
    space = generalized_fiber(chart, ell)
    bucket: Dict[int, list] = {}
    for gs in gens:
        bucket.setdefault(gs.degree, []).append(fiber_value(gs, point))
    gens_by_degree = {}
    for j, vecs in bucket.items():
        basis = row_space_basis(vecs)
        if basis:
            gens_by_degree[j] = basis
    return space.subspace(gens_by_degree)


# -- bivectors and their graphs ------------------------------------------


class Bivector:
    """A graded bivector of degree ell, skew when ell is even.

    Stored as an arity-2 form over the unshifted cotangent frame, so the
    entries are the components against pairs of coordinate one-forms.
    """

    __slots__ = ("chart", "ell", "form")

    def __init__(self, form: Form):
        chart = form.chart
        if form.frame != cotangent_frame(chart, 0):
            raise FrameMismatch("bivector components live over the cotangent frame")
        if form.arity != 2:
            raise ArityMismatch("a bivector has arity two")
        want = SKEW if form.degree % 2 == 0 else SYM
        if form.flavor != want:
            raise FlavorMismatch(
                f"degree {form.degree} bivector must be {want}"
            )
        self.chart = chart
        self.ell = form.degree
        self.form = form

    @staticmethod
    def from_components(chart: Chart, ell: int, comps: dict) -> "Bivector":
        frame = cotangent_frame(chart, 0)
        flavor = SKEW if ell % 2 == 0 else SYM
        built = {}
        for key, val in comps.items():
            tup = tuple(chart.index(k) if isinstance(k, str) else int(k) for k in key)
            if not isinstance(val, GFunction):
                val = GFunction.const(chart, val)
            built[tup] = val
        return Bivector(Form(chart, frame, 2, ell, flavor, built))

    @property
    def flavor(self) -> str:
        return self.form.flavor

    def sharp(self, xi: Form) -> Section:
        return pi_sharp(self.form, xi)

    def is_zero(self) -> bool:
        return self.form.is_zero()

    def __repr__(self):
        return f"Bivector(ell={self.ell}, {self.form!r})"


def pi_sharp(pi2: Form, xi: Form) -> Section:
    """The induced map on one-forms, as a tangent section.

    Components are (-1)^{|z^A|} pi2(xi, e^A) against the coordinate frame;
    accepts any arity-2 form over the cotangent frame so that structures
    of the wrong symmetry can be probed as well.
    """
    chart = pi2.chart
    if xi.chart != chart:
        raise ChartMismatch("arguments live on different charts")
    if pi2.arity != 2 or xi.arity != 1:
        raise ArityMismatch("sharp pairs an arity-2 form with a one-form")
    if pi2.frame != cotangent_frame(chart, 0):
        raise FrameMismatch("sharp needs components over the cotangent frame")
    if xi.frame != tangent_frame(chart, 0):
        raise FrameMismatch("the argument one-form eats tangent sections")
    sxi = form1_to_section(xi)
    frame = tangent_frame(chart, 0)
    comps = {}
    for A in range(chart.n):
        unit = Section.unit(chart, cotangent_frame(chart, 0), A)
        f = pi2.eval([sxi, unit]).scale(_sgn(chart.degrees[A]))
        if not f.is_zero():
            comps[A] = f
    return Section(chart, frame, xi.degree + pi2.degree, comps)


def _dz(chart: Chart, A: int) -> Form:
    """The coordinate one-form dz^A over the tangent frame."""
    frame = tangent_frame(chart, 0)
    return Form(
        chart, frame, 1, chart.degrees[A], SKEW, {(A,): GFunction.one(chart)}
    )


def graph_section(Pi: Bivector, xi: Form) -> GenSection:
    """The generalized section (sharp(xi), xi) of the graph."""
    xi = xi.with_flavor(SKEW) if xi.arity < 2 else xi
    return GenSection(Pi.chart, Pi.ell, xi.degree, Pi.sharp(xi), xi)


def graph_of_pi(Pi: Bivector) -> List[GenSection]:
    """Frame generators (sharp(dz^A), dz^A) of the graph of a bivector."""
    return [graph_section(Pi, _dz(Pi.chart, A)) for A in range(Pi.chart.n)]


def koszul_bracket(Pi: Bivector, xi: Form, eta: Form) -> Form:
    """The bracket induced on one-forms by a graded bivector.

    [xi, eta] = (-1)^{(|xi|+ell)ell} L_{sharp xi} eta
                - (-1)^{(|eta|+ell)|xi|} i_{sharp eta} d xi,
    of degree |xi| + |eta| + ell.
    """
    for arg in (xi, eta):
        if arg.arity != 1:
            raise ArityMismatch("the bracket pairs one-forms")
        if arg.frame != tangent_frame(Pi.chart, 0):
            raise FrameMismatch("one-forms eat tangent sections")
    ell = Pi.ell
    alg = tangent_algebroid(Pi.chart, 0)
    xi = xi.with_flavor(SKEW)
    eta = eta.with_flavor(SKEW)
    first = lie_form(alg, Pi.sharp(xi), eta).scale(_sgn((xi.degree + ell) * ell))
    second = interior(Pi.sharp(eta), d_form(alg, xi)).scale(
        _sgn((eta.degree + ell) * xi.degree)
    )
    return first + second.scale(-1)


def hamiltonian(Pi: Bivector, f: GFunction) -> Section:
    """The Hamiltonian tangent section attached to a function."""
    return Pi.sharp(d_function(tangent_algebroid(Pi.chart, 0), f)).scale(
        -_sgn(f.degree * (1 + Pi.ell))
    )


def poisson_bracket(Pi: Bivector, f: GFunction, g: GFunction) -> GFunction:
    """{f, g} as a double derived bracket against the bivector."""
    from .calculus import schouten

    alg = tangent_algebroid(Pi.chart, 0)
    frame = cotangent_frame(Pi.chart, 0)
    Ff = Form.from_function(Pi.chart, frame, f)
    Fg = Form.from_function(Pi.chart, frame, g)
    inner = schouten(alg, Ff, Pi.form, Pi.flavor)
    return schouten(alg, inner, Fg, Pi.flavor).as_function()


def cotangent_algebroid(Pi: Bivector) -> Algebroid:
    """The algebroid on one-forms with anchor sharp and the Koszul bracket."""
    chart = Pi.chart

    def anchor(xs: Section):
        return section_to_vf(pi_sharp(Pi.form, section_to_form1(xs)), 0)

    def bracket(xs: Section, ys: Section) -> Section:
        out = koszul_bracket(Pi, section_to_form1(xs), section_to_form1(ys))
        return form1_to_section(out)

    return Algebroid(
        chart,
        Pi.ell,
        cotangent_frame(chart, 0),
        anchor,
        bracket,
        name=f"T*M_pi[{Pi.ell}]",
    )


def _resolve_twist(Pi: Bivector, H: Optional[Form]) -> Tuple[CourantData, Form]:
    data = CourantData(Pi.chart, Pi.ell, H)
    if not data.twist_closed():
        raise PreconditionUnmet("the twist must be closed")
    return data, data.H


def twisted_poisson_defects(Pi: Bivector, H: Optional[Form] = None) -> list:
    """Component mismatches of the twisted structure equation.

    For each canonical index triple the half bracket of the bivector with
    itself must equal minus the twist pulled through sharp three times:
    [Pi,Pi](A,B,C) = -2 (-1)^{(|z^B|+ell)ell} H(sharp dz^A, sharp dz^B, sharp dz^C).
    Returns (triple, lhs, rhs) for every failure; empty means the graph is
    involutive.
    """
    from .calculus import canonical_tuples, schouten

    chart = Pi.chart
    ell = Pi.ell
    alg = tangent_algebroid(chart, 0)
    PP = schouten(alg, Pi.form, Pi.form, Pi.flavor)
    sharps = [Pi.sharp(_dz(chart, A)) for A in range(chart.n)]
    bad = []
    for tup in canonical_tuples(cotangent_frame(chart, 0), 3, Pi.flavor):
        A, B, C = tup
        lhs = PP.eval_frame(tup)
        if H is None or H.is_zero():
            rhs = GFunction.zero(chart, lhs.degree)
        else:
            rhs = H.eval([sharps[A], sharps[B], sharps[C]]).scale(
                -2 * _sgn((chart.degrees[B] + ell) * ell)
            )
        if lhs != rhs:
            bad.append((tup, lhs, rhs))
    return bad


JacobiatorCheck = namedtuple(
    "JacobiatorCheck", "value snb_value h_value snb_match h_match"
)


def jacobiator(
    Pi: Bivector, H: Optional[Form], f: GFunction, g: GFunction, h: GFunction
) -> JacobiatorCheck:
    """The Jacobi defect of the function bracket, with its two closed forms.

    Requires a closed twist and an involutive graph.  Returns the defect
    J(f,g,h) together with its expression through the bracket of the
    bivector with itself and through the twist of the three Hamiltonian
    sections, plus the two equality flags.
    """
    from .calculus import schouten

    data, H = _resolve_twist(Pi, H)
    if twisted_poisson_defects(Pi, H):
        raise PreconditionUnmet("the graph of the bivector is not involutive")
    chart, ell = Pi.chart, Pi.ell
    alg = tangent_algebroid(chart, 0)

    def pb(a, b):
        return poisson_bracket(Pi, a, b)

    value = (
        pb(f, pb(g, h))
        + pb(pb(f, g), h).scale(-1)
        + pb(g, pb(f, h)).scale(-_sgn((f.degree + ell) * (g.degree + ell)))
    )

    PP = schouten(alg, Pi.form, Pi.form, Pi.flavor)
    args = [form1_to_section(d_function(alg, a)) for a in (f, g, h)]
    snb = (
        PP.eval(args)
        .scale(_sgn(f.degree + g.degree * (1 + ell) + h.degree))
        .scale_scalar_div(2)
    )

    fields = [hamiltonian(Pi, a) for a in (f, g, h)]
    hv = H.eval(fields).scale(_sgn((f.degree + g.degree + h.degree) * ell))

    return JacobiatorCheck(value, snb, hv, value == snb, value == hv)


def check_dirac_graph(
    Pi: Bivector, H: Optional[Form] = None, samples: int = 10, rng=None
) -> Report:
    """Decide whether the graph of a bivector is a Dirac structure.

    Isotropy is checked on frame generators and random one-forms, maximal
    isotropy on the fiber over the origin, and involutivity through two
    independent criteria whose verdicts must agree: closure of the twisted
    bracket under sharp, and the structure equation for the bivector.
    """
    from . import sampling

    data, H = _resolve_twist(Pi, H)
    chart, ell = Pi.chart, Pi.ell
    alg = tangent_algebroid(chart, 0)
    rng = sampling.ensure_rng(rng)
    results = []

    gens = graph_of_pi(Pi)
    one_forms = [_dz(chart, A) for A in range(chart.n)]
    for _ in range(samples):
        one_forms.append(
            sampling.random_form(rng, chart, tangent_frame(chart, 0), 1, SKEW)
        )

    witness = None
    for i, a in enumerate(gens):
        for k in range(i, len(gens)):
            if not pairing(data, a, gens[k]).is_zero():
                witness = f"generators {i} and {k}"
                break
        if witness:
            break
    if witness is None:
        for xi in one_forms[chart.n:]:
            eta = one_forms[rng.randrange(len(one_forms))]
            lhs = plug(xi, [Pi.sharp(eta)]).as_function()
            rhs = plug(eta, [Pi.sharp(xi)]).as_function().scale(
                _sgn((xi.degree + ell) * (eta.degree + ell))
            )
            if lhs + rhs != GFunction.zero(chart, lhs.degree):
                witness = f"one-forms of degrees {xi.degree}, {eta.degree}"
                break
    results.append(
        CheckResult(
            "graph_isotropic",
            PASS if witness is None else FAIL,
            witness=witness,
        )
    )

    flags = is_max_isotropic(
        generalized_fiber(chart, ell), fiber_subspace(chart, ell, gens)
    )
    results.append(
        CheckResult(
            "graph_max_isotropic",
            PASS if flags["isotropic"] and flags["maximal"] else FAIL,
            witness=None if flags["maximal"] else repr(flags),
        )
    )

    pair_pool = [
        (one_forms[i], one_forms[j])
        for i in range(chart.n)
        for j in range(chart.n)
    ]
    for _ in range(samples):
        pair_pool.append(
            (
                one_forms[rng.randrange(len(one_forms))],
                one_forms[rng.randrange(len(one_forms))],
            )
        )
    bracket_witness = None
    for xi, eta in pair_pool:
        X, Y = Pi.sharp(xi), Pi.sharp(eta)
        closed = koszul_bracket(Pi, xi, eta)
        if not H.is_zero():
            closed = closed + plug(H, [X, Y]).scale(_sgn(ell))
        defect = alg.bracket(X, Y) + Pi.sharp(closed).scale(-1)
        if not defect.is_zero():
            bracket_witness = f"one-forms of degrees {xi.degree}, {eta.degree}"
            break
    results.append(
        CheckResult(
            "involutive_bracket",
            PASS if bracket_witness is None else FAIL,
            witness=bracket_witness,
        )
    )

    defects = twisted_poisson_defects(Pi, H)
    results.append(
        CheckResult(
            "involutive_structure_equation",
            PASS if not defects else FAIL,
            witness=None if not defects else f"triple {defects[0][0]}",
        )
    )

    results.append(
        CheckResult(
            "criteria_agree",
            PASS if (bracket_witness is None) == (not defects) else FAIL,
        )
    )
    return Report(f"dirac graph (ell={ell})", results)


# -- generalized complex maps --------------------------------------------


class GCSMap:
    """A degree-zero endomorphism of T[ell]M + T*M, stored column-wise.

    ``tangent_cols[A]`` is the image of the frame generator (d/dz^A, 0)
    and ``form_cols[A]`` the image of (0, dz^A); the action on a general
    section follows by module linearity, with the sign of the action of a
    coefficient on the tangent part.
    """

    __slots__ = ("chart", "ell", "tangent_cols", "form_cols", "_square")

    def __init__(
        self,
        chart: Chart,
        ell: int,
        tangent_cols: Sequence[GenSection],
        form_cols: Sequence[GenSection],
    ):
        if len(tangent_cols) != chart.n or len(form_cols) != chart.n:
            raise ValidationError(["one column per coordinate is required"])
        for A, col in enumerate(tangent_cols):
            if col.chart != chart or col.ell != ell:
                raise ChartMismatch("column lives on a different bundle")
            if col.degree != -chart.degrees[A] - ell:
                raise DegreeMismatch(
                    f"tangent column {A} must have degree {-chart.degrees[A] - ell}"
                )
        for A, col in enumerate(form_cols):
            if col.chart != chart or col.ell != ell:
                raise ChartMismatch("column lives on a different bundle")
            if col.degree != chart.degrees[A]:
                raise DegreeMismatch(
                    f"form column {A} must have degree {chart.degrees[A]}"
                )
        self.chart = chart
        self.ell = int(ell)
        self.tangent_cols = tuple(tangent_cols)
        self.form_cols = tuple(form_cols)
        self._square = None

    @staticmethod
    def from_blocks(
        chart: Chart,
        ell: int,
        a: Optional[dict] = None,
        b: Optional[dict] = None,
        c: Optional[dict] = None,
        d: Optional[dict] = None,
    ) -> "GCSMap":
        """Assemble a map from sparse blocks keyed by (row, col) names.

        Block a maps tangent to tangent, b forms to tangent, c tangent to
        forms and d forms to forms.  Scalar entries are only allowed where
        the target component has degree zero.
        """
        frame = tangent_frame(chart, 0)

        def idx(k):
            return chart.index(k) if isinstance(k, str) else int(k)

        def columns(block):
            cols: Dict[int, dict] = {}
            for (row, col), val in (block or {}).items():
                if not isinstance(val, GFunction):
                    val = GFunction.const(chart, val)
                if val.is_zero():
                    continue
                cols.setdefault(idx(col), {})[idx(row)] = val
            return cols

        acols, bcols, ccols, dcols = (columns(blk) for blk in (a, b, c, d))
        tangent_cols = []
        form_cols = []
        for A in range(chart.n):
            dA = chart.degrees[A]
            tangent_cols.append(
                GenSection(
                    chart,
                    ell,
                    -dA - ell,
                    Section(chart, frame, -dA, acols.get(A, {})),
                    Form(
                        chart, frame, 1, -dA - ell, SKEW,
                        {(B,): f for B, f in ccols.get(A, {}).items()},
                    ),
                )
            )
            form_cols.append(
                GenSection(
                    chart,
                    ell,
                    dA,
                    Section(chart, frame, dA + ell, bcols.get(A, {})),
                    Form(
                        chart, frame, 1, dA, SKEW,
                        {(B,): f for B, f in dcols.get(A, {}).items()},
                    ),
                )
            )
        return GCSMap(chart, ell, tangent_cols, form_cols)

    def apply(self, psi: GenSection) -> GenSection:
        if psi.chart != self.chart:
            raise ChartMismatch("section lives on a different chart")
        if psi.ell != self.ell:
            raise ShiftMismatch("section lives on a differently shifted bundle")
        chart, ell = self.chart, self.ell
        frame = tangent_frame(chart, 0)
        out_x = Section.zero(chart, frame, psi.degree + ell)
        out_xi = Form.zero(chart, frame, 1, psi.degree, SKEW)
        for A, f in psi.x.comps.items():
            col = self.tangent_cols[A]
            out_x = out_x + col.x.fmul(f)
            out_xi = out_xi + col.xi.fmul(f).scale(_sgn(f.degree * ell))
        for (A,), f in psi.xi.comps.items():
            col = self.form_cols[A]
            out_x = out_x + col.x.fmul(f).scale(_sgn(f.degree * ell))
            out_xi = out_xi + col.xi.fmul(f)
        return GenSection(chart, ell, psi.degree, out_x, out_xi)

    def generators(self) -> List[GenSection]:
        chart, ell = self.chart, self.ell
        frame = tangent_frame(chart, 0)
        gens = []
        for A in range(chart.n):
            dA = chart.degrees[A]
            gens.append(
                GenSection(
                    chart, ell, -dA - ell,
                    Section.unit(chart, frame, A),
                    Form.zero(chart, frame, 1, -dA - ell, SKEW),
                )
            )
        for A in range(chart.n):
            dA = chart.degrees[A]
            gens.append(
                GenSection(
                    chart, ell, dA, Section.zero(chart, frame, dA + ell), _dz(chart, A)
                )
            )
        return gens

    def is_almost_complex(self) -> bool:
        if self._square is None:
            ok = True
            for gen in self.generators():
                if self.apply(self.apply(gen)) != gen.scale(-1):
                    ok = False
                    break
            self._square = ok
        return self._square

    def __repr__(self):
        return f"GCSMap(ell={self.ell}, n={self.chart.n})"


def symplectic_gcs(omega: Form) -> GCSMap:
    """The generalized complex map of a symplectic form.

    Sends (X, xi) to (-inverse(flat)(xi), flat(X)).  The flat map is
    inverted over constant coefficients; a non-constant or degenerate
    coefficient matrix raises UnsolvableError.
    """
    chart = omega.chart
    frame = tangent_frame(chart, 0)
    if omega.arity != 2 or omega.flavor != SKEW or omega.frame != frame:
        raise FrameMismatch("a symplectic form is a skew 2-form on tangents")
    ell = -omega.degree
    W = []
    for A in range(chart.n):
        row = []
        for B in range(chart.n):
            f = omega.eval_frame((A, B))
            val = _constant_value(f)
            if val is None:
                raise UnsolvableError(
                    "flat map inversion needs constant coefficients"
                )
            row.append(val)
        W.append(row)
    Wt = [[W[B][A] for B in range(chart.n)] for A in range(chart.n)]
    tangent_cols = []
    form_cols = []
    for A in range(chart.n):
        dA = chart.degrees[A]
        unit = Section.unit(chart, frame, A)
        tangent_cols.append(
            GenSection(
                chart, ell, -dA - ell, Section.zero(chart, frame, -dA), plug(omega, [unit])
            )
        )
        rhs = [Fraction(1) if B == A else Fraction(0) for B in range(chart.n)]
        sol = solve([list(r) for r in Wt], rhs)
        if sol is None:
            raise UnsolvableError("the symplectic form is degenerate over constants")
        comps = {
            B: GFunction.const(chart, -u) for B, u in enumerate(sol) if u
        }
        form_cols.append(
            GenSection(
                chart, ell, dA,
                Section(chart, frame, dA + ell, comps),
                Form.zero(chart, frame, 1, dA, SKEW),
            )
        )
    return GCSMap(chart, ell, tangent_cols, form_cols)


def complex_gcs(chart: Chart, ell: int, j: dict) -> GCSMap:
    """The generalized complex map of an almost complex tangent map.

    ``j[(B, A)]`` are the components of J d/dz^A = sum_B j^B_A d/dz^B, of
    degree |z^B| - |z^A|.  The map sends (X, xi) to (J X, -transpose(J) xi)
    where the transpose pairs through the coordinate duality with the
    Koszul sign of moving the entry past the argument.  Raises
    NotAlmostComplex unless the square is minus the identity.
    """
    a = {}
    d = {}

    def idx(k):
        return chart.index(k) if isinstance(k, str) else int(k)

    for (row, col), val in j.items():
        B, A = idx(row), idx(col)
        if not isinstance(val, GFunction):
            val = GFunction.const(chart, val)
        if val.is_zero():
            continue
        a[(B, A)] = val
        # (transpose(J) dz^A)_B = (-1)^{|j^A_B| |z^A|} j^A_B, then negated.
        d[(A, B)] = val.scale(-_sgn(val.degree * chart.degrees[B]))
    out = GCSMap.from_blocks(chart, ell, a=a, d=d)
    if not out.is_almost_complex():
        raise NotAlmostComplex("the tangent map does not square to minus one")
    return out


def nijenhuis(data: CourantData, J: GCSMap, a: GenSection, b: GenSection) -> GenSection:
    """The Nijenhuis defect of an almost complex map against a bracket.

    N(a, b) = [a, b] - [Ja, Jb] + J([a, Jb] + [Ja, b]); identically zero
    exactly when the +i eigenbundle is involutive.
    """
    if J.chart != data.chart or J.ell != data.ell:
        raise ChartMismatch("map and bracket live on different bundles")
    if not J.is_almost_complex():
        raise NotAlmostComplex("the endomorphism does not square to minus one")
    Ja, Jb = J.apply(a), J.apply(b)
    mixed = dorfman(data, a, Jb) + dorfman(data, Ja, b)
    return dorfman(data, a, b) - dorfman(data, Ja, Jb) + J.apply(mixed)


def _constant_value(f: GFunction):
    """The scalar value of a constant function, or None."""
    if f.is_zero():
        return f.chart.zero_scalar()
    key = (0,) * f.chart.n
    if f.degree == 0 and set(f.terms) == {key}:
        return f.terms[key]
    return None


def plus_i_eigenspace(J: GCSMap) -> Dict[int, list]:
    """Per-degree bases of the +i eigenspace of the fiber map.

    Only defined when every column entry is constant, so that the fiber
    map is one matrix per degree; otherwise raises UnsolvableError.  The
    vectors are Gaussian rational in the fiber basis (tangent then form).
    """
    chart, ell = J.chart, J.ell
    cols: Dict[int, Dict[tuple, list]] = {}
    for A in range(chart.n):
        for kind, col in (("v", J.tangent_cols[A]), ("f", J.form_cols[A])):
            vec = []
            for rkind, B in fiber_basis(chart, ell, col.degree):
                f = col.x.comps.get(B) if rkind == "v" else col.xi.comps.get((B,))
                if f is None:
                    vec.append(GaussianRational(0))
                    continue
                val = _constant_value(f)
                if val is None:
                    raise UnsolvableError("non-constant endomorphism blocks")
                vec.append(GaussianRational(val) if not isinstance(val, GaussianRational) else val)
            cols.setdefault(col.degree, {})[(kind, A)] = vec
    out = {}
    i = GaussianRational(0, 1)
    one = GaussianRational(1)
    for jdeg, bycol in cols.items():
        basis = fiber_basis(chart, ell, jdeg)
        m = len(basis)
        rows = []
        for r in range(m):
            row = []
            for ckey in basis:
                row.append(bycol[ckey][r])
            rows.append([row[c] - (i if c == r else GaussianRational(0)) for c in range(m)])
        out[jdeg] = nullspace(rows, ncols=m, one=one)
    return out


def gcs_checks(data: CourantData, J: GCSMap, samples: int = 8, rng=None) -> Report:
    """Property report for a generalized complex candidate.

    Checks the square, orthogonality against the canonical pairing, the
    Nijenhuis defect against the twisted bracket, and extracts the +i
    eigenspace fiberwise when the blocks are constant.  A wrong square
    fails fast since the remaining checks presuppose it.
    """
    from . import sampling

    if J.chart != data.chart or J.ell != data.ell:
        raise ChartMismatch("map and bracket live on different bundles")
    chart, ell = data.chart, data.ell
    rng = sampling.ensure_rng(rng)
    title = f"generalized complex (ell={ell})"

    pool = J.generators()
    for _ in range(samples):
        pool.append(sampling.random_gen_section(rng, chart, ell))

    witness = None
    for s in pool:
        if J.apply(J.apply(s)) != s.scale(-1):
            witness = f"section of degree {s.degree}"
            break
    if witness is not None:
        return Report(
            title,
            [CheckResult("squares_to_minus_one", FAIL, witness=witness)],
        )
    results = [CheckResult("squares_to_minus_one", PASS)]

    gens = J.generators()
    pairs = [(a, b) for a in gens for b in gens]
    for _ in range(samples):
        pairs.append(
            (pool[rng.randrange(len(pool))], pool[rng.randrange(len(pool))])
        )
    witness = None
    for s, t in pairs:
        if pairing(data, J.apply(s), J.apply(t)) != pairing(data, s, t):
            witness = f"degrees {s.degree}, {t.degree}"
            break
    results.append(
        CheckResult("orthogonal", PASS if witness is None else FAIL, witness=witness)
    )

    witness = None
    for s, t in pairs:
        if not nijenhuis(data, J, s, t).is_zero():
            witness = f"degrees {s.degree}, {t.degree}"
            break
    results.append(
        CheckResult(
            "nijenhuis_vanishes", PASS if witness is None else FAIL, witness=witness
        )
    )

    try:
        eig = plus_i_eigenspace(J)
    except UnsolvableError as err:
        results.append(
            CheckResult("plus_i_eigenspace", INDETERMINATE, reason=str(err))
        )
    else:
        space = generalized_fiber(chart, ell)
        bad = [
            jdeg
            for jdeg, r in space.gdim.items()
            if 2 * len(eig.get(jdeg, ())) != r
        ]
        dims = ", ".join(
            f"{jdeg}:{len(v)}" for jdeg, v in sorted(eig.items()) if v
        )
        results.append(
            CheckResult(
                "plus_i_eigenspace",
                PASS if not bad else FAIL,
                witness=None if not bad else f"degrees {bad}",
                reason=f"constant corank; dims {dims}",
            )
        )
    return Report(title, results)
