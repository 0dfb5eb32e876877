"""Cartan calculus over graded charts.

Frames, sections, skew and symmetric forms, graded vector fields, the
algebroid differential, interior products, Lie derivatives and the two
Schouten-Nijenhuis brackets on multivector fields.  Every operation keeps
polynomial coefficients exact, so identities are checked by equality on
the nose rather than numerically.
"""

from __future__ import annotations

from itertools import product as _iproduct
from typing import Callable, Iterator, Optional, Sequence

from .errors import (
    ArityMismatch,
    ChartMismatch,
    DegreeMismatch,
    FlavorMismatch,
    FrameMismatch,
)
from .gralg import Chart, GFunction

# Flavor tags: skew forms pair with even-degree algebroids, symmetric
# forms with odd-degree ones.
SKEW = "skew"
SYM = "sym"


def _sgn(exponent: int) -> int:
    return -1 if exponent % 2 else 1


class Frame:
    """An ordered homogeneous frame of a graded vector bundle.

    Entries are (label, degree) pairs.  The dual frame keeps labels and
    flips degrees, so frames obtained by double dualization compare equal.
    """

    __slots__ = ("labels", "degrees")

    def __init__(self, entries: Sequence):
        entries = tuple(entries)
        self.labels = tuple(str(label) for label, _ in entries)
        self.degrees = tuple(int(deg) for _, deg in entries)

    @property
    def n(self) -> int:
        return len(self.labels)

    def dual(self) -> "Frame":
        return Frame(tuple(zip(self.labels, (-d for d in self.degrees))))

    def entries(self):
        return tuple(zip(self.labels, self.degrees))

    def __eq__(self, other):
        if not isinstance(other, Frame):
            return NotImplemented
        return self.labels == other.labels and self.degrees == other.degrees

    def __hash__(self):
        return hash((self.labels, self.degrees))

    def __repr__(self):
        inner = ", ".join(f"{l}:{d}" for l, d in zip(self.labels, self.degrees))
        return f"Frame({inner})"


def tangent_frame(chart: Chart, shift: int = 0) -> Frame:
    """Frame of coordinate derivations for T[shift]M."""
    return Frame(
        [(name, -deg - shift) for name, deg in zip(chart.coords, chart.degrees)]
    )


def cotangent_frame(chart: Chart, shift: int = 0) -> Frame:
    """Frame of coordinate differentials for T*[shift]M."""
    return Frame(
        [(name, deg - shift) for name, deg in zip(chart.coords, chart.degrees)]
    )


def _check_chart(a, b):
    if a.chart is not b.chart and a.chart != b.chart:
        raise ChartMismatch("operands live on different charts")


def _check_frame(a, b):
    if a.frame != b.frame:
        raise FrameMismatch(f"frame mismatch: {a.frame} vs {b.frame}")


class Section:
    """A section of a graded vector bundle in a fixed frame.

    Stored as the coefficients of the frame decomposition psi = f^l Phi_l,
    so the coefficient at slot l has degree |psi| - |Phi_l|.
    """

    __slots__ = ("chart", "frame", "degree", "comps")

    def __init__(self, chart: Chart, frame: Frame, degree: int, comps: dict):
        self.chart = chart
        self.frame = frame
        self.degree = int(degree)
        clean = {}
        for idx, f in comps.items():
            idx = int(idx)
            if not isinstance(f, GFunction):
                f = GFunction.const(chart, f)
            if f.is_zero():
                continue
            want = self.degree - frame.degrees[idx]
            if f.degree != want:
                raise DegreeMismatch(
                    f"component {idx} has degree {f.degree}, expected {want}"
                )
            clean[idx] = f
        self.comps = clean

    @staticmethod
    def zero(chart: Chart, frame: Frame, degree: int = 0) -> "Section":
        return Section(chart, frame, degree, {})

    @staticmethod
    def unit(chart: Chart, frame: Frame, idx: int) -> "Section":
        return Section(
            chart, frame, frame.degrees[idx], {idx: GFunction.one(chart)}
        )

    def is_zero(self) -> bool:
        return not self.comps

    def component(self, idx: int) -> GFunction:
        f = self.comps.get(idx)
        if f is None:
            return GFunction.zero(self.chart, self.degree - self.frame.degrees[idx])
        return f

    def __eq__(self, other):
        if not isinstance(other, Section):
            return NotImplemented
        if self.frame != other.frame:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.comps == other.comps

    def __hash__(self):
        return hash((self.frame, self.degree, tuple(sorted(self.comps))))

    def __add__(self, other: "Section") -> "Section":
        _check_chart(self, other)
        _check_frame(self, other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DegreeMismatch(
                f"cannot add sections of degrees {self.degree} and {other.degree}"
            )
        comps = dict(self.comps)
        for idx, f in other.comps.items():
            g = comps.get(idx)
            comps[idx] = f if g is None else g + f
        return Section(self.chart, self.frame, self.degree, comps)

    def __neg__(self) -> "Section":
        return Section(
            self.chart,
            self.frame,
            self.degree,
            {i: -f for i, f in self.comps.items()},
        )

    def __sub__(self, other: "Section") -> "Section":
        return self + (-other)

    def scale(self, value) -> "Section":
        return Section(
            self.chart,
            self.frame,
            self.degree,
            {i: value * f for i, f in self.comps.items()},
        )

    def fmul(self, f: GFunction) -> "Section":
        """Module action f . psi (plain left multiplication of coefficients)."""
        return Section(
            self.chart,
            self.frame,
            self.degree + f.degree,
            {i: f * g for i, g in self.comps.items()},
        )

    def __repr__(self):
        if self.is_zero():
            return "Section(0)"
        parts = [f"({f!r})*{self.frame.labels[i]}" for i, f in sorted(self.comps.items())]
        return "Section(" + " + ".join(parts) + ")"


def normalize_frame_tuple(frame: Frame, flavor: str, tup: Sequence[int]):
    """Sort a tuple of frame indices, tracking the Koszul sign.

    Returns (canonical tuple, sign) or None when the form component is
    forced to vanish (a repeated slot of the wrong parity).
    """
    lst = list(tup)
    degs = frame.degrees
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            da, db = degs[lst[j - 1]], degs[lst[j]]
            both_odd = (da % 2) and (db % 2)
            if flavor == SKEW:
                sign = sign if both_odd else -sign
            else:
                sign = -sign if both_odd else sign
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            j -= 1
    for k in range(1, len(lst)):
        if lst[k] == lst[k - 1]:
            odd = degs[lst[k]] % 2
            if (flavor == SKEW and not odd) or (flavor == SYM and odd):
                return None
    return tuple(lst), sign


def canonical_tuples(frame: Frame, arity: int, flavor: str) -> Iterator[tuple]:
    """All canonical index tuples for a form of the given arity."""
    degs = frame.degrees

    def rec(start: int, left: int, acc: list):
        if left == 0:
            yield tuple(acc)
            return
        for idx in range(start, frame.n):
            odd = degs[idx] % 2
            repeat_ok = odd if flavor == SKEW else not odd
            if acc and acc[-1] == idx and not repeat_ok:
                continue
            acc.append(idx)
            yield from rec(idx, left - 1, acc)
            acc.pop()

    yield from rec(0, arity, [])


class Form:
    """A multilinear form over a frame, of skew or symmetric flavor.

    Components are the evaluations on canonical frame tuples.  Multivector
    fields are represented as forms over the dual frame.
    """

    __slots__ = ("chart", "frame", "arity", "degree", "flavor", "comps")

    def __init__(
        self,
        chart: Chart,
        frame: Frame,
        arity: int,
        degree: int,
        flavor: str,
        comps: dict,
    ):
        if flavor not in (SKEW, SYM):
            raise FlavorMismatch(f"unknown flavor {flavor!r}")
        self.chart = chart
        self.frame = frame
        self.arity = int(arity)
        self.degree = int(degree)
        self.flavor = flavor
        clean = {}
        for tup, f in comps.items():
            tup = tuple(int(t) for t in tup)
            if len(tup) != self.arity:
                raise ArityMismatch(f"component key {tup} has wrong length")
            norm = normalize_frame_tuple(frame, flavor, tup)
            if norm is None or norm[0] != tup:
                raise ArityMismatch(f"component key {tup} is not canonical")
            if not isinstance(f, GFunction):
                f = GFunction.const(chart, f)
            if f.is_zero():
                continue
            want = self.degree + sum(frame.degrees[t] for t in tup)
            if f.degree != want:
                raise DegreeMismatch(
                    f"component {tup} has degree {f.degree}, expected {want}"
                )
            clean[tup] = f
        self.comps = clean

    @staticmethod
    def zero(chart, frame, arity, degree=0, flavor=SKEW) -> "Form":
        return Form(chart, frame, arity, degree, flavor, {})

    @staticmethod
    def from_function(chart, frame, f: GFunction, flavor=SKEW) -> "Form":
        return Form(chart, frame, 0, f.degree, flavor, {(): f})

    def is_zero(self) -> bool:
        return not self.comps

    def as_function(self) -> GFunction:
        if self.arity != 0:
            raise ArityMismatch("only arity-0 forms are functions")
        f = self.comps.get(())
        return f if f is not None else GFunction.zero(self.chart, self.degree)

    def with_flavor(self, flavor: str) -> "Form":
        if flavor == self.flavor:
            return self
        if self.arity >= 2:
            raise FlavorMismatch("cannot retag a form of arity >= 2")
        return Form(self.chart, self.frame, self.arity, self.degree, flavor, self.comps)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if self.frame != other.frame or self.arity != other.arity:
            return False
        if self.is_zero() and other.is_zero():
            return True
        if self.arity >= 2 and self.flavor != other.flavor:
            return False
        return self.degree == other.degree and self.comps == other.comps

    def __hash__(self):
        return hash((self.frame, self.arity, self.degree, tuple(sorted(self.comps))))

    def __add__(self, other: "Form") -> "Form":
        _check_chart(self, other)
        _check_frame(self, other)
        if self.arity != other.arity:
            raise ArityMismatch(
                f"cannot add forms of arities {self.arity} and {other.arity}"
            )
        if self.arity >= 2 and self.flavor != other.flavor:
            raise FlavorMismatch("cannot add forms of different flavors")
        if self.is_zero():
            return other.with_flavor(self.flavor) if self.arity < 2 else other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DegreeMismatch(
                f"cannot add forms of degrees {self.degree} and {other.degree}"
            )
        comps = dict(self.comps)
        for tup, f in other.comps.items():
            g = comps.get(tup)
            comps[tup] = f if g is None else g + f
        return Form(self.chart, self.frame, self.arity, self.degree, self.flavor, comps)

    def __neg__(self) -> "Form":
        return Form(
            self.chart,
            self.frame,
            self.arity,
            self.degree,
            self.flavor,
            {t: -f for t, f in self.comps.items()},
        )

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, value) -> "Form":
        return Form(
            self.chart,
            self.frame,
            self.arity,
            self.degree,
            self.flavor,
            {t: value * f for t, f in self.comps.items()},
        )

    def fmul(self, f: GFunction) -> "Form":
        """Module action f . omega with (f.omega)(args) = f omega(args)."""
        return Form(
            self.chart,
            self.frame,
            self.arity,
            self.degree + f.degree,
            self.flavor,
            {t: f * g for t, g in self.comps.items()},
        )

    def eval_frame(self, tup: Sequence[int]) -> GFunction:
        """Evaluate on a bare frame tuple."""
        want = self.degree + sum(self.frame.degrees[t] for t in tup)
        norm = normalize_frame_tuple(self.frame, self.flavor, tup)
        if norm is None:
            return GFunction.zero(self.chart, want)
        canon, sign = norm
        f = self.comps.get(canon)
        if f is None:
            return GFunction.zero(self.chart, want)
        return f if sign == 1 else -f

    def eval(self, args: Sequence[Section]) -> GFunction:
        """Evaluate on sections, pulling coefficients with Koszul signs."""
        if len(args) != self.arity:
            raise ArityMismatch(f"expected {self.arity} arguments, got {len(args)}")
        for arg in args:
            _check_frame(self, arg)
        want = self.degree + sum(arg.degree for arg in args)
        total = GFunction.zero(self.chart, want)
        if not self.comps:
            return total
        choices = [sorted(arg.comps.items()) for arg in args]
        for combo in _iproduct(*choices):
            idxs = tuple(i for i, _ in combo)
            norm = normalize_frame_tuple(self.frame, self.flavor, idxs)
            if norm is None:
                continue
            canon, nsign = norm
            comp = self.comps.get(canon)
            if comp is None:
                continue
            sign_exp = 0
            prefix = self.degree
            prod = None
            for idx, f in combo:
                sign_exp += f.degree * prefix
                prefix += self.frame.degrees[idx]
                prod = f if prod is None else prod * f
            term = prod * comp if prod is not None else comp
            total = total + term.scale(nsign * _sgn(sign_exp))
        return total

    def __repr__(self):
        if self.is_zero():
            return f"Form(0, arity={self.arity})"
        parts = []
        for tup, f in sorted(self.comps.items()):
            slots = ",".join(self.frame.labels[t] for t in tup)
            parts.append(f"[{slots}] -> {f!r}")
        return f"Form({self.flavor}, deg={self.degree}; " + "; ".join(parts) + ")"


class VectorField:
    """A graded derivation X = X^A d/dz^A with polynomial coefficients."""

    __slots__ = ("chart", "degree", "comps")

    def __init__(self, chart: Chart, degree: int, comps: dict):
        self.chart = chart
        self.degree = int(degree)
        clean = {}
        for name, f in comps.items():
            if not isinstance(f, GFunction):
                f = GFunction.const(chart, f)
            if f.is_zero():
                continue
            want = self.degree + chart.degree_of(name)
            if f.degree != want:
                raise DegreeMismatch(
                    f"coefficient of d/d{name} has degree {f.degree}, expected {want}"
                )
            clean[name] = f
        self.comps = clean

    @staticmethod
    def zero(chart: Chart, degree: int = 0) -> "VectorField":
        return VectorField(chart, degree, {})

    @staticmethod
    def coordinate(chart: Chart, name: str) -> "VectorField":
        """The derivation d/dz^A, of degree -|z^A|."""
        return VectorField(
            chart, -chart.degree_of(name), {name: GFunction.one(chart)}
        )

    def is_zero(self) -> bool:
        return not self.comps

    def component(self, name: str) -> GFunction:
        f = self.comps.get(name)
        if f is None:
            return GFunction.zero(self.chart, self.degree + self.chart.degree_of(name))
        return f

    def apply(self, f: GFunction) -> GFunction:
        out = GFunction.zero(self.chart, self.degree + f.degree)
        for name, coeff in self.comps.items():
            out = out + coeff * f.partial(name)
        return out

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.comps == other.comps

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.comps))))

    def __add__(self, other: "VectorField") -> "VectorField":
        _check_chart(self, other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DegreeMismatch(
                f"cannot add vector fields of degrees {self.degree} and {other.degree}"
            )
        comps = dict(self.comps)
        for name, f in other.comps.items():
            g = comps.get(name)
            comps[name] = f if g is None else g + f
        return VectorField(self.chart, self.degree, comps)

    def __neg__(self) -> "VectorField":
        return VectorField(
            self.chart, self.degree, {n: -f for n, f in self.comps.items()}
        )

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def scale(self, value) -> "VectorField":
        return VectorField(
            self.chart, self.degree, {n: value * f for n, f in self.comps.items()}
        )

    def fmul(self, f: GFunction) -> "VectorField":
        return VectorField(
            self.chart,
            self.degree + f.degree,
            {n: f * g for n, g in self.comps.items()},
        )

    def commutator(self, other: "VectorField") -> "VectorField":
        """[X, Y] = X Y - (-1)^{|X||Y|} Y X, computed coefficient-wise."""
        _check_chart(self, other)
        sign = _sgn(self.degree * other.degree)
        comps = {}
        for name in self.chart.coords:
            a = self.apply(other.component(name))
            b = other.apply(self.component(name))
            comps[name] = a - b.scale(sign)
        return VectorField(self.chart, self.degree + other.degree, comps)

    def __repr__(self):
        if self.is_zero():
            return "VectorField(0)"
        parts = [f"({f!r})*d/d{n}" for n, f in sorted(self.comps.items())]
        return "VectorField(" + " + ".join(parts) + ")"


# Conversions between the various representations.


def section_to_vf(x: Section, shift: int = 0) -> VectorField:
    """Sections of T[shift]M as honest vector fields."""
    comps = {}
    for idx, f in x.comps.items():
        name = x.frame.labels[idx]
        comps[name] = f.scale(_sgn(f.degree * shift))
    return VectorField(x.chart, x.degree + shift, comps)


def vf_to_section(X: VectorField, frame: Frame, shift: int = 0) -> Section:
    """Inverse of section_to_vf for the matching tangent frame."""
    comps = {}
    for name, f in X.comps.items():
        idx = frame.labels.index(name)
        comps[idx] = f.scale(_sgn(f.degree * shift))
    return Section(X.chart, frame, X.degree - shift, comps)


def form1_to_section(phi: Form) -> Section:
    """Arity-1 forms over F are sections over the dual frame, verbatim."""
    if phi.arity != 1:
        raise ArityMismatch("expected an arity-1 form")
    dual = phi.frame.dual()
    return Section(
        phi.chart, dual, phi.degree, {t[0]: f for t, f in phi.comps.items()}
    )


def section_to_form1(x: Section, flavor: str = SKEW) -> Form:
    """Sections over F as arity-1 forms over the dual frame, verbatim."""
    dual = x.frame.dual()
    return Form(
        x.chart,
        dual,
        1,
        x.degree,
        flavor,
        {(i,): f for i, f in x.comps.items()},
    )


def section_as_dual_form(x: Section, flavor: str = SKEW) -> Form:
    """Embed a section into the double dual: X(omega) = (-1)^{|X||omega|} omega(X).

    Component-wise this twists by the frame degree of each slot.
    """
    dual = x.frame.dual()
    comps = {}
    for idx, f in x.comps.items():
        comps[(idx,)] = f.scale(_sgn(x.frame.degrees[idx]))
    return Form(x.chart, dual, 1, x.degree, flavor, comps)


def section_from_dual_form(phi: Form) -> Section:
    """Inverse of section_as_dual_form (the twist is involutive)."""
    if phi.arity != 1:
        raise ArityMismatch("expected an arity-1 form")
    frame = phi.frame.dual()
    comps = {}
    for tup, f in phi.comps.items():
        comps[tup[0]] = f.scale(_sgn(frame.degrees[tup[0]]))
    return Section(phi.chart, frame, phi.degree, comps)


def pair_form_section(phi: Form, x: Section) -> GFunction:
    """The canonical pairing phi(x) of an arity-1 form with a section."""
    if phi.arity != 1:
        raise ArityMismatch("expected an arity-1 form")
    if phi.frame != x.frame:
        raise FrameMismatch("form and section live over different frames")
    want = phi.degree + x.degree
    total = GFunction.zero(phi.chart, want)
    for idx, f in x.comps.items():
        comp = phi.comps.get((idx,))
        if comp is None:
            continue
        # phi(f Phi) = (-1)^{|f||phi|} f phi(Phi)
        total = total + (f * comp).scale(_sgn(f.degree * phi.degree))
    return total


# The algebroid handle: everything downstream needs only the chart, the
# shift, the frame of sections, the anchor and the bracket.


class Algebroid:
    """A graded Lie algebroid presented through anchor and bracket callbacks."""

    __slots__ = ("chart", "ell", "frame", "_anchor", "_bracket", "name")

    def __init__(
        self,
        chart: Chart,
        ell: int,
        frame: Frame,
        anchor: Callable[[Section], VectorField],
        bracket: Callable[[Section, Section], Section],
        name: str = "algebroid",
    ):
        self.chart = chart
        self.ell = int(ell)
        self.frame = frame
        self._anchor = anchor
        self._bracket = bracket
        self.name = name

    @property
    def flavor(self) -> str:
        return SKEW if self.ell % 2 == 0 else SYM

    def anchor(self, x: Section) -> VectorField:
        return self._anchor(x)

    def hat_anchor(self, x: Section) -> VectorField:
        """a with the auxiliary sign: (-1)^{(|X|+l)l} a(X)."""
        return self._anchor(x).scale(_sgn((x.degree + self.ell) * self.ell))

    def bracket(self, x: Section, y: Section) -> Section:
        return self._bracket(x, y)

    def unit(self, idx: int) -> Section:
        return Section.unit(self.chart, self.frame, idx)

    def __repr__(self):
        return f"Algebroid({self.name}, ell={self.ell})"


def tangent_algebroid(chart: Chart, ell: int = 0) -> Algebroid:
    """T[ell]M with the identity anchor and the commutator bracket."""
    frame = tangent_frame(chart, ell)

    def anchor(x: Section) -> VectorField:
        return section_to_vf(x, ell)

    def bracket(x: Section, y: Section) -> Section:
        comm = section_to_vf(x, ell).commutator(section_to_vf(y, ell))
        return vf_to_section(comm, frame, ell)

    return Algebroid(chart, ell, frame, anchor, bracket, name=f"T[{ell}]M")


# Differential, interior products and Lie derivatives.


def _sigma_reorder(qs: Sequence[int], i: int, j: int) -> int:
    """Koszul sign moving v_i and v_j (1-based) to the front, in order."""
    exp = qs[i - 1] * sum(qs[k] for k in range(i - 1))
    exp += qs[j - 1] * sum(qs[k] for k in range(j - 1))
    exp += qs[i - 1] * qs[j - 1]
    return _sgn(exp)


def d_function(alg: Algebroid, f: GFunction) -> Form:
    """The algebroid differential of a function, as an arity-1 form."""
    comps = {}
    for idx in range(alg.frame.n):
        unit = alg.unit(idx)
        dx = alg.frame.degrees[idx]
        val = alg.hat_anchor(unit).apply(f)
        if alg.ell % 2 == 0:
            val = val.scale(_sgn((dx - 1) * f.degree))
        else:
            val = val.scale(_sgn(dx * (f.degree + 1)))
        comps[(idx,)] = val
    return Form(alg.chart, alg.frame, 1, f.degree + alg.ell, alg.flavor, comps)


def d_form(alg: Algebroid, omega: Form) -> Form:
    """The algebroid differential: arity p -> p+1, degree shift ell."""
    if omega.frame != alg.frame:
        raise FrameMismatch("form does not live over the algebroid frame")
    if omega.flavor != alg.flavor:
        raise FlavorMismatch(
            f"{alg.flavor} algebroid differential needs {alg.flavor} forms"
        )
    if omega.arity == 0:
        return d_function(alg, omega.as_function())
    p = omega.arity
    even = alg.ell % 2 == 0
    out = {}
    for tup in canonical_tuples(alg.frame, p + 1, alg.flavor):
        degs = [alg.frame.degrees[t] for t in tup]
        val = GFunction.zero(
            alg.chart, omega.degree + alg.ell + sum(degs)
        )
        for r in range(1, p + 2):
            rest = tup[: r - 1] + tup[r:]
            comp = omega.comps.get(rest)
            if comp is None:
                continue
            dx = degs[r - 1]
            if even:
                exp = (r + 1) + (dx - 1) * omega.degree + dx * sum(degs[: r - 1])
            else:
                exp = dx * (omega.degree + 1) + dx * sum(degs[: r - 1])
            val = val + alg.hat_anchor(alg.unit(tup[r - 1])).apply(comp).scale(
                _sgn(exp)
            )
        for i in range(1, p + 2):
            for j in range(i + 1, p + 2):
                br = alg.bracket(alg.unit(tup[i - 1]), alg.unit(tup[j - 1]))
                if br.is_zero():
                    continue
                args = [br] + [
                    alg.unit(tup[k])
                    for k in range(p + 1)
                    if k != i - 1 and k != j - 1
                ]
                sigma = _sigma_reorder(degs, i, j)
                if even:
                    sign = _sgn(omega.degree + i + j) * sigma
                else:
                    sign = -_sgn(omega.degree + degs[i - 1]) * sigma
                val = val + omega.eval(args).scale(sign)
        out[tup] = val
    return Form(
        alg.chart, alg.frame, p + 1, omega.degree + alg.ell, alg.flavor, out
    )


def interior(x: Section, omega: Form) -> Form:
    """Interior product, flavor-matched: i_X for skew forms, j_X for symmetric.

    (i_X w)(...) = (-1)^{|w|(|X|-1)} w(X, ...)
    (j_X w)(...) = (-1)^{|w||X|}     w(X, ...)
    """
    _check_frame(omega, x)
    deg = omega.degree + x.degree
    if omega.arity == 0:
        return Form.zero(omega.chart, omega.frame, 0, deg, omega.flavor)
    if omega.flavor == SKEW:
        pref = _sgn(omega.degree * (x.degree - 1))
    else:
        pref = _sgn(omega.degree * x.degree)
    comps = {}
    for tup in canonical_tuples(omega.frame, omega.arity - 1, omega.flavor):
        args = [x] + [Section.unit(omega.chart, omega.frame, t) for t in tup]
        comps[tup] = omega.eval(args).scale(pref)
    return Form(omega.chart, omega.frame, omega.arity - 1, deg, omega.flavor, comps)


def _product_eval(a: Form, b: Form, idxs: tuple) -> GFunction:
    """Evaluate (a ^ b) or (a . b) on a bare frame tuple, by slot peeling."""
    chart, frame, flavor = a.chart, a.frame, a.flavor
    want = a.degree + b.degree + sum(frame.degrees[t] for t in idxs)
    if a.arity == 0:
        f = a.comps.get(())
        if f is None:
            return GFunction.zero(chart, want)
        return f * b.eval_frame(idxs)
    if b.arity == 0:
        g = b.comps.get(())
        if g is None:
            return GFunction.zero(chart, want)
        sign = _sgn((a.arity + a.degree) * g.degree) if flavor == SKEW else _sgn(
            a.degree * g.degree
        )
        return (g * a.eval_frame(idxs)).scale(sign)
    x0 = idxs[0]
    d0 = frame.degrees[x0]
    unit = Section.unit(chart, frame, x0)
    ia = interior(unit, a)
    ib = interior(unit, b)
    if flavor == SKEW:
        pref = _sgn((a.degree + b.degree) * (d0 - 1))
        leib = _sgn((d0 - 1) * (a.degree + a.arity))
    else:
        pref = _sgn((a.degree + b.degree) * d0)
        leib = _sgn(d0 * a.degree)
    first = _product_eval(ia, b, idxs[1:])
    second = _product_eval(a, ib, idxs[1:]).scale(leib)
    return (first + second).scale(pref)


def wedge(a: Form, b: Form) -> Form:
    """The exterior product of skew forms."""
    return _form_product(a, b, SKEW)


def sym_prod(a: Form, b: Form) -> Form:
    """The symmetric product of symmetric forms."""
    return _form_product(a, b, SYM)


def form_product(a: Form, b: Form) -> Form:
    """Flavor-dispatched product: wedge for skew, symmetric product for sym."""
    flavor = a.flavor if a.arity >= 2 else (b.flavor if b.arity >= 2 else a.flavor)
    return _form_product(a, b, flavor)


def plug(omega: Form, args: Sequence[Section]) -> Form:
    """Partial evaluation omega(args..., *) as a form of lower arity.

    Filling the leading slots keeps all Koszul signs inside Form.eval, so
    the slot convention is the evaluation order itself.
    """
    if len(args) > omega.arity:
        raise ArityMismatch(
            f"cannot plug {len(args)} arguments into arity {omega.arity}"
        )
    rest = omega.arity - len(args)
    degree = omega.degree + sum(arg.degree for arg in args)
    units = {
        idx: Section.unit(omega.chart, omega.frame, idx)
        for idx in range(omega.frame.n)
    }
    comps = {}
    for tup in canonical_tuples(omega.frame, rest, omega.flavor):
        val = omega.eval(list(args) + [units[t] for t in tup])
        if not val.is_zero():
            comps[tup] = val
    return Form(omega.chart, omega.frame, rest, degree, omega.flavor, comps)


def _form_product(a: Form, b: Form, flavor: str) -> Form:
    _check_chart(a, b)
    _check_frame(a, b)
    a = a.with_flavor(flavor)
    b = b.with_flavor(flavor)
    arity = a.arity + b.arity
    degree = a.degree + b.degree
    comps = {}
    for tup in canonical_tuples(a.frame, arity, flavor):
        comps[tup] = _product_eval(a, b, tup)
    return Form(a.chart, a.frame, arity, degree, flavor, comps)


def lie_form(alg: Algebroid, x: Section, omega: Form) -> Form:
    """Lie derivative on forms via the Cartan formula, parity-matched."""
    first = interior(x, d_form(alg, omega))
    if omega.arity == 0:
        # the interior product of a function vanishes, so only one term
        return first
    second = d_form(alg, interior(x, omega)).scale(_sgn(x.degree))
    return first + second if alg.ell % 2 == 0 else first - second


def lie_multivector(alg: Algebroid, x: Section, Y: Form) -> Form:
    """Lie derivative on multivector fields (forms over the dual frame)."""
    dual = alg.frame.dual()
    if Y.frame != dual:
        raise FrameMismatch("multivector fields live over the dual frame")
    p = Y.arity
    ell = alg.ell
    deg = Y.degree + x.degree + ell
    ahat = alg.hat_anchor(x)
    comps = {}
    for tup in canonical_tuples(dual, p, Y.flavor):
        comp = Y.comps.get(tup)
        val = (
            ahat.apply(comp)
            if comp is not None
            else GFunction.zero(
                alg.chart, deg + sum(dual.degrees[t] for t in tup)
            )
        )
        for r in range(p):
            xi = Form(
                alg.chart,
                alg.frame,
                1,
                dual.degrees[tup[r]],
                alg.flavor,
                {(tup[r],): GFunction.one(alg.chart)},
            )
            lxi = lie_form(alg, x, xi)
            lsec = form1_to_section(lxi)
            args = [
                Section.unit(alg.chart, dual, tup[k]) if k != r else lsec
                for k in range(p)
            ]
            exp = (x.degree + ell) * (
                Y.degree + sum(dual.degrees[tup[k]] for k in range(r))
            )
            val = val - Y.eval(args).scale(_sgn(exp))
        comps[tup] = val
    return Form(alg.chart, dual, p, deg, Y.flavor, comps)


def _unit_form(chart: Chart, frame: Frame, idx: int, flavor: str) -> Form:
    """The dual covector of a frame slot, as an arity-1 form."""
    return Form(
        chart, frame, 1, -frame.degrees[idx], flavor, {(idx,): GFunction.one(chart)}
    )


def _basis_form(chart: Chart, frame: Frame, tup: tuple, flavor: str) -> Form:
    out = _unit_form(chart, frame, tup[0], flavor)
    for t in tup[1:]:
        out = _form_product(out, _unit_form(chart, frame, t, flavor), flavor)
    return out


def wedge_decompose(U: Form):
    """Write U as a sum of module multiples of basis products.

    The basis products evaluate diagonally on canonical tuples, so the
    coefficients come from a scalar division per tuple.
    """
    terms = []
    for tup, comp in sorted(U.comps.items()):
        basis = _basis_form(U.chart, U.frame, tup, U.flavor)
        norm = basis.eval_frame(tup)
        scalar = norm.body_scalar()
        if not scalar:
            raise ArityMismatch(f"degenerate basis product at {tup}")
        coeff = comp.scale_scalar_div(scalar)
        terms.append((coeff, tup))
    return terms


def schouten(alg: Algebroid, U: Form, V: Form, flavor: str | None = None) -> Form:
    """The Schouten-Nijenhuis bracket on multivector fields.

    Both arguments are forms over the dual frame of the algebroid; the
    skew and the symmetric bracket both exist at every algebroid degree.
    When no flavor is given it is taken from the higher-arity argument,
    falling back to the parity of the algebroid degree.  Functions enter
    as arity-0 forms.
    """
    dual = alg.frame.dual()
    if U.frame != dual or V.frame != dual:
        raise FrameMismatch("multivector fields live over the dual frame")
    if flavor is None:
        if U.arity >= 2:
            flavor = U.flavor
        elif V.arity >= 2:
            flavor = V.flavor
        else:
            flavor = alg.flavor
    U = U.with_flavor(flavor) if U.arity < 2 else U
    V = V.with_flavor(flavor) if V.arity < 2 else V
    if U.flavor != flavor or V.flavor != flavor:
        raise FlavorMismatch("multivector arguments must share one flavor")
    ell = alg.ell
    out_arity = U.arity + V.arity - 1
    out_degree = U.degree + V.degree + ell
    if U.arity == 0:
        if V.arity == 0:
            return Form.zero(alg.chart, dual, 0, out_degree, flavor)
        f = U.as_function()
        if f.is_zero():
            return Form.zero(alg.chart, dual, out_arity, out_degree, flavor)
        df = d_form(alg, Form.from_function(alg.chart, alg.frame, f, alg.flavor))
        xi = form1_to_section(df)
        if flavor == SKEW:
            sign = _sgn(f.degree + 1)
        else:
            sign = _sgn(f.degree + 1 + ell)
        return interior(xi, V).scale(sign)
    if V.arity == 0:
        return schouten(alg, V, U, flavor).scale(_flip_sign(alg, U, V, flavor))
    if U.arity == 1:
        x = section_from_dual_form(U)
        return lie_multivector(alg, x, V)
    total = Form.zero(alg.chart, dual, out_arity, out_degree, flavor)
    eps_uv = _flip_sign(alg, U, V, flavor)
    for coeff, tup in wedge_decompose(U):
        W = Form(
            alg.chart,
            dual,
            1,
            coeff.degree - dual.degrees[tup[0]],
            flavor,
            {(tup[0],): coeff},
        )
        R = _basis_form(alg.chart, dual, tup[1:], flavor)
        VW = schouten(alg, W, V, flavor).scale(_flip_sign(alg, V, W, flavor))
        RV = schouten(alg, R, V, flavor)
        VR = RV.scale(_flip_sign(alg, V, R, flavor))
        if flavor == SKEW:
            leib = _sgn(
                (V.arity + ell + V.degree - 1) * (1 + ell + W.degree)
            )
        else:
            leib = _sgn((V.degree + ell) * W.degree)
        piece = _form_product(VW, R, flavor) + _form_product(W, VR, flavor).scale(
            leib
        )
        total = total + piece.scale(eps_uv)
    return total


def _flip_sign(alg: Algebroid, A: Form, B: Form, flavor: str) -> int:
    """Sign eps with [A,B] = eps [B,A]."""
    ell = alg.ell
    if flavor == SKEW:
        return -_sgn(
            (A.arity + ell + A.degree - 1) * (B.arity + ell + B.degree - 1)
        )
    return -_sgn((A.degree + ell) * (B.degree + ell))


def _schouten_flip(alg: Algebroid, U: Form, V: Form) -> int:
    return _flip_sign(alg, U, V, alg.flavor)


# Consistency report for a given algebroid: axioms, the induced calculus
# and the Schouten brackets, each checked by exact equality on samples.


def check_cartan(alg: Algebroid, rng=None, samples: int = 12, verbose: bool = False):
    """Property checks of the full calculus induced by an algebroid.

    Returns a reporting.Report with one entry per identity.  Sampling is
    deterministic for a fixed rng seed.
    """
    from . import sampling
    from .reporting import CheckResult, Report

    rng = sampling.ensure_rng(rng)
    chart = alg.chart
    ell = alg.ell
    even = ell % 2 == 0
    flavor = alg.flavor
    dual = alg.frame.dual()

    results = []

    def run(name, fn):
        witness = None
        for k in range(samples):
            witness = fn(k)
            if witness is not None:
                break
        if witness is None:
            results.append(CheckResult(name, "PASS", {"samples": samples}))
        else:
            results.append(CheckResult(name, "FAIL", witness))

    def rsec(k=None, degree=None):
        return sampling.random_section(rng, chart, alg.frame, degree=degree)

    def rfun(degree=None):
        return sampling.random_function(rng, chart, degree=degree)

    def rform(arity, degree=None):
        return sampling.random_form(
            rng, chart, alg.frame, arity, flavor, degree=degree
        )

    def rmv(arity, degree=None):
        return sampling.random_form(rng, chart, dual, arity, flavor, degree=degree)

    def anchor_module(k):
        f, x = rfun(), rsec()
        lhs = alg.anchor(x.fmul(f))
        rhs = alg.anchor(x).fmul(f).scale(_sgn(f.degree * ell))
        if lhs != rhs:
            return {"f": repr(f), "x": repr(x)}
        return None

    run("anchor_module_rule", anchor_module)

    def bracket_leibniz(k):
        f, x, y = rfun(), rsec(), rsec()
        lhs = alg.bracket(x, y.fmul(f))
        rhs = y.fmul(alg.hat_anchor(x).apply(f)) + alg.bracket(x, y).fmul(f).scale(
            _sgn(f.degree * (x.degree + ell))
        )
        if lhs != rhs:
            return {"f": repr(f), "x": repr(x), "y": repr(y)}
        return None

    run("bracket_leibniz_rule", bracket_leibniz)

    def bracket_skew(k):
        x, y = rsec(), rsec()
        lhs = alg.bracket(x, y)
        rhs = alg.bracket(y, x).scale(-_sgn((x.degree + ell) * (y.degree + ell)))
        if lhs != rhs:
            return {"x": repr(x), "y": repr(y)}
        return None

    run("bracket_graded_skew", bracket_skew)

    def bracket_jacobi(k):
        x, y, z = rsec(), rsec(), rsec()
        lhs = alg.bracket(x, alg.bracket(y, z))
        rhs = alg.bracket(alg.bracket(x, y), z) + alg.bracket(
            y, alg.bracket(x, z)
        ).scale(_sgn((x.degree + ell) * (y.degree + ell)))
        if lhs != rhs:
            return {"x": repr(x), "y": repr(y), "z": repr(z)}
        return None

    run("bracket_graded_jacobi", bracket_jacobi)

    def anchor_morphism(k):
        x, y = rsec(), rsec()
        lhs = alg.anchor(alg.bracket(x, y))
        rhs = alg.anchor(x).commutator(alg.anchor(y))
        if lhs != rhs:
            return {"x": repr(x), "y": repr(y)}
        return None

    run("anchor_bracket_morphism", anchor_morphism)

    def d_squared(k):
        omega = rform(rng.choice([0, 1, 2]))
        dd = d_form(alg, d_form(alg, omega))
        if not dd.is_zero():
            return {"omega": repr(omega)}
        return None

    run("differential_squares_to_zero", d_squared)

    def d_on_functions(k):
        f, x = rfun(), rsec()
        df = d_function(alg, f)
        lhs = pair_form_section(df, x)
        val = alg.hat_anchor(x).apply(f)
        if even:
            rhs = val.scale(_sgn((x.degree - 1) * f.degree))
        else:
            rhs = val.scale(_sgn(x.degree * (f.degree + 1)))
        if lhs != rhs:
            return {"f": repr(f), "x": repr(x)}
        return None

    run("differential_on_functions", d_on_functions)

    def d_leibniz(k):
        omega, tau = rform(1), rform(rng.choice([0, 1]))
        lhs = d_form(alg, _form_product(omega, tau, flavor))
        if even:
            sign = _sgn(omega.degree + omega.arity)
        else:
            sign = _sgn(omega.degree)
        rhs = _form_product(d_form(alg, omega), tau, flavor) + _form_product(
            omega, d_form(alg, tau), flavor
        ).scale(sign)
        if lhs != rhs:
            return {"omega": repr(omega), "tau": repr(tau)}
        return None

    run("differential_product_rule", d_leibniz)

    def product_exchange(k):
        omega, tau = rform(1), rform(rng.choice([1, 2]))
        lhs = _form_product(omega, tau, flavor)
        if flavor == SKEW:
            sign = _sgn((omega.arity + omega.degree) * (tau.arity + tau.degree))
        else:
            sign = _sgn(omega.degree * tau.degree)
        rhs = _form_product(tau, omega, flavor).scale(sign)
        if lhs != rhs:
            return {"omega": repr(omega), "tau": repr(tau)}
        return None

    run("product_graded_exchange", product_exchange)

    def product_assoc(k):
        a, b, c = rform(1), rform(1), rform(1)
        lhs = _form_product(_form_product(a, b, flavor), c, flavor)
        rhs = _form_product(a, _form_product(b, c, flavor), flavor)
        if lhs != rhs:
            return {"a": repr(a), "b": repr(b), "c": repr(c)}
        return None

    run("product_associative", product_assoc)

    def two_form_exchange(k):
        omega = rform(2)
        x, y = rsec(), rsec()
        lhs = omega.eval([x, y])
        rhs = omega.eval([y, x]).scale(_sgn(x.degree * y.degree))
        if flavor == SKEW:
            rhs = -rhs
        if lhs != rhs:
            return {"omega": repr(omega), "x": repr(x), "y": repr(y)}
        return None

    run("two_form_argument_exchange", two_form_exchange)

    def interior_module(k):
        f, x = rfun(), rsec()
        omega = rform(2)
        lhs = interior(x.fmul(f), omega)
        rhs = interior(x, omega).fmul(f)
        if lhs != rhs:
            return {"f": repr(f), "x": repr(x), "omega": repr(omega)}
        return None

    run("interior_function_linear", interior_module)

    def interior_leibniz(k):
        x = rsec()
        omega, tau = rform(1), rform(rng.choice([1, 2]))
        lhs = interior(x, _form_product(omega, tau, flavor))
        if flavor == SKEW:
            sign = _sgn((x.degree - 1) * (omega.degree + omega.arity))
        else:
            sign = _sgn(x.degree * omega.degree)
        rhs = _form_product(interior(x, omega), tau, flavor) + _form_product(
            omega, interior(x, tau), flavor
        ).scale(sign)
        if lhs != rhs:
            return {"x": repr(x), "omega": repr(omega), "tau": repr(tau)}
        return None

    run("interior_product_rule", interior_leibniz)

    def interior_square(k):
        x, y = rsec(), rsec()
        omega = rform(2)
        lhs = interior(x, interior(y, omega))
        if flavor == SKEW:
            sign = _sgn((x.degree - 1) * (y.degree - 1))
        else:
            sign = _sgn(x.degree * y.degree)
        rhs = interior(y, interior(x, omega)).scale(sign)
        if lhs != rhs:
            return {"x": repr(x), "y": repr(y), "omega": repr(omega)}
        return None

    run("interior_exchange_relation", interior_square)

    def lie_on_functions(k):
        f, x = rfun(), rsec()
        omega = Form.from_function(chart, alg.frame, f, flavor)
        lhs = lie_form(alg, x, omega).as_function()
        rhs = alg.hat_anchor(x).apply(f)
        if lhs != rhs:
            return {"f": repr(f), "x": repr(x)}
        return None

    run("lie_derivative_on_functions", lie_on_functions)

    def lie_leibniz(k):
        x = rsec()
        omega, tau = rform(1), rform(rng.choice([0, 1]))
        lhs = lie_form(alg, x, _form_product(omega, tau, flavor))
        if even:
            sign = _sgn(x.degree * (omega.degree + omega.arity))
        else:
            sign = _sgn((x.degree + 1) * omega.degree)
        rhs = _form_product(lie_form(alg, x, omega), tau, flavor) + _form_product(
            omega, lie_form(alg, x, tau), flavor
        ).scale(sign)
        if lhs != rhs:
            return {"x": repr(x), "omega": repr(omega), "tau": repr(tau)}
        return None

    run("lie_derivative_product_rule", lie_leibniz)

    def cartan_bracket_lie(k):
        x, y = rsec(), rsec()
        omega = rform(rng.choice([1, 2]))
        lhs = lie_form(alg, alg.bracket(x, y), omega)
        if even:
            sign = _sgn(x.degree * y.degree)
        else:
            sign = _sgn((x.degree + 1) * (y.degree + 1))
        rhs = lie_form(alg, x, lie_form(alg, y, omega)) - lie_form(
            alg, y, lie_form(alg, x, omega)
        ).scale(sign)
        if lhs != rhs:
            return {"x": repr(x), "y": repr(y), "omega": repr(omega)}
        return None

    run("lie_of_bracket", cartan_bracket_lie)

    def cartan_interior_lie(k):
        x, y = rsec(), rsec()
        omega = rform(2)
        lhs = interior(alg.bracket(x, y), omega)
        if even:
            sign = _sgn(x.degree * (y.degree - 1))
        else:
            sign = _sgn((x.degree + 1) * y.degree)
        rhs = lie_form(alg, x, interior(y, omega)) - interior(
            y, lie_form(alg, x, omega)
        ).scale(sign)
        if lhs != rhs:
            return {"x": repr(x), "y": repr(y), "omega": repr(omega)}
        return None

    run("interior_of_bracket", cartan_interior_lie)

    def cartan_lie_d(k):
        x = rsec()
        omega = rform(rng.choice([0, 1]))
        first = lie_form(alg, x, d_form(alg, omega))
        second = d_form(alg, lie_form(alg, x, omega)).scale(_sgn(x.degree))
        zero = first - second if even else first + second
        if not zero.is_zero():
            return {"x": repr(x), "omega": repr(omega)}
        return None

    run("lie_commutes_with_differential", cartan_lie_d)

    def lie_mv_on_sections(k):
        x, y = rsec(), rsec()
        lhs = lie_multivector(alg, x, section_as_dual_form(y, flavor))
        rhs = section_as_dual_form(alg.bracket(x, y), flavor)
        if lhs != rhs:
            return {"x": repr(x), "y": repr(y)}
        return None

    run("multivector_lie_extends_bracket", lie_mv_on_sections)

    def lie_mv_leibniz(k):
        x = rsec()
        Y, Z = rmv(1), rmv(1)
        lhs = lie_multivector(alg, x, _form_product(Y, Z, flavor))
        if flavor == SKEW:
            sign = _sgn((x.degree + ell) * (Y.degree + Y.arity))
        else:
            sign = _sgn((x.degree + ell) * Y.degree)
        rhs = _form_product(lie_multivector(alg, x, Y), Z, flavor) + _form_product(
            Y, lie_multivector(alg, x, Z), flavor
        ).scale(sign)
        if lhs != rhs:
            return {"x": repr(x), "Y": repr(Y), "Z": repr(Z)}
        return None

    run("multivector_lie_product_rule", lie_mv_leibniz)

    def lie_mv_interior(k):
        x = rsec()
        xi = rform(1)
        Y = rmv(2)
        xsec = form1_to_section(xi)
        lhs = lie_multivector(alg, x, interior(xsec, Y))
        if flavor == SKEW:
            sign = _sgn((x.degree + ell) * (xi.degree - 1))
        else:
            sign = _sgn((x.degree + ell) * xi.degree)
        rhs = interior(xsec, lie_multivector(alg, x, Y)).scale(sign) + interior(
            form1_to_section(lie_form(alg, x, xi)), Y
        )
        if lhs != rhs:
            return {"x": repr(x), "xi": repr(xi), "Y": repr(Y)}
        return None

    run("multivector_lie_interior_relation", lie_mv_interior)

    def schouten_symmetry(k):
        U = rmv(rng.choice([0, 1, 2]))
        V = rmv(rng.choice([1, 2]))
        lhs = schouten(alg, U, V)
        rhs = schouten(alg, V, U).scale(_schouten_flip(alg, U, V))
        if lhs != rhs:
            return {"U": repr(U), "V": repr(V)}
        return None

    run("schouten_graded_symmetry", schouten_symmetry)

    def schouten_leibniz(k):
        X = rmv(rng.choice([1, 2]))
        Y, Z = rmv(1), rmv(1)
        lhs = schouten(alg, X, _form_product(Y, Z, flavor))
        if flavor == SKEW:
            sign = _sgn(
                (X.arity + ell + X.degree - 1) * (Y.arity + ell + Y.degree)
            )
        else:
            sign = _sgn((X.degree + ell) * Y.degree)
        rhs = _form_product(schouten(alg, X, Y), Z, flavor) + _form_product(
            Y, schouten(alg, X, Z), flavor
        ).scale(sign)
        if lhs != rhs:
            return {"X": repr(X), "Y": repr(Y), "Z": repr(Z)}
        return None

    run("schouten_product_rule", schouten_leibniz)

    def schouten_jacobi(k):
        X = rmv(rng.choice([0, 1]))
        Y = rmv(rng.choice([1, 2]))
        Z = rmv(1)
        lhs = schouten(alg, X, schouten(alg, Y, Z))
        sign = _schouten_flip(alg, X, Y)
        rhs = schouten(alg, schouten(alg, X, Y), Z) - schouten(
            alg, Y, schouten(alg, X, Z)
        ).scale(sign)
        if lhs != rhs:
            return {"X": repr(X), "Y": repr(Y), "Z": repr(Z)}
        return None

    run("schouten_graded_jacobi", schouten_jacobi)

    def schouten_function_case(k):
        f = rfun()
        Y = rmv(rng.choice([1, 2]))
        U = Form.from_function(chart, dual, f, flavor)
        lhs = schouten(alg, U, Y)
        df = d_form(alg, Form.from_function(chart, alg.frame, f, flavor))
        sign = _sgn(f.degree + 1) if flavor == SKEW else _sgn(f.degree + 1 + ell)
        rhs = interior(form1_to_section(df), Y).scale(sign)
        if lhs != rhs:
            return {"f": repr(f), "Y": repr(Y)}
        return None

    run("schouten_function_contraction", schouten_function_case)

    report = Report(f"cartan calculus for {alg.name} (ell={ell})", results)
    if verbose:
        print(report.render_text())
    return report
