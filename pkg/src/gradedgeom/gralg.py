"""Graded commutative function algebras on a single chart.

A chart is an ordered list of coordinates z^A with integer degrees |z^A|.
Coordinates obey the sign rule

    z^A z^B = (-1)^{|z^A||z^B|} z^B z^A,

so odd-degree coordinates anticommute and square to zero.  A graded
function is a finite sum of monomials with exact scalar coefficients; it is
always homogeneous, i.e. every monomial has the same total degree.  Products
carry the reordering sign, and the body of a degree-zero function is its
part constant in all nonzero-degree coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import ChartMismatch, DegreeMismatch, UnknownCoordinate, ValidationError
from .scalars import (
    GAUSSIAN,
    RATIONAL,
    GaussianRational,
    scalar_from,
    scalar_from_json,
    scalar_to_json,
)

Monomial = tuple  # exponent tuple aligned with the chart's coordinates


@dataclass(frozen=True)
class Chart:
    """An ordered chart of graded coordinates over an exact scalar field."""

    coords: tuple
    degrees: tuple
    scalars: str = RATIONAL

    def __post_init__(self):
        if len(self.coords) != len(set(self.coords)):
            raise ValidationError("chart has duplicate coordinate names")
        if len(self.coords) != len(self.degrees):
            raise ValidationError("coordinate/degree length mismatch")
        if self.scalars not in (RATIONAL, GAUSSIAN):
            raise ValidationError(f"unknown scalar field {self.scalars!r}")

    @staticmethod
    def build(spec: Sequence, scalars: str = RATIONAL) -> "Chart":
        """Build a chart from (name, degree) pairs."""
        names = tuple(n for n, _ in spec)
        degs = tuple(int(d) for _, d in spec)
        return Chart(names, degs, scalars)

    @property
    def n(self) -> int:
        return len(self.coords)

    def index(self, name: str) -> int:
        try:
            return self.coords.index(name)
        except ValueError:
            raise UnknownCoordinate(f"{name!r} is not a coordinate of {self.coords}") from None

    def degree_of(self, name: str) -> int:
        return self.degrees[self.index(name)]

    def scalar(self, value):
        return scalar_from(self.scalars, value)

    def zero_scalar(self):
        return scalar_from(self.scalars, 0)

    def complexified(self) -> "Chart":
        return Chart(self.coords, self.degrees, GAUSSIAN)

    def monomial_degree(self, exps: Monomial) -> int:
        return sum(e * d for e, d in zip(exps, self.degrees))


@dataclass(frozen=True)
class SignedWord:
    """A normalized monomial together with the Koszul reordering sign.

    ``sign == 0`` encodes the zero result of a repeated odd coordinate.
    """

    exps: Monomial
    sign: int

    @property
    def is_zero(self) -> bool:
        return self.sign == 0


def normalize_word(chart: Chart, word: Iterable[str]) -> SignedWord:
    """Sort a word of coordinate symbols into chart order.

    Each transposition of adjacent symbols a, b contributes
    (-1)^{|a||b|}; a repeated odd symbol yields zero.  Normalizing an
    already-normal word returns sign +1.
    """
    exps = [0] * chart.n
    sign = 1
    for symbol in word:
        i = chart.index(symbol)
        d = chart.degrees[i]
        if d % 2:
            if exps[i]:
                return SignedWord(tuple([0] * chart.n), 0)
            # moving the new symbol left past everything stored at larger index
            passed = sum(exps[j] * chart.degrees[j] for j in range(i + 1, chart.n))
            if passed % 2:
                sign = -sign
        exps[i] += 1
    return SignedWord(tuple(exps), sign)


def mul_monomials(chart: Chart, m1: Monomial, m2: Monomial):
    """Multiply two normalized monomials; returns (monomial, sign) or None."""
    sign = 0
    for j in range(chart.n):
        dj = chart.degrees[j]
        if m2[j] == 0:
            continue
        if dj % 2:
            if m1[j]:
                return None
            # z_j from the right factor moves past every z_i (i > j) on the left
            sign += m2[j] * dj * sum(m1[i] * chart.degrees[i] for i in range(j + 1, chart.n))
    merged = tuple(a + b for a, b in zip(m1, m2))
    return merged, (-1) ** (sign % 2)


class GFunction:
    """A homogeneous polynomial function on a graded chart."""

    __slots__ = ("chart", "degree", "terms")

    def __init__(self, chart: Chart, degree: int, terms: dict):
        self.chart = chart
        self.degree = int(degree)
        clean = {}
        for exps, coeff in terms.items():
            coeff = chart.scalar(coeff)
            if coeff == 0:
                continue
            if len(exps) != chart.n:
                raise ValidationError("monomial length does not match chart")
            if chart.monomial_degree(exps) != self.degree:
                raise DegreeMismatch(
                    f"monomial {exps} has degree {chart.monomial_degree(exps)}, "
                    f"function declared degree {self.degree}"
                )
            clean[tuple(exps)] = coeff
        self.terms = dict(sorted(clean.items()))

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(chart: Chart, degree: int = 0) -> "GFunction":
        return GFunction(chart, degree, {})

    @staticmethod
    def const(chart: Chart, value) -> "GFunction":
        return GFunction(chart, 0, {tuple([0] * chart.n): value})

    @staticmethod
    def one(chart: Chart) -> "GFunction":
        return GFunction.const(chart, 1)

    @staticmethod
    def var(chart: Chart, name: str) -> "GFunction":
        i = chart.index(name)
        exps = tuple(1 if j == i else 0 for j in range(chart.n))
        return GFunction(chart, chart.degrees[i], {exps: 1})

    @staticmethod
    def from_word(chart: Chart, coeff, word: Iterable[str]) -> "GFunction":
        sw = normalize_word(chart, word)
        degree = chart.monomial_degree(sw.exps)
        if sw.is_zero:
            return GFunction.zero(chart, degree)
        return GFunction(chart, degree, {sw.exps: chart.scalar(coeff) * sw.sign})

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = GFunction.const(self.chart, other) if other != 0 else GFunction.zero(self.chart, self.degree)
        if not isinstance(other, GFunction):
            return NotImplemented
        if self.chart != other.chart:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.chart, self.degree, tuple(self.terms.items())))

    # -- ring operations -----------------------------------------------

    def _check_chart(self, other: "GFunction"):
        if self.chart != other.chart:
            raise ChartMismatch("functions live on different charts")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = GFunction.const(self.chart, other)
        self._check_chart(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise DegreeMismatch(
                f"cannot add degrees {self.degree} and {other.degree}"
            )
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, self.chart.zero_scalar()) + c
        return GFunction(self.chart, self.degree, terms)

    __radd__ = __add__

    def __neg__(self):
        return GFunction(self.chart, self.degree, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, GFunction) else GFunction.const(self.chart, -other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return GFunction(self.chart, self.degree, {m: c * other for m, c in self.terms.items()})
        self._check_chart(other)
        degree = self.degree + other.degree
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                prod = mul_monomials(self.chart, m1, m2)
                if prod is None:
                    continue
                m, sgn = prod
                coeff = c1 * c2 * sgn
                acc = terms.get(m)
                terms[m] = coeff if acc is None else acc + coeff
        return GFunction(self.chart, degree, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.__mul__(other)
        return NotImplemented

    def partial(self, name: str) -> "GFunction":
        """Left partial derivative along a coordinate.

        On a monomial it pulls one factor of z^A to the front, picking up
        the sign of moving it past every earlier coordinate factor.
        """
        a = self.chart.index(name)
        da = self.chart.degrees[a]
        terms: dict = {}
        for m, c in self.terms.items():
            if m[a] == 0:
                continue
            passed = sum(m[b] * self.chart.degrees[b] for b in range(a))
            sgn = (-1) ** ((da * passed) % 2)
            out = list(m)
            out[a] -= 1
            key = tuple(out)
            coeff = c * m[a] * sgn
            acc = terms.get(key)
            terms[key] = coeff if acc is None else acc + coeff
        return GFunction(self.chart, self.degree - da, terms)

    def body(self) -> "GFunction":
        """The degree-zero part constant in all graded coordinates."""
        if self.degree != 0:
            return GFunction.zero(self.chart, 0)
        keep = {
            m: c
            for m, c in self.terms.items()
            if all(e == 0 for e, d in zip(m, self.chart.degrees) if d != 0)
        }
        return GFunction(self.chart, 0, keep)

    def eval_body(self, point: dict):
        """Evaluate the body at a base point given by degree-zero coordinate values."""
        total = self.chart.zero_scalar()
        for m, c in self.body().terms.items():
            val = c
            for name, e in zip(self.chart.coords, m):
                if e:
                    val = val * (self.chart.scalar(point.get(name, 0)) ** e)
            total = total + val
        return total

    def map_coefficients(self, chart: Chart, fn) -> "GFunction":
        return GFunction(chart, self.degree, {m: fn(c) for m, c in self.terms.items()})

    def scale(self, k) -> "GFunction":
        """Multiply by an integer; the common case is a Koszul sign."""
        if k == 1:
            return self
        return GFunction(
            self.chart, self.degree, {m: c * k for m, c in self.terms.items()}
        )

    def body_scalar(self):
        """The scalar coefficient of the constant monomial."""
        key = (0,) * self.chart.n
        c = self.terms.get(key)
        return c if c is not None else self.chart.zero_scalar()

    def scale_scalar_div(self, s) -> "GFunction":
        """Divide every coefficient by a nonzero scalar."""
        if isinstance(s, GaussianRational):
            inv = GaussianRational(1) / s
        else:
            inv = Fraction(1) / Fraction(s)
        return self * inv

    def weight0(self) -> int:
        """Largest total exponent of degree-zero coordinates over all terms."""
        best = 0
        for m in self.terms:
            w = sum(e for e, d in zip(m, self.chart.degrees) if d == 0)
            best = max(best, w)
        return best

    def __repr__(self):
        if self.is_zero():
            return f"GF<0 :deg {self.degree}>"
        bits = []
        for m, c in self.terms.items():
            mono = "".join(
                f"{n}" + (f"^{e}" if e > 1 else "")
                for n, e in zip(self.chart.coords, m)
                if e
            )
            bits.append(f"{c}*{mono or '1'}")
        return "GF<" + " + ".join(bits) + f" :deg {self.degree}>"


# -- module-level operation aliases ------------------------------------


def mul(f: GFunction, g: GFunction) -> GFunction:
    """Graded product with the Koszul reordering sign."""
    return f * g


def body(f: GFunction) -> GFunction:
    return f.body()


# -- monomial enumeration ----------------------------------------------


def graded_monomials(chart: Chart, degree: int, cap: int = 3) -> Iterator[Monomial]:
    """Enumerate exponent tuples of the nonzero-degree coordinates summing
    to ``degree``, with exponents bounded by ``cap`` (odd coordinates by 1).
    Degree-zero coordinates get exponent zero."""
    idxs = [i for i, d in enumerate(chart.degrees) if d != 0]

    def rec(pos: int, remaining: int, acc: list):
        if pos == len(idxs):
            if remaining == 0:
                exps = [0] * chart.n
                for i, e in zip(idxs, acc):
                    exps[i] = e
                yield tuple(exps)
            return
        i = idxs[pos]
        d = chart.degrees[i]
        top = 1 if d % 2 else cap
        for e in range(top + 1):
            yield from rec(pos + 1, remaining - e * d, acc + [e])

    yield from rec(0, degree, [])


def monomials(chart: Chart, degree: int, max_weight0: int = 2, cap: int = 3) -> list:
    """All monomials of the given degree with bounded exponents."""
    zero_idxs = [i for i, d in enumerate(chart.degrees) if d == 0]

    def weight0_parts(k: int):
        def rec(pos: int, left: int, acc: list):
            if pos == len(zero_idxs):
                yield list(acc)
                return
            for e in range(left + 1):
                yield from rec(pos + 1, left - e, acc + [e])

        yield from rec(0, k, [])

    out = []
    for g in graded_monomials(chart, degree, cap):
        for part in weight0_parts(max_weight0):
            exps = list(g)
            for i, e in zip(zero_idxs, part):
                exps[i] += e
            out.append(tuple(exps))
    return sorted(set(out))


# -- JSON codec ---------------------------------------------------------


def chart_to_json(chart: Chart) -> dict:
    out = {
        "coords": [
            {"name": n, "degree": d} for n, d in zip(chart.coords, chart.degrees)
        ]
    }
    if chart.scalars != RATIONAL:
        out["scalars"] = chart.scalars
    return out


def chart_from_json(data: dict) -> Chart:
    coords = data.get("coords")
    if not isinstance(coords, list) or not coords:
        raise ValidationError("chart must list at least one coordinate")
    pairs = []
    for c in coords:
        if not isinstance(c, dict) or "name" not in c or "degree" not in c:
            raise ValidationError("each coordinate needs 'name' and 'degree'")
        pairs.append((str(c["name"]), int(c["degree"])))
    return Chart.build(pairs, data.get("scalars", RATIONAL))


def gfunction_to_json(f: GFunction) -> dict:
    return {
        "degree": f.degree,
        "terms": [
            dict(exps=list(m), **scalar_to_json(c)) for m, c in f.terms.items()
        ],
    }


def gfunction_from_json(chart: Chart, data: dict) -> GFunction:
    if not isinstance(data, dict) or "degree" not in data:
        raise ValidationError("function JSON needs a 'degree' field")
    terms = {}
    for t in data.get("terms", []):
        exps = tuple(int(e) for e in t["exps"])
        coeff = scalar_from_json(chart.scalars, t)
        if exps in terms:
            raise ValidationError(f"duplicate monomial {exps} in function JSON")
        terms[exps] = coeff
    return GFunction(chart, int(data["degree"]), terms)
