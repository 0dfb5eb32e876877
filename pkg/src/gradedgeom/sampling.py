"""Seeded random generators of polynomial test objects.

All property checks sample charts, functions, sections and forms through
this module, so a fixed seed reproduces every counterexample.  Coefficient
sizes and monomial weights are kept small: identities are linear in each
argument, so small witnesses already separate right from wrong signs.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .calculus import Form, Frame, Section, VectorField, canonical_tuples
from .gralg import Chart, GFunction, monomials
from .scalars import GAUSSIAN, GaussianRational

DEGREE_LO = -3
DEGREE_HI = 4

_mono_cache: dict = {}


def ensure_rng(rng) -> random.Random:
    if rng is None:
        return random.Random(0)
    if isinstance(rng, int):
        return random.Random(rng)
    return rng


def _monomials(chart: Chart, degree: int):
    key = (chart, degree)
    got = _mono_cache.get(key)
    if got is None:
        got = monomials(chart, degree, max_weight0=2, cap=2)
        _mono_cache[key] = got
    return got


def feasible_degrees(chart: Chart, lo: int = DEGREE_LO, hi: int = DEGREE_HI):
    return [d for d in range(lo, hi + 1) if _monomials(chart, d)]


def random_scalar(rng: random.Random, chart: Chart, weight: int = 3):
    if chart.scalars == GAUSSIAN and rng.random() < 0.5:
        return GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2))
    return Fraction(rng.randint(-weight, weight))


def random_function(
    rng: random.Random,
    chart: Chart,
    degree: Optional[int] = None,
    terms: int = 2,
    nonzero: bool = False,
) -> GFunction:
    if degree is None:
        options = feasible_degrees(chart)
        degree = rng.choice(options) if options else 0
    basis = _monomials(chart, degree)
    if not basis:
        return GFunction.zero(chart, degree)
    got: dict = {}
    for _ in range(terms):
        mono = rng.choice(basis)
        c = random_scalar(rng, chart)
        if not c and nonzero:
            c = Fraction(1)
        acc = got.get(mono)
        got[mono] = c if acc is None else acc + c
    f = GFunction(chart, degree, got)
    if nonzero and f.is_zero():
        return GFunction(chart, degree, {rng.choice(basis): Fraction(1)})
    return f


def section_degrees(chart: Chart, frame: Frame, lo: int = DEGREE_LO, hi: int = DEGREE_HI):
    """Section degrees admitting at least one nonzero component."""
    feas = set(feasible_degrees(chart, lo - max(frame.degrees, default=0), hi + 5))
    out = []
    for d in range(lo, hi + 1):
        if any((d - fd) in feas for fd in frame.degrees):
            out.append(d)
    return out


def random_section(
    rng: random.Random,
    chart: Chart,
    frame: Frame,
    degree: Optional[int] = None,
    density: float = 0.7,
) -> Section:
    if degree is None:
        options = section_degrees(chart, frame)
        degree = rng.choice(options) if options else 0
    comps = {}
    slots = [
        idx
        for idx in range(frame.n)
        if _monomials(chart, degree - frame.degrees[idx])
    ]
    rng.shuffle(slots)
    for idx in slots:
        if comps and rng.random() > density:
            continue
        f = random_function(rng, chart, degree - frame.degrees[idx], terms=1)
        if not f.is_zero():
            comps[idx] = f
    return Section(chart, frame, degree, comps)


def form_degrees(
    chart: Chart,
    frame: Frame,
    arity: int,
    flavor: str,
    lo: int = DEGREE_LO,
    hi: int = DEGREE_HI,
):
    tuples = list(canonical_tuples(frame, arity, flavor))
    if not tuples:
        return []
    sums = {sum(frame.degrees[t] for t in tup) for tup in tuples}
    feas_lo = lo - max(sums)
    feas_hi = hi - min(sums)
    feas = set(feasible_degrees(chart, feas_lo, feas_hi + 1))
    out = []
    for d in range(lo, hi + 1):
        if any((d + s) in feas for s in sums):
            out.append(d)
    return out


def random_form(
    rng: random.Random,
    chart: Chart,
    frame: Frame,
    arity: int,
    flavor: str,
    degree: Optional[int] = None,
    density: float = 0.6,
) -> Form:
    if degree is None:
        options = form_degrees(chart, frame, arity, flavor)
        degree = rng.choice(options) if options else 0
    comps = {}
    tuples = [
        tup
        for tup in canonical_tuples(frame, arity, flavor)
        if _monomials(chart, degree + sum(frame.degrees[t] for t in tup))
    ]
    rng.shuffle(tuples)
    for tup in tuples:
        if comps and rng.random() > density:
            continue
        f = random_function(
            rng, chart, degree + sum(frame.degrees[t] for t in tup), terms=1
        )
        if not f.is_zero():
            comps[tup] = f
    return Form(chart, frame, arity, degree, flavor, comps)


def random_vector_field(
    rng: random.Random, chart: Chart, degree: Optional[int] = None
) -> VectorField:
    if degree is None:
        options = [
            d
            for d in range(DEGREE_LO, DEGREE_HI + 1)
            if any(_monomials(chart, d + cd) for cd in chart.degrees)
        ]
        degree = rng.choice(options) if options else 0
    comps = {}
    for name, cd in zip(chart.coords, chart.degrees):
        if comps and rng.random() > 0.7:
            continue
        f = random_function(rng, chart, degree + cd, terms=1)
        if not f.is_zero():
            comps[name] = f
    return VectorField(chart, degree, comps)

def random_gen_section(
    rng: random.Random, chart: Chart, ell: int, degree: Optional[int] = None
):
    """A random section of the generalized tangent bundle at shift ell."""
    from .calculus import SKEW, tangent_frame
    from .courant import GenSection

    frame = tangent_frame(chart, 0)
    sdegs = set(section_degrees(chart, frame))
    fdegs = set(form_degrees(chart, frame, 1, SKEW))
    if degree is None:
        options = sorted({d - ell for d in sdegs} | fdegs)
        degree = rng.choice(options) if options else 0
    x = Section.zero(chart, frame, degree + ell)
    xi = Form.zero(chart, frame, 1, degree, SKEW)
    which = rng.random()
    if degree + ell in sdegs and which < 0.85:
        x = random_section(rng, chart, frame, degree + ell)
    if degree in fdegs and (which > 0.15 or x.is_zero()):
        xi = random_form(rng, chart, frame, 1, SKEW, degree)
    return GenSection(chart, ell, degree, x, xi)
