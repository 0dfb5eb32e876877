"""Exact linear algebra over the rationals (and Gaussian rationals).

Small dense matrices only; rows are lists of scalars.  Used for annihilators
and orthogonal complements, kernel extraction, solving for primitives, and
inertia counting of symmetric Gram matrices.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence


def _is_zero(x) -> bool:
    return x == 0


def rref(rows: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if not _is_zero(m[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r] + [row for row in m[r:] if any(not _is_zero(x) for x in row)], pivots


def rank(rows: Sequence[Sequence]) -> int:
    reduced, pivots = rref(rows)
    return len(pivots)


def row_space_basis(rows: Sequence[Sequence]) -> List[List]:
    reduced, pivots = rref(rows)
    return reduced[: len(pivots)]


def same_row_space(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    return row_space_basis(a) == row_space_basis(b)


def nullspace(rows: Sequence[Sequence], ncols: Optional[int] = None, one=Fraction(1)):
    """Basis of {x : A x = 0} as a list of column vectors (lists)."""
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise ValueError("empty system needs explicit column count")
        ncols = len(rows[0])
    if not rows:
        return [[one * (1 if i == j else 0) for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [one * 0] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][fc] * one
        basis.append(vec)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Optional[List]:
    """One solution of A x = b, or None when inconsistent."""
    if not rows:
        return None
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug)
    ncols = len(rows[0])
    for row in reduced:
        if all(_is_zero(x) for x in row[:ncols]) and not _is_zero(row[ncols]):
            return None
    x = [rows[0][0] * 0] * ncols
    for r, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = reduced[r][ncols]
    return x


def mat_mul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def char_poly(mat: Sequence[Sequence]) -> List[Fraction]:
    """Coefficients [c_0, ..., c_n] of det(l*I - M) via Faddeev-LeVerrier."""
    n = len(mat)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(x) for x in row] for row in mat]
    acc = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        acc[i][i] = Fraction(1)
    mk = None
    for k in range(1, n + 1):
        mk = mat_mul(m, acc) if mk is not None else [row[:] for row in m]
        tr = sum(mk[i][i] for i in range(n))
        c = -tr / k
        coeffs[n - k] = c
        acc = [row[:] for row in mk]
        for i in range(n):
            acc[i][i] += c
    return coeffs


def inertia(gram: Sequence[Sequence]) -> tuple:
    """Signature (positive, negative, zero) of an exact symmetric matrix.

    The characteristic polynomial of a symmetric matrix has only real
    roots, so Descartes' rule of signs counts eigenvalue signs exactly:
    the positive count is the number of sign alternations in the nonzero
    coefficients of p(l), the negative count those of p(-l).
    """
    n = len(gram)
    if n == 0:
        return (0, 0, 0)
    for i in range(n):
        for j in range(n):
            if gram[i][j] != gram[j][i]:
                raise ValueError("inertia requires a symmetric matrix")
    coeffs = char_poly(gram)

    zero_count = 0
    for c in coeffs:
        if c == 0:
            zero_count += 1
        else:
            break

    def variations(cs):
        signs = [1 if c > 0 else -1 for c in cs if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    pos = variations(coeffs)
    neg_coeffs = [c * ((-1) ** k) for k, c in enumerate(coeffs)]
    neg = variations(neg_coeffs)
    return (pos, neg, zero_count)
