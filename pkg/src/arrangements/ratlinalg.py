"""Exact rational linear algebra primitives.

Vectors are tuples of ``fractions.Fraction``; matrices are tuples of such
rows.  Everything here is pure and deterministic: ranks come from
fraction-free (Bareiss) elimination on integer-cleared rows, null spaces are
returned in reduced echelon form sorted by pivot, and strict feasibility of
homogeneous sign systems is decided by Fourier-Motzkin elimination, which is
complete for strict inequalities and produces an exact rational witness.

No floating point is used anywhere; coincidences such as three planes
meeting in a line are decided exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

NEG, ZERO, POS = -1, 0, 1


def rat(x) -> Fraction:
    """Coerce an int, a string like ``"3/7"``, or a Fraction to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def vector(entries: Iterable) -> Vector:
    return tuple(rat(x) for x in entries)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(vector(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("matrix rows must have equal length")
    return m


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dot product of vectors of different lengths")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def sign(q) -> int:
    if q > 0:
        return POS
    if q < 0:
        return NEG
    return ZERO


def clear_denominators(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector by a positive integer to integer entries."""
    scale = lcm(*(f.denominator for f in v)) if v else 1
    return tuple(int(f * scale) for f in v)


def integer_primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by its content (sign preserved)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def canonical_normal(v: Sequence[Fraction]) -> tuple[Vector, bool]:
    """Canonical scaling of a nonzero normal vector.

    Returns an integer vector of content 1 whose first nonzero entry is
    positive, together with a flag telling whether the orientation was
    flipped to achieve that.

    >>> canonical_normal(vector(["-1", "1", "0"]))
    ((Fraction(1, 1), Fraction(-1, 1), Fraction(0, 1)), True)
    """
    iv = integer_primitive(clear_denominators(v))
    lead = next((x for x in iv if x != 0), 0)
    if lead == 0:
        raise ValueError("zero vector has no canonical normal scaling")
    flipped = lead < 0
    if flipped:
        iv = tuple(-x for x in iv)
    return tuple(Fraction(x) for x in iv), flipped


def rank(rows: Iterable[Sequence[Fraction]]) -> int:
    """Rank via fraction-free (Bareiss) elimination.

    >>> rank(matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]))
    3
    >>> rank(matrix([["1", "-1", "0"], ["0", "1", "-1"], ["1", "0", "-1"]]))
    2
    """
    work = [list(clear_denominators(r)) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    prev = 1
    for col in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pivot = work[r][col]
        for i in range(r + 1, len(work)):
            factor = work[i][col]
            row = work[i]
            top = work[r]
            for j in range(col, ncols):
                row[j] = (row[j] * pivot - factor * top[j]) // prev
        prev = pivot
        r += 1
        if r == len(work):
            break
    return r


def rref(rows: Iterable[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [[rat(x) for x in r] for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = work[r][col]
        work[r] = [x / inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][col] != 0:
                factor = work[i][col]
                work[i] = [a - factor * b for a, b in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def kernel_basis(rows: Iterable[Sequence[Fraction]], ncols: Optional[int] = None) -> list[Vector]:
    """Canonical basis of the right null space.

    The result is the reduced echelon basis of the null space, sorted by
    pivot column, so two calls with row-equivalent input agree exactly.

    >>> kernel_basis([], 3)
    [(Fraction(1, 1), Fraction(0, 1), Fraction(0, 1)), (Fraction(0, 1), Fraction(1, 1), Fraction(0, 1)), (Fraction(0, 1), Fraction(0, 1), Fraction(1, 1))]
    >>> kernel_basis(matrix([["1", "-1", "0"], ["0", "1", "-1"], ["1", "0", "-1"]]))
    [(Fraction(1, 1), Fraction(1, 1), Fraction(1, 1))]
    """
    rows = list(rows)
    if ncols is None:
        if not rows:
            raise ValueError("kernel_basis needs ncols for an empty matrix")
        ncols = len(rows[0])
    if ncols == 0:
        return []
    echelon, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    raw = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -echelon[i][f]
        raw.append(v)
    canon, _ = rref(raw)
    return [tuple(row) for row in canon]


def row_space_basis(rows: Iterable[Sequence[Fraction]]) -> list[Vector]:
    """Canonical (reduced echelon) basis of the row space."""
    echelon, _ = rref(rows)
    return [tuple(r) for r in echelon]


def _normalize_strict(c: Sequence[int]) -> tuple[int, ...]:
    return integer_primitive(c)


def _fm_solve(cons: list[tuple[int, ...]], nvars: int) -> Optional[tuple[Fraction, ...]]:
    """Witness of the strict homogeneous system {c . t > 0}, or None."""
    if any(all(x == 0 for x in c) for c in cons):
        return None
    if nvars == 0:
        return ()
    j = nvars - 1
    pos = [c for c in cons if c[j] > 0]
    neg = [c for c in cons if c[j] < 0]
    derived: dict[tuple[int, ...], None] = {}
    for c in cons:
        if c[j] == 0:
            derived.setdefault(_normalize_strict(c[:j]))
    for p in pos:
        for m in neg:
            combo = tuple(p[i] * (-m[j]) + m[i] * p[j] for i in range(j))
            derived.setdefault(_normalize_strict(combo))
    sub = _fm_solve(list(derived), j)
    if sub is None:
        return None
    lowers = [-dot(vector(p[:j]), sub) / p[j] for p in pos]
    uppers = [-dot(vector(m[:j]), sub) / m[j] for m in neg]
    if lowers and uppers:
        lo, hi = max(lowers), min(uppers)
        t = (lo + hi) / 2
    elif lowers:
        t = max(lowers) + 1
    elif uppers:
        t = min(uppers) - 1
    else:
        t = Fraction(0)
    return sub + (t,)


def strict_feasible(constraints: Sequence[tuple[Sequence[Fraction], int]]) -> Optional[Vector]:
    """Exact witness for a mixed strict/equality homogeneous sign system.

    Each constraint is a pair (vector v, s) with s in {-1, 0, +1} demanding
    sign(<v, x>) == s, strictly for s != 0.  Equalities are substituted
    first through a null-space parametrization, then Fourier-Motzkin
    elimination settles the strict part.  Returns a rational witness or
    None when the system is infeasible.  The witness is deterministic for
    a fixed constraint order.

    >>> strict_feasible([(vector([1, 0]), 1), (vector([0, 1]), 1)]) is None
    False
    >>> strict_feasible([(vector([1, 0]), 1), (vector([-1, 0]), 1)]) is None
    True
    """
    constraints = [(vector(v), s) for v, s in constraints]
    if constraints:
        n = len(constraints[0][0])
        if any(len(v) != n for v, _ in constraints):
            raise ValueError("constraint vectors of different lengths")
    else:
        raise ValueError("strict_feasible needs at least one constraint to fix the dimension")
    equalities = [v for v, s in constraints if s == ZERO]
    basis = kernel_basis(equalities, n)
    if not basis:
        witness: Vector = tuple(Fraction(0) for _ in range(n))
        if all(s == ZERO for _, s in constraints):
            return witness
        return None
    reduced: list[tuple[int, ...]] = []
    for v, s in constraints:
        if s == ZERO:
            continue
        coeffs = tuple(dot(v, b) for b in basis)
        if all(c == 0 for c in coeffs):
            return None
        scaled = clear_denominators(coeffs)
        if s == NEG:
            scaled = tuple(-x for x in scaled)
        reduced.append(_normalize_strict(scaled))
    t = _fm_solve(list(dict.fromkeys(reduced)), len(basis))
    if t is None:
        return None
    point = tuple(
        sum((ti * b[k] for ti, b in zip(t, basis)), Fraction(0)) for k in range(n)
    )
    assert all(sign(dot(v, point)) == s for v, s in constraints)
    return point
