"""Modular flats, supersolvability, extensions, and fibers over a modular line.

Modularity of a flat is decided by an exhaustive scan of the intersection
lattice: the subspace sum with every other flat must itself occur as a
flat.  Supersolvability follows the recursive characterization: a rank-2
arrangement always qualifies, and higher ranks need a modular line whose
localization is supersolvable; the witness flag is verified element by
element before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .chamber_poset import PointedArrangement, is_incident
from .core import (
    Arrangement,
    Flat,
    build_arrangement,
    containing_indices,
    flat_from_indices,
    flats_of_codim,
    intersection_lattice,
    is_flat_of,
    localization,
    self_cache,
)
from .errors import ArrangementError, NotAFlat, NotIncident, NotModular
from .ratlinalg import canonical_normal, kernel_basis, row_space_basis
from .signvectors import bits


@dataclass(frozen=True)
class ModularFlag:
    """Chain of modular flats, one per codimension from 1 to rank-1."""

    flats: tuple[Flat, ...]


def subspace_sum_basis(x: Flat, y: Flat) -> list:
    """Canonical basis of the subspace sum of two flats."""
    return row_space_basis(list(x.basis) + list(y.basis))


def is_modular(a: Arrangement, x: Flat) -> bool:
    """The subspace sum with every flat is again a flat."""
    if not is_flat_of(a, x):
        raise NotAFlat(f"{x} is not a flat of {a}")
    for y in intersection_lattice(a):
        total = subspace_sum_basis(x, y)
        contains = containing_indices(a, total)
        flat = flat_from_indices(a, contains)
        if len(flat.basis) != len(total):
            return False
    return True


def modular_flats(a: Arrangement) -> list[Flat]:
    cache = self_cache(a)
    if "modular_flats" not in cache:
        cache["modular_flats"] = [f for f in intersection_lattice(a) if is_modular(a, f)]
    return cache["modular_flats"]


def modular_lines(a: Arrangement) -> list[Flat]:
    """Modular flats of codimension rank-1."""
    return [f for f in modular_flats(a) if f.codim == a.rank - 1]


def is_supersolvable(a: Arrangement) -> Optional[ModularFlag]:
    """Witness modular flag, or None.

    Rank at most 2 is always supersolvable; otherwise recurse through a
    modular line whose localization is supersolvable.  Every flat of the
    returned flag is re-verified to be modular in the input arrangement.
    """
    cache = self_cache(a)
    if "supersolvable" in cache:
        return cache["supersolvable"]
    flag = _search_flag(a)
    if flag is not None:
        assert all(is_modular(a, x) for x in flag.flats)
    cache["supersolvable"] = flag
    return flag


def _search_flag(a: Arrangement) -> Optional[ModularFlag]:
    r = a.rank
    if r <= 1:
        return ModularFlag(())
    if r == 2:
        return ModularFlag((flats_of_codim(a, 1)[0],))
    for line in modular_lines(a):
        sub, _, _ = localization(a, line)
        inner = is_supersolvable(sub)
        if inner is None:
            continue
        lifted = []
        for f in inner.flats:
            contains = containing_indices(a, f.basis)
            lifted.append(flat_from_indices(a, contains))
        lifted.append(line)
        return ModularFlag(tuple(lifted))
    return None


def modular_flags(a: Arrangement) -> list[ModularFlag]:
    """All maximal chains of modular flats, graded codim 1 .. rank-1."""
    r = a.rank
    if r <= 1:
        return [ModularFlag(())]
    by_codim = {c: [f for f in modular_flats(a) if f.codim == c] for c in range(1, r)}
    if any(not by_codim[c] for c in range(1, r)):
        return []
    out: list[ModularFlag] = []

    def grow(chain: list[Flat], codim: int) -> None:
        if codim == r:
            out.append(ModularFlag(tuple(chain)))
            return
        for f in by_codim[codim]:
            if not chain or set(chain[-1].key) <= set(f.key):
                chain.append(f)
                grow(chain, codim + 1)
                chain.pop()

    grow([], 1)
    return out


def incident_modular_flag(pa: PointedArrangement) -> Optional[ModularFlag]:
    """A modular flag every member of which touches the base chamber."""
    for flag in modular_flags(pa.arrangement):
        if all(is_incident(pa.c0, x) for x in flag.flats):
            return flag
    return None


def _line_annihilator(a: Arrangement, line: Flat) -> list:
    return kernel_basis(list(line.basis), a.dim)


def supersolvable_extension(a: Arrangement) -> Arrangement:
    """Extend to a supersolvable arrangement of the same rank.

    Recursion: pick the line (codimension rank-1 flat) with the largest
    localization (ties by canonical key), add the hyperplanes spanned by the
    line together with each codimension-2 intersection of outside pairs,
    extend the localized part recursively, and reassemble.  When the chosen
    line's localization does not reach rank-1, canonical hyperplanes through
    the line are added first; the proof sketch leaves this choice open.
    """
    from .ratlinalg import rank as matrix_rank

    r = a.rank
    if r <= 2:
        return a
    lines = sorted(flats_of_codim(a, r - 1), key=lambda f: (-len(f.key), f.key))
    line = lines[0]
    inside = set(line.key)
    outside = [h for h in range(a.n) if h not in inside]
    normals: dict[tuple, None] = {}
    for h in sorted(inside):
        normals.setdefault(a.hyperplanes[h].normal)
    for i, hi in enumerate(outside):
        for hj in outside[i + 1:]:
            pair_flat = flat_from_indices(a, [hi, hj])
            total = row_space_basis(list(line.basis) + list(pair_flat.basis))
            normal = kernel_basis(total, a.dim)
            assert len(normal) == 1
            canon, _ = canonical_normal(normal[0])
            normals.setdefault(canon)
    for v in _line_annihilator(a, line):
        if matrix_rank(list(normals)) == r - 1:
            break
        if matrix_rank(list(normals) + [tuple(v)]) > matrix_rank(list(normals)):
            canon, _ = canonical_normal(v)
            normals.setdefault(canon)
    local = build_arrangement(a.dim, list(normals))
    extended_local = supersolvable_extension(local)
    final: dict[tuple, None] = {}
    for h in a.hyperplanes:
        final.setdefault(h.normal)
    for v in sorted(set(hp.normal for hp in extended_local.hyperplanes) - set(final)):
        final.setdefault(v)
    return build_arrangement(a.dim, list(final))


def fiber_order(pa: PointedArrangement, line: Flat) -> tuple[int, ...]:
    """Crossing order of the fiber over the base's localization at a modular line.

    The fiber consists of the chambers agreeing with the base on the line's
    localization; under the preconditions (modular line, base incident to
    it) the fiber is a chain and each step crosses one outside hyperplane.
    """
    a = pa.arrangement
    if not is_flat_of(a, line) or line.codim != a.rank - 1 or not is_modular(a, line):
        raise NotModular(f"{line} is not a modular line of {a}")
    if not is_incident(pa.c0, line):
        raise NotIncident(f"base chamber is not incident to {line}")
    inside_mask = 0
    for h in line.key:
        inside_mask |= 1 << h
    base_loc = pa.c0.sv.plus & inside_mask
    fiber = [
        c for c in pa.chambers() if (c.sv.plus & inside_mask) == base_loc
    ]
    fiber.sort(key=lambda c: pa.sep_mask(c).bit_count())
    order = []
    for e, f in zip(fiber, fiber[1:]):
        step = bits(e.sv.differs_mask(f.sv))
        if len(step) != 1 or pa.sep_mask(e) & ~pa.sep_mask(f):
            raise ArrangementError("fiber over the base is not a chain")
        order.append(step[0])
    assert len(order) == a.n - len(line.key)
    return tuple(order)


def check_fiber_betweenness(pa: PointedArrangement, line: Flat) -> bool:
    """Betweenness along the fiber order.

    For fiber positions i < j < k, if the base chamber is incident to the
    hyperplane spanned by the line and the intersection of the i-th and
    k-th crossed hyperplanes, then the j-th crossed hyperplane contains
    that intersection.
    """
    a = pa.arrangement
    order = fiber_order(pa, line)
    for ii in range(len(order)):
        for kk in range(ii + 2, len(order)):
            hi, hk = order[ii], order[kk]
            pair = flat_from_indices(a, [hi, hk])
            total = row_space_basis(list(line.basis) + list(pair.basis))
            contains = containing_indices(a, total)
            wall = flat_from_indices(a, contains)
            if len(wall.basis) != len(total) or wall.codim != 1:
                continue
            if not is_incident(pa.c0, wall):
                continue
            for jj in range(ii + 1, kk):
                hj = order[jj]
                if hj not in pair.contains:
                    return False
    return True
