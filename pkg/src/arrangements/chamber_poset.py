"""Separation sets, the chamber poset, walls, incidence and shape predicates.

The poset orders chambers by inclusion of separation sets from a fixed
fundamental chamber; it is bounded and graded by separation-set size.
Joins and meets are computed by a direct scan over upper or lower bounds,
deliberately independent of the closure-based join so the two can be
compared as an executable statement of the join theorems.
"""

from __future__ import annotations

from typing import Optional

from .core import Arrangement, Flat, flat_from_indices, is_flat_of, localization
from .errors import InvalidChamberWord, NotAFlat
from .ratlinalg import rank as matrix_rank
from .signvectors import (
    Chamber,
    SignVector,
    bits,
    chamber_plus_masks,
    chamber_index,
    enumerate_chambers,
    is_covector,
)


class PointedArrangement:
    """An arrangement with a distinguished fundamental chamber.

    Caches the reorientation that makes the fundamental chamber all
    positive; closure computations are stated in that convention.
    """

    def __init__(self, arrangement: Arrangement, c0: Chamber):
        if c0.arrangement is not arrangement:
            raise ValueError("fundamental chamber belongs to a different arrangement")
        self.arrangement = arrangement
        self.c0 = c0
        self._cache: dict = {}

    @property
    def n(self) -> int:
        return self.arrangement.n

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def flip_mask(self) -> int:
        """Hyperplanes on whose negative side the fundamental chamber lies."""
        return self.c0.sv.minus

    def reorient(self, sv: SignVector) -> SignVector:
        """Rewrite a sign word in the convention where c0 is all positive."""
        return sv.flip(self.flip_mask)

    def chambers(self) -> list[Chamber]:
        return enumerate_chambers(self.arrangement)

    def chamber_of_mask(self, plus_mask: int) -> Chamber:
        return chamber_index(self.arrangement)[plus_mask]

    def sep_mask(self, c: Chamber) -> int:
        return c.sv.plus ^ self.c0.sv.plus

    def separation_from_base(self, c: Chamber) -> frozenset[int]:
        return frozenset(bits(self.sep_mask(c)))

    def chamber_with_separation(self, members) -> Optional[Chamber]:
        mask = 0
        for h in members:
            mask |= 1 << h
        plus = self.c0.sv.plus ^ mask
        return chamber_index(self.arrangement).get(plus)

    def rebase(self, c: Chamber) -> "PointedArrangement":
        return PointedArrangement(self.arrangement, c)

    def poset(self) -> "ChamberPoset":
        if "poset" not in self._cache:
            self._cache["poset"] = build_poset(self)
        return self._cache["poset"]

    def __repr__(self):
        return f"PointedArrangement({self.arrangement!r}, c0={self.c0.sv})"


def separation(c: Chamber, d: Chamber) -> frozenset[int]:
    """Hyperplanes separating two chambers of the same arrangement."""
    if c.arrangement is not d.arrangement:
        raise ValueError("chambers of different arrangements")
    return frozenset(bits(c.sv.differs_mask(d.sv)))


def separation_mask(c: Chamber, d: Chamber) -> int:
    return c.sv.plus ^ d.sv.plus


class ChamberPoset:
    """Chambers ordered by inclusion of separation sets from the base."""

    def __init__(self, pa: PointedArrangement):
        self.pa = pa
        self.chambers = tuple(pa.chambers())
        self.sep_masks = tuple(pa.sep_mask(c) for c in self.chambers)
        self.index = {c.sv.plus: i for i, c in enumerate(self.chambers)}
        self.bottom = self.index[pa.c0.sv.plus]
        self.top = self.index[(-pa.c0.sv).plus]
        by_sep = {m: i for i, m in enumerate(self.sep_masks)}
        covers: list[list[int]] = [[] for _ in self.chambers]
        for i, m in enumerate(self.sep_masks):
            for h in range(pa.n):
                bit = 1 << h
                if m & bit:
                    continue
                j = by_sep.get(m | bit)
                if j is not None:
                    covers[i].append(j)
        self.covers_up = tuple(tuple(sorted(c)) for c in covers)

    def __len__(self):
        return len(self.chambers)

    def rank_of(self, i: int) -> int:
        return self.sep_masks[i].bit_count()

    def le(self, i: int, j: int) -> bool:
        return self.sep_masks[i] & ~self.sep_masks[j] == 0

    def join_index(self, i: int, j: int) -> Optional[int]:
        union = self.sep_masks[i] | self.sep_masks[j]
        upper = [k for k, m in enumerate(self.sep_masks) if union & ~m == 0]
        minimal = [
            k
            for k in upper
            if not any(l != k and self.sep_masks[l] & ~self.sep_masks[k] == 0 for l in upper)
        ]
        return minimal[0] if len(minimal) == 1 else None

    def meet_index(self, i: int, j: int) -> Optional[int]:
        inter = self.sep_masks[i] & self.sep_masks[j]
        lower = [k for k, m in enumerate(self.sep_masks) if m & ~inter == 0]
        maximal = [
            k
            for k in lower
            if not any(l != k and self.sep_masks[k] & ~self.sep_masks[l] == 0 for l in lower)
        ]
        return maximal[0] if len(maximal) == 1 else None

    def is_lattice(self) -> bool:
        r = range(len(self.chambers))
        return all(
            self.join_index(i, j) is not None and self.meet_index(i, j) is not None
            for i in r
            for j in r
        )

    def cover_pairs_have_joins(self) -> bool:
        """Join existence for pairs covering a common element only."""
        for i in range(len(self.chambers)):
            ups = self.covers_up[i]
            for x in ups:
                for y in ups:
                    if x < y and self.join_index(x, y) is None:
                        return False
        return True


def build_poset(pa: PointedArrangement) -> ChamberPoset:
    return ChamberPoset(pa)


def join(p: ChamberPoset, c: Chamber, d: Chamber) -> Optional[Chamber]:
    k = p.join_index(p.index[c.sv.plus], p.index[d.sv.plus])
    return p.chambers[k] if k is not None else None


def meet(p: ChamberPoset, c: Chamber, d: Chamber) -> Optional[Chamber]:
    k = p.meet_index(p.index[c.sv.plus], p.index[d.sv.plus])
    return p.chambers[k] if k is not None else None


def walls(c: Chamber) -> frozenset[int]:
    """Hyperplanes whose single-sign flip of the chamber is again a chamber."""
    masks = chamber_plus_masks(c.arrangement)
    return frozenset(h for h in range(c.arrangement.n) if (c.sv.plus ^ (1 << h)) in masks)


def is_incident(c: Chamber, x: Flat) -> bool:
    """True when some face of the chamber spans exactly the flat.

    Zeroes the flat's localization in the chamber word and tests the result
    for being a covector.
    """
    a = c.arrangement
    if not is_flat_of(a, x):
        raise NotAFlat(f"{x} is not a flat of {a}")
    mask = 0
    for h in x.key:
        mask |= 1 << h
    return is_covector(a, c.sv.zero_out(mask))


def incidence_by_separation(c: Chamber, x: Flat) -> bool:
    """Separation-set incidence criterion, independent of the face test.

    The chamber is declared incident to the flat when, for every flat of
    the localization whose trace face touches the localized chamber, there
    is a chamber at separation exactly that sub-localization.
    """
    a = c.arrangement
    if not is_flat_of(a, x):
        raise NotAFlat(f"{x} is not a flat of {a}")
    sub, _, to_global = localization(a, x)
    c_loc = c.sv.restrict(to_global)
    masks = chamber_plus_masks(a)
    from .core import intersection_lattice

    for y in intersection_lattice(sub):
        zmask = 0
        for i in y.key:
            zmask |= 1 << i
        if not is_covector(sub, c_loc.zero_out(zmask)):
            continue
        gmask = 0
        for i in y.key:
            gmask |= 1 << to_global[i]
        if (c.sv.plus ^ gmask) not in masks:
            return False
    return True


def is_simplicial_chamber(c: Chamber) -> bool:
    a = c.arrangement
    w = sorted(walls(c))
    if len(w) != a.rank:
        return False
    return matrix_rank([a.hyperplanes[h].normal for h in w]) == a.rank


def is_simplicial(a: Arrangement) -> bool:
    return all(is_simplicial_chamber(c) for c in enumerate_chambers(a))


def upper_wall_set(pa: PointedArrangement, c: Chamber) -> frozenset[int]:
    """Walls of c separating it from the antipode of the base chamber."""
    sep_up = pa.full_mask ^ pa.sep_mask(c)
    return frozenset(h for h in walls(c) if sep_up & (1 << h))


def lower_wall_set(pa: PointedArrangement, c: Chamber) -> frozenset[int]:
    """Walls of c separating it from the base chamber."""
    sep = pa.sep_mask(c)
    return frozenset(h for h in walls(c) if sep & (1 << h))


def is_bineighborly(pa: PointedArrangement, upper: bool = False) -> bool:
    """Every chamber is incident to each pair of its counted walls.

    By default the walls separating the chamber from the base are used;
    with upper=True the walls separating it from the antipode are used
    instead.  Quantified over all chambers the two readings agree, since
    negation swaps them chamber by chamber.
    """
    a = pa.arrangement
    for c in pa.chambers():
        w = upper_wall_set(pa, c) if upper else lower_wall_set(pa, c)
        ws = sorted(w)
        for i, h in enumerate(ws):
            for hp in ws[i + 1:]:
                if not is_incident(c, flat_from_indices(a, [h, hp])):
                    return False
    return True


def is_bisimplicial(pa: PointedArrangement, lower: bool = False) -> bool:
    """Counted walls of every chamber are linearly independent.

    Default counts the walls separating a chamber from the antipode of the
    base; with lower=True the walls toward the base are used.  The two
    readings agree arrangement-wide (negation swaps them per chamber).
    """
    a = pa.arrangement
    for c in pa.chambers():
        w = lower_wall_set(pa, c) if lower else upper_wall_set(pa, c)
        ws = sorted(w)
        if matrix_rank([a.hyperplanes[h].normal for h in ws]) != len(ws):
            return False
    return True


def depth(pa: PointedArrangement, h: int) -> int:
    """Minimum separation-set size over chambers separated from the base by h."""
    bit = 1 << h
    return min(
        pa.sep_mask(c).bit_count() for c in pa.chambers() if pa.sep_mask(c) & bit
    )


def chamber_label(pa: PointedArrangement, c: Chamber) -> str:
    sep = sorted(pa.separation_from_base(c))
    if not sep:
        return "e"
    return "".join(pa.arrangement.label(h) for h in sep)


def poset_dot(p: ChamberPoset, use_labels: bool = False) -> str:
    """Hasse diagram in DOT, edges directed upward by rank."""
    pa = p.pa
    lines = ["digraph chambers {", "  rankdir=BT;"]
    for i, c in enumerate(p.chambers):
        name = chamber_label(pa, c) if use_labels else str(c.sv)
        lines.append(f'  n{i} [label="{name}"];')
    for i, ups in enumerate(p.covers_up):
        for j in ups:
            h = bits(p.sep_masks[j] ^ p.sep_masks[i])[0]
            lines.append(f'  n{i} -> n{j} [label="{pa.arrangement.label(h)}"];')
    lines.append("}")
    return "\n".join(lines)


def pointed(a: Arrangement, c0: Chamber) -> PointedArrangement:
    return PointedArrangement(a, c0)


def pointed_from_word(a: Arrangement, word: str) -> PointedArrangement:
    from .signvectors import chamber_from_word

    return PointedArrangement(a, chamber_from_word(a, word))
