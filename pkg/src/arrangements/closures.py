"""Convexity and closure structure on subsets of hyperplanes.

All predicates and closures are stated in the reorientation that makes the
fundamental chamber all positive; the circuit criteria are the primary
implementation and the chamber-based definitions are kept alongside as
independent predicates for cross-checking.

The closure operators run a deterministic fixed-point loop: scan circuits
in canonical order, and whenever a circuit has all its positive part inside
the current set and its single negative element outside, force that
element in.  The forcing chain is recorded and replayable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional

from .chamber_poset import PointedArrangement
from .errors import BoundExceeded
from .signvectors import Chamber, Circuit, bits, chamber_witness, enumerate_circuits

DEFAULT_SUBSET_BOUND = 20


def subset_bound() -> int:
    return int(os.environ.get("ARRANGEMENTS_BOUND", DEFAULT_SUBSET_BOUND))


def mask_of(pa: PointedArrangement, members: Iterable[int]) -> int:
    mask = 0
    for h in members:
        if not 0 <= h < pa.n:
            raise ValueError(f"hyperplane index {h} out of range")
        mask |= 1 << h
    return mask


def set_of(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


def oriented_circuit_masks(pa: PointedArrangement) -> list[tuple[int, int, Circuit]]:
    """Both orientations of every circuit, rewritten so the base is all +."""
    if "oriented_circuits" not in pa._cache:
        out = []
        for v in enumerate_circuits(pa.arrangement):
            r = v.sv.flip(pa.flip_mask)
            out.append((r.plus, r.minus, v))
            out.append((r.minus, r.plus, v))
        pa._cache["oriented_circuits"] = out
    return pa._cache["oriented_circuits"]


def convex_forcing_table(pa: PointedArrangement) -> list[tuple[int, int, Circuit]]:
    """Orientations with a single negative element (any support size)."""
    if "force_convex" not in pa._cache:
        pa._cache["force_convex"] = [
            (p, m, v) for p, m, v in oriented_circuit_masks(pa) if m.bit_count() == 1
        ]
    return pa._cache["force_convex"]


def two_forcing_table(pa: PointedArrangement) -> list[tuple[int, int, Circuit]]:
    """Orientations shaped |positive| = 2, |negative| = 1."""
    if "force_two" not in pa._cache:
        pa._cache["force_two"] = [
            (p, m, v) for p, m, v in convex_forcing_table(pa) if p.bit_count() == 2
        ]
    return pa._cache["force_two"]


def is_separable(pa: PointedArrangement, members: Iterable[int]) -> Optional[Chamber]:
    """The chamber at separation exactly this set, if the flip is realizable."""
    mask = mask_of(pa, members)
    sv = pa.c0.sv.flip(mask)
    wit = chamber_witness(pa.arrangement, sv)
    if wit is None:
        return None
    return Chamber(pa.arrangement, sv, wit)


def _violates(mask: int, table) -> bool:
    return any(p & ~mask == 0 and m & mask == 0 for p, m, _ in table)


def is_convex(pa: PointedArrangement, members: Iterable[int]) -> bool:
    """No circuit forces a missing element through this set (circuit form)."""
    return not _violates(mask_of(pa, members), convex_forcing_table(pa))


def is_convex_by_chambers(pa: PointedArrangement, members: Iterable[int]) -> bool:
    """Chamber-based convexity: every outside hyperplane is crossed first.

    For each hyperplane outside the set there must be a chamber separated
    from the base by that hyperplane but by nothing inside the set.
    """
    mask = mask_of(pa, members)
    comp = pa.full_mask & ~mask
    sep_masks = [pa.sep_mask(c) for c in pa.chambers()]
    for h in bits(comp):
        bit = 1 << h
        if not any(s & bit and s & ~comp == 0 for s in sep_masks):
            return False
    return True


def is_2closed(pa: PointedArrangement, members: Iterable[int]) -> bool:
    return not _violates(mask_of(pa, members), two_forcing_table(pa))


def is_2closed_by_localization(pa: PointedArrangement, members: Iterable[int]) -> bool:
    """Definitional form: the trace on every rank-2 localization is convex."""
    from .core import flats_of_codim, localization
    from .signvectors import Chamber as Ch

    mask = mask_of(pa, members)
    for x in flats_of_codim(pa.arrangement, 2):
        sub, _, to_global = localization(pa.arrangement, x)
        loc_word = pa.c0.sv.restrict(to_global)
        loc_pa = PointedArrangement(sub, Ch(sub, loc_word, pa.c0.witness))
        loc_members = [i for i, h in enumerate(to_global) if mask & (1 << h)]
        if not is_convex_by_chambers(loc_pa, loc_members):
            return False
    return True


def is_biclosed(pa: PointedArrangement, members: Iterable[int]) -> bool:
    mask = mask_of(pa, members)
    table = two_forcing_table(pa)
    return not _violates(mask, table) and not _violates(pa.full_mask & ~mask, table)


def is_biconvex(pa: PointedArrangement, members: Iterable[int]) -> bool:
    mask = mask_of(pa, members)
    table = convex_forcing_table(pa)
    return not _violates(mask, table) and not _violates(pa.full_mask & ~mask, table)


@dataclass(frozen=True)
class ClosureReport:
    """Result of a closure computation with its replayable forcing chain."""

    input: frozenset[int]
    closure: frozenset[int]
    forcing_chain: tuple[tuple[Circuit, int], ...]

    def to_dict(self, pa: PointedArrangement) -> dict:
        chain = []
        for circuit, forced in self.forcing_chain:
            r = circuit.sv.flip(pa.flip_mask)
            pos = r.plus if r.minus == 1 << forced else r.minus
            chain.append(
                {
                    "support": sorted(circuit.support),
                    "positive": sorted(bits(pos)),
                    "forced": forced,
                }
            )
        return {
            "input": sorted(self.input),
            "closure": sorted(self.closure),
            "forcing_chain": chain,
        }


def _closure(pa: PointedArrangement, members: Iterable[int], table) -> ClosureReport:
    start = mask_of(pa, members)
    cur = start
    chain: list[tuple[Circuit, int]] = []
    changed = True
    while changed:
        changed = False
        for p, m, v in table:
            if p & ~cur == 0 and m & cur == 0:
                cur |= m
                chain.append((v, m.bit_length() - 1))
                changed = True
    return ClosureReport(set_of(start), set_of(cur), tuple(chain))


def closure_convex(pa: PointedArrangement, members: Iterable[int]) -> ClosureReport:
    """Smallest convex superset (least fixed point of circuit forcing)."""
    return _closure(pa, members, convex_forcing_table(pa))


def closure_2(pa: PointedArrangement, members: Iterable[int]) -> ClosureReport:
    """Smallest 2-closed superset (forcing restricted to 3-element circuits)."""
    return _closure(pa, members, two_forcing_table(pa))


def replay_closure_chain(pa: PointedArrangement, report_doc: dict) -> bool:
    """Re-run a serialized forcing chain and confirm it reaches the closure."""
    cur = 0
    for h in report_doc["input"]:
        cur |= 1 << h
    for step in report_doc["forcing_chain"]:
        pmask = 0
        for h in step["positive"]:
            pmask |= 1 << h
        forced = 1 << step["forced"]
        if pmask & ~cur or forced & cur:
            return False
        cur |= forced
    return sorted(set_of(cur)) == report_doc["closure"]


def enumerate_biclosed(pa: PointedArrangement, bound: Optional[int] = None) -> list[frozenset[int]]:
    """All biclosed subsets by exhaustive scan with the 3-circuit table."""
    limit = subset_bound() if bound is None else bound
    if pa.n > limit:
        raise BoundExceeded("biclosed subset scan over 2^n sets", limit)
    table = [(p, m) for p, m, _ in two_forcing_table(pa)]
    full = pa.full_mask
    out = []
    for mask in range(1 << pa.n):
        comp = full & ~mask
        if any(p & ~mask == 0 and m & mask == 0 for p, m in table):
            continue
        if any(p & ~comp == 0 and m & comp == 0 for p, m in table):
            continue
        out.append(set_of(mask))
    out.sort(key=lambda s: (len(s), tuple(sorted(s))))
    return out


def rotate_biclosed(pa: PointedArrangement, members: Iterable[int], c: Chamber) -> frozenset[int]:
    """Rebase a subset by symmetric difference with the separation set of c."""
    mask = mask_of(pa, members) ^ pa.sep_mask(c)
    return set_of(mask)


def join_via_2closure(pa: PointedArrangement, c: Chamber, d: Chamber) -> Optional[Chamber]:
    """Candidate join: the chamber separated by the 2-closure of both separations."""
    union = pa.sep_mask(c) | pa.sep_mask(d)
    report = closure_2(pa, set_of(union))
    return is_separable(pa, report.closure)
