"""Reduced galleries, codimension-2 separation, flips and admissible orders.

A reduced gallery between two chambers is a saturated chain of the poset
based at its first chamber; it is stored as the chamber chain together with
the induced crossing order, and for fixed endpoints the order determines
the chain.  Two galleries with the same endpoints are separated by the
codimension-2 flats on which their crossing orders disagree, and they are
adjacent in the gallery graph when that separation is a single flat, which
happens exactly when the corresponding block reversal (flip) is legal.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .chamber_poset import PointedArrangement
from .closures import mask_of
from .core import Arrangement, Flat, flats_of_codim, is_flat_of
from .errors import (
    BoundExceeded,
    EndpointMismatch,
    NotAdmissible,
    NotAPermutation,
)
from .signvectors import (
    Chamber,
    bits,
    chamber_index,
    chamber_plus_masks,
    is_covector,
)

DEFAULT_GALLERY_BOUND = 10**6


class Gallery:
    """Saturated chamber chain with its induced crossing order."""

    __slots__ = ("chain", "order")

    def __init__(self, chain: tuple[Chamber, ...]):
        if len(chain) < 1:
            raise ValueError("a gallery needs at least one chamber")
        order = []
        for e, f in zip(chain, chain[1:]):
            diff = bits(e.sv.differs_mask(f.sv))
            if len(diff) != 1:
                raise ValueError("gallery steps must cross exactly one hyperplane")
            order.append(diff[0])
        self.chain = chain
        self.order = tuple(order)

    @property
    def source(self) -> Chamber:
        return self.chain[0]

    @property
    def target(self) -> Chamber:
        return self.chain[-1]

    @property
    def antipodal(self) -> bool:
        return self.target.sv == -self.source.sv

    def crossed_mask(self) -> int:
        m = 0
        for h in self.order:
            m |= 1 << h
        return m

    def __eq__(self, other):
        return (
            isinstance(other, Gallery)
            and self.source.sv == other.source.sv
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.source.sv, self.order))

    def __repr__(self):
        return f"Gallery(order={self.order})"


def order_string(a: Arrangement, order: Iterable[int]) -> str:
    parts = [a.label(h) for h in order]
    if all(len(p) == 1 for p in parts):
        return "".join(parts)
    return ",".join(parts)


def antipode(pa: PointedArrangement, c: Chamber) -> Chamber:
    return pa.chamber_of_mask((-c.sv).plus)


def enumerate_galleries(
    pa: PointedArrangement,
    c: Optional[Chamber] = None,
    d: Optional[Chamber] = None,
    bound: Optional[int] = None,
) -> list[Gallery]:
    """All reduced galleries from c to d, canonically ordered.

    Defaults to the base chamber and its antipode.  Depth-first search,
    expanding successors in canonical chamber order; the result is sorted
    lexicographically by crossing order.
    """
    limit = DEFAULT_GALLERY_BOUND if bound is None else bound
    c = pa.c0 if c is None else c
    d = antipode(pa, c) if d is None else d
    a = pa.arrangement
    masks = chamber_plus_masks(a)
    index = chamber_index(a)
    target = d.sv.plus
    out: list[Gallery] = []
    chain: list[Chamber] = [index.get(c.sv.plus, c)]

    def extend(cur: int) -> None:
        rem = cur ^ target
        if rem == 0:
            if len(out) >= limit:
                raise BoundExceeded("gallery enumeration", limit)
            out.append(Gallery(tuple(chain)))
            return
        succ = [cur ^ (1 << h) for h in bits(rem) if cur ^ (1 << h) in masks]
        succ.sort(key=lambda m: index[m].sv.key())
        for nxt in succ:
            chain.append(index[nxt])
            extend(nxt)
            chain.pop()

    extend(c.sv.plus)
    out.sort(key=lambda g: g.order)
    return out


def _same_endpoints(r: Gallery, rp: Gallery) -> None:
    if r.source.sv != rp.source.sv or r.target.sv != rp.target.sv:
        raise EndpointMismatch("galleries do not share endpoints")


def l2_separation(r: Gallery, rp: Gallery) -> frozenset[Flat]:
    """Codimension-2 flats on which the two crossing orders disagree.

    Only flats whose localization meets the crossed set in at least two
    hyperplanes can distinguish galleries; with equal endpoints the crossed
    sets coincide, so the comparison is symmetric.
    """
    _same_endpoints(r, rp)
    a = r.source.arrangement
    crossed = set(r.order)
    out = []
    for x in flats_of_codim(a, 2):
        mem = x.contains
        if len(mem & crossed) < 2:
            continue
        s1 = [h for h in r.order if h in mem]
        s2 = [h for h in rp.order if h in mem]
        if s1 != s2:
            out.append(x)
    return frozenset(out)


def flip(r: Gallery, x: Flat) -> Optional[Gallery]:
    """Reverse the crossing block of a codimension-2 flat, when incident.

    The gallery must cross all hyperplanes of the flat's localization
    consecutively, and the chamber entering the block must touch the flat
    (zeroing the localization must give a covector); otherwise None.
    """
    a = r.source.arrangement
    if not is_flat_of(a, x) or x.codim != 2:
        raise ValueError(f"{x} is not a codimension-2 flat of {a}")
    mem = x.contains
    positions = [i for i, h in enumerate(r.order) if h in mem]
    if len(positions) != len(mem) or len(positions) < 2:
        return None
    lo, hi = positions[0], positions[-1]
    if hi - lo + 1 != len(positions):
        return None
    mask = 0
    for h in mem:
        mask |= 1 << h
    entering = r.chain[lo]
    if not is_covector(a, entering.sv.zero_out(mask)):
        return None
    new_order = r.order[:lo] + tuple(reversed(r.order[lo : hi + 1])) + r.order[hi + 1 :]
    index = chamber_index(a)
    chain = [r.chain[0]]
    cur = r.chain[0].sv.plus
    for h in new_order:
        cur ^= 1 << h
        chain.append(index[cur])
    return Gallery(tuple(chain))


class GalleryGraph:
    """Graph of reduced galleries between two chambers; edges are flips."""

    def __init__(self, pa: PointedArrangement, galleries: list[Gallery]):
        self.pa = pa
        self.galleries = tuple(galleries)
        self.index = {g.order: i for i, g in enumerate(self.galleries)}
        adjacency: list[set[int]] = [set() for _ in self.galleries]
        witness: dict[frozenset[int], Flat] = {}
        a = pa.arrangement
        if self.galleries:
            crossed = set(self.galleries[0].order)
            flats = [x for x in flats_of_codim(a, 2) if len(x.contains & crossed) >= 2]
            for i, g in enumerate(self.galleries):
                for x in flats:
                    gp = flip(g, x)
                    if gp is None:
                        continue
                    j = self.index[gp.order]
                    adjacency[i].add(j)
                    witness[frozenset((i, j))] = x
        self.adjacency = tuple(tuple(sorted(s)) for s in adjacency)
        self.edge_witness = witness

    def __len__(self):
        return len(self.galleries)

    def edges(self) -> list[tuple[int, int]]:
        return sorted(
            (i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if i < j
        )

    def distances(self, i: int) -> list[int]:
        dist = [-1] * len(self.galleries)
        dist[i] = 0
        queue = [i]
        while queue:
            nxt = []
            for u in queue:
                for v in self.adjacency[u]:
                    if dist[v] == -1:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            queue = nxt
        return dist

    def distance(self, i: int, j: int) -> int:
        return self.distances(i)[j]


def build_gallery_graph(
    pa: PointedArrangement,
    c: Optional[Chamber] = None,
    d: Optional[Chamber] = None,
    bound: Optional[int] = None,
) -> GalleryGraph:
    return GalleryGraph(pa, enumerate_galleries(pa, c, d, bound))


def is_l2_accessible(g: GalleryGraph, r0: Gallery) -> bool:
    """Graph distance from r0 equals the codim-2 separation size everywhere."""
    i = g.index[r0.order]
    dist = g.distances(i)
    for j, other in enumerate(g.galleries):
        if dist[j] != len(l2_separation(r0, other)):
            return False
    return True


def diameter(g: GalleryGraph) -> int:
    best = 0
    for i in range(len(g.galleries)):
        dist = g.distances(i)
        if -1 in dist:
            raise BoundExceeded("gallery graph is disconnected", len(g.galleries))
        best = max(best, max(dist))
    return best


def rank2_gallery_orders(pa: PointedArrangement, x: Flat) -> tuple[tuple[int, ...], ...]:
    """The two crossing orders of a codimension-2 localization, cached."""
    cache = pa._cache.setdefault("rank2_orders", {})
    if x.key in cache:
        return cache[x.key]
    from .core import localization

    sub, _, to_global = localization(pa.arrangement, x)
    loc_pa = PointedArrangement(
        sub, Chamber(sub, pa.c0.sv.restrict(to_global), pa.c0.witness)
    )
    gals = enumerate_galleries(loc_pa)
    orders = tuple(tuple(to_global[i] for i in g.order) for g in gals)
    assert len(orders) == 2
    cache[x.key] = orders
    return orders


def is_admissible(pa: PointedArrangement, order: Iterable[int]) -> bool:
    """Every rank-2 localization is crossed in one of its two gallery orders."""
    order = tuple(order)
    if sorted(order) != list(range(pa.n)):
        raise NotAPermutation(f"{order} is not a permutation of 0..{pa.n - 1}")
    for x in flats_of_codim(pa.arrangement, 2):
        mem = x.contains
        sub = tuple(h for h in order if h in mem)
        if sub not in rank2_gallery_orders(pa, x):
            return False
    return True


def realize_admissible(pa: PointedArrangement, order: Iterable[int]) -> Optional[Gallery]:
    """Gallery from the base to its antipode inducing the order, if one exists.

    Builds the chamber at each prefix of the order; succeeds whenever every
    prefix is a separation set.
    """
    order = tuple(order)
    if not is_admissible(pa, order):
        raise NotAdmissible(f"{order} violates a rank-2 localization")
    index = chamber_index(pa.arrangement)
    chain = [index[pa.c0.sv.plus]]
    cur = pa.c0.sv.plus
    for h in order:
        cur ^= 1 << h
        ch = index.get(cur)
        if ch is None:
            return None
        chain.append(ch)
    return Gallery(tuple(chain))


def flip_admissible_block(
    pa: PointedArrangement, order: Iterable[int], x: Flat
) -> Optional[tuple[int, ...]]:
    """Reverse a contiguous localization block of an admissible order.

    Returns None when the flat's hyperplanes are not consecutive; the
    reversed order is admissible again whenever the block is contiguous.
    """
    order = tuple(order)
    if not is_admissible(pa, order):
        raise NotAdmissible(f"{order} violates a rank-2 localization")
    if not is_flat_of(pa.arrangement, x) or x.codim != 2:
        raise ValueError(f"{x} is not a codimension-2 flat")
    mem = x.contains
    positions = [i for i, h in enumerate(order) if h in mem]
    lo, hi = positions[0], positions[-1]
    if hi - lo + 1 != len(positions):
        return None
    flipped = order[:lo] + tuple(reversed(order[lo : hi + 1])) + order[hi + 1 :]
    assert is_admissible(pa, flipped)
    return flipped


def gallery_graph_dot(g: GalleryGraph) -> str:
    a = g.pa.arrangement
    lines = ["graph galleries {"]
    for i, gal in enumerate(g.galleries):
        lines.append(f'  n{i} [label="{order_string(a, gal.order)}"];')
    for i, j in g.edges():
        x = g.edge_witness[frozenset((i, j))]
        flat_label = ",".join(a.label(h) for h in x.key)
        lines.append(f'  n{i} -- n{j} [label="{flat_label}"];')
    lines.append("}")
    return "\n".join(lines)
