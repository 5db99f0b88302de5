"""Central hyperplane arrangements, flats, localization and restriction.

An arrangement is an ordered list of oriented hyperplanes through the
origin of Q^n.  Normals are stored in a canonical scaling (integer entries,
content 1, first nonzero entry positive) so that equality of unoriented
hyperplanes is literal tuple equality.  A flat is an intersection subspace,
keyed canonically by the set of hyperplane indices containing it.

Arrangements may be non-essential (rank < dim); braid arrangements keep
their lineality and nothing here assumes rank == dim.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DuplicateHyperplane, NotAFlat, ZeroNormal
from .ratlinalg import (
    Vector,
    canonical_normal,
    dot,
    kernel_basis,
    rank as matrix_rank,
    rat,
    vector,
)


@dataclass(frozen=True)
class Hyperplane:
    """Oriented hyperplane {x : <normal, x> = 0} with H+ = {<normal, x> > 0}."""

    normal: Vector
    index: int


class Arrangement:
    """Immutable ordered collection of pairwise-distinct central hyperplanes."""

    def __init__(self, dim: int, hyperplanes: Sequence[Hyperplane], labels=None):
        self.dim = dim
        self.hyperplanes = tuple(hyperplanes)
        self.labels = tuple(labels) if labels is not None else None
        self._cache: dict = {}

    @property
    def n(self) -> int:
        return len(self.hyperplanes)

    def normals(self) -> list[Vector]:
        return [h.normal for h in self.hyperplanes]

    @property
    def rank(self) -> int:
        if "rank" not in self._cache:
            self._cache["rank"] = matrix_rank(self.normals())
        return self._cache["rank"]

    def label(self, h: int) -> str:
        if self.labels is not None:
            return self.labels[h]
        return str(h)

    def __repr__(self):
        return f"Arrangement(dim={self.dim}, n={self.n}, rank={self.rank})"


@dataclass(frozen=True)
class Flat:
    """Intersection subspace, identified by its localization index set."""

    key: tuple[int, ...]
    basis: tuple[Vector, ...] = field(compare=False)
    codim: int = field(compare=False)

    @property
    def contains(self) -> frozenset[int]:
        return frozenset(self.key)

    def __repr__(self):
        return f"Flat(key={self.key}, codim={self.codim})"


def build_arrangement(dim: int, normals: Iterable[Sequence], labels=None) -> Arrangement:
    """Canonicalize normals, keep input order as indices, reject duplicates."""
    hyperplanes = []
    seen: dict[tuple, int] = {}
    for i, raw in enumerate(normals):
        v = vector(raw)
        if len(v) != dim:
            raise ValueError(f"normal {i} has length {len(v)}, expected {dim}")
        if all(x == 0 for x in v):
            raise ZeroNormal(f"hyperplane {i} has zero normal")
        canon, _ = canonical_normal(v)
        if canon in seen:
            raise DuplicateHyperplane(
                f"hyperplanes {seen[canon]} and {i} coincide as {canon}"
            )
        seen[canon] = i
        hyperplanes.append(Hyperplane(canon, i))
    return Arrangement(dim, hyperplanes, labels)


def containing_indices(a: Arrangement, basis: Sequence[Vector]) -> frozenset[int]:
    """Indices of hyperplanes whose normal annihilates every basis vector."""
    out = []
    for h in a.hyperplanes:
        if all(dot(h.normal, b) == 0 for b in basis):
            out.append(h.index)
    return frozenset(out)


def flat_from_indices(a: Arrangement, indices: Iterable[int]) -> Flat:
    """Close an index set to the flat it spans.

    The returned flat's index set is the full localization of the common
    intersection, which may strictly contain the input.
    """
    idx = sorted(set(indices))
    memo = a._cache.setdefault("flats_by_seed", {})
    seed = tuple(idx)
    if seed in memo:
        return memo[seed]
    rows = [a.hyperplanes[i].normal for i in idx]
    basis = tuple(kernel_basis(rows, a.dim))
    contains = containing_indices(a, basis)
    key = tuple(sorted(contains))
    flat = memo.get(key)
    if flat is None:
        flat = Flat(key=key, basis=basis, codim=a.dim - len(basis))
        memo[key] = flat
    memo[seed] = flat
    return flat


def is_flat_of(a: Arrangement, x: Flat) -> bool:
    if not all(0 <= i < a.n for i in x.key):
        return False
    return flat_from_indices(a, x.key).key == x.key


def intersection_lattice(a: Arrangement) -> list[Flat]:
    """All flats, graded by codimension, including the codim-0 flat.

    Produced by saturating pairwise intersections from the ambient space
    downward; output sorted by (codim, key) so enumeration is canonical.
    """
    if "lattice" in self_cache(a):
        return self_cache(a)["lattice"]
    top = flat_from_indices(a, ())
    found: dict[tuple[int, ...], Flat] = {top.key: top}
    frontier = [top]
    while frontier:
        new = []
        for f in frontier:
            for h in range(a.n):
                if h in f.contains:
                    continue
                g = flat_from_indices(a, set(f.key) | {h})
                if g.key not in found:
                    found[g.key] = g
                    new.append(g)
        frontier = new
    flats = sorted(found.values(), key=lambda f: (f.codim, f.key))
    self_cache(a)["lattice"] = flats
    return flats


def self_cache(a: Arrangement) -> dict:
    return a._cache


def flats_of_codim(a: Arrangement, codim: int) -> list[Flat]:
    return [f for f in intersection_lattice(a) if f.codim == codim]


def localization(a: Arrangement, x: Flat):
    """Sub-arrangement of hyperplanes containing the flat, same ambient space.

    Returns (arrangement, to_local, to_global) where the maps translate
    hyperplane indices in both directions.
    """
    if not is_flat_of(a, x):
        raise NotAFlat(f"{x} is not a flat of {a}")
    to_global = tuple(sorted(x.contains))
    to_local = {h: i for i, h in enumerate(to_global)}
    normals = [a.hyperplanes[h].normal for h in to_global]
    labels = [a.label(h) for h in to_global] if a.labels is not None else None
    sub = build_arrangement(a.dim, normals, labels)
    return sub, to_local, to_global


def restriction_to_flat(a: Arrangement, x: Flat):
    """Arrangement induced on a flat, in coordinates of its canonical basis.

    Hyperplanes not containing the flat leave traces on it; coincident
    traces are merged.  Returns (arrangement, trace_of, merged, basis)
    where trace_of maps an original index to its trace index (None for
    hyperplanes containing the flat) and merged[i] lists the original
    indices mapping to trace i.
    """
    if not is_flat_of(a, x):
        raise NotAFlat(f"{x} is not a flat of {a}")
    basis = x.basis
    trace_of: dict[int, Optional[int]] = {}
    trace_normals: list[Vector] = []
    merged: list[list[int]] = []
    seen: dict[tuple, int] = {}
    for h in a.hyperplanes:
        if h.index in x.contains:
            trace_of[h.index] = None
            continue
        raw = tuple(dot(h.normal, b) for b in basis)
        canon, _ = canonical_normal(raw)
        if canon in seen:
            i = seen[canon]
        else:
            i = len(trace_normals)
            seen[canon] = i
            trace_normals.append(canon)
            merged.append([])
        trace_of[h.index] = i
        merged[i].append(h.index)
    sub = build_arrangement(len(basis), trace_normals) if trace_normals else Arrangement(len(basis), ())
    return sub, trace_of, tuple(tuple(g) for g in merged), basis


def restriction(a: Arrangement, h: int):
    """Restriction to the hyperplane with index h."""
    if not (0 <= h < a.n):
        raise ValueError(f"hyperplane index {h} out of range")
    return restriction_to_flat(a, flat_from_indices(a, [h]))


def lift_point(basis: Sequence[Vector], coords: Sequence[Fraction], dim: int) -> Vector:
    """Map coordinates w.r.t. a flat basis back to the ambient space."""
    return tuple(
        sum((c * b[k] for c, b in zip(coords, basis)), Fraction(0)) for k in range(dim)
    )


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def arrangement_to_dict(a: Arrangement, fundamental_word: Optional[str] = None) -> dict:
    doc: dict = {
        "dim": a.dim,
        "hyperplanes": [[format_rational(x) for x in h.normal] for h in a.hyperplanes],
    }
    if fundamental_word is not None:
        doc["fundamental_chamber"] = fundamental_word
    if a.labels is not None:
        doc["labels"] = list(a.labels)
    return doc


def arrangement_from_dict(doc: dict):
    """Parse the JSON arrangement format.

    Returns (arrangement, fundamental_word) where the optional sign word is
    translated into the stored canonical orientation (the file's word refers
    to the orientations of the normals as written in the file).
    """
    dim = int(doc["dim"])
    raw_normals = [vector(row) for row in doc["hyperplanes"]]
    flips = []
    for v in raw_normals:
        if all(x == 0 for x in v):
            raise ZeroNormal("file contains a zero normal")
        _, flipped = canonical_normal(v)
        flips.append(flipped)
    labels = doc.get("labels")
    a = build_arrangement(dim, raw_normals, labels)
    word = doc.get("fundamental_chamber")
    if word is not None:
        if len(word) != a.n or any(c not in "+-" for c in word):
            raise ValueError("fundamental_chamber must be a +/- word matching the hyperplane count")
        word = "".join(
            ("-" if c == "+" else "+") if flip else c for c, flip in zip(word, flips)
        )
    return a, word


def load_arrangement(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return arrangement_from_dict(doc)


def dump_arrangement(a: Arrangement, path: str, fundamental_word: Optional[str] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(arrangement_to_dict(a, fundamental_word), fh, indent=2)
        fh.write("\n")
