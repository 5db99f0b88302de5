"""Sign vectors, chambers, circuits and covectors of an arrangement.

A sign vector is a fixed-length word over {-, 0, +} indexed by hyperplane
index.  Internally each word is a pair of disjoint bitmasks (positive
positions, negative positions), which keeps composition, separation and
restriction down to a few integer operations.

Chambers are enumerated by breadth-first wall crossing from a generic
starting point, with every candidate word certified by an exact strict
feasibility check; the exhaustive scan over all 3^N words is kept in the
test suite as an independent oracle.  Every covector produced here carries
a rational witness point, so geometric claims stay re-checkable.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .core import (
    Arrangement,
    Flat,
    flat_from_indices,
    intersection_lattice,
    lift_point,
    restriction_to_flat,
    self_cache,
)
from .errors import InvalidChamberWord, LengthMismatch
from .ratlinalg import (
    NEG,
    POS,
    ZERO,
    Vector,
    clear_denominators,
    dot,
    integer_primitive,
    kernel_basis,
    rank as matrix_rank,
    sign,
    strict_feasible,
    vector,
)

_CHARS = {POS: "+", NEG: "-", ZERO: "0"}
_SIGNS = {"+": POS, "-": NEG, "0": ZERO}


class SignVector:
    """Word over {-, 0, +} stored as a pair of disjoint bitmasks.

    >>> x = SignVector.from_string("+0-")
    >>> x.sign(0), x.sign(1), x.sign(2)
    (1, 0, -1)
    >>> str(compose(SignVector.from_string("+0-"), SignVector.from_string("-++")))
    '++-'
    """

    __slots__ = ("n", "plus", "minus")

    def __init__(self, n: int, plus: int, minus: int):
        assert plus & minus == 0
        self.n = n
        self.plus = plus
        self.minus = minus

    @classmethod
    def from_signs(cls, signs: Iterable[int]) -> "SignVector":
        plus = minus = 0
        n = 0
        for i, s in enumerate(signs):
            if s > 0:
                plus |= 1 << i
            elif s < 0:
                minus |= 1 << i
            n = i + 1
        return cls(n, plus, minus)

    @classmethod
    def from_string(cls, word: str) -> "SignVector":
        return cls.from_signs(_SIGNS[c] for c in word)

    @classmethod
    def zero(cls, n: int) -> "SignVector":
        return cls(n, 0, 0)

    def sign(self, h: int) -> int:
        bit = 1 << h
        if self.plus & bit:
            return POS
        if self.minus & bit:
            return NEG
        return ZERO

    def word(self) -> tuple[int, ...]:
        return tuple(self.sign(h) for h in range(self.n))

    @property
    def support_mask(self) -> int:
        return self.plus | self.minus

    @property
    def zero_mask(self) -> int:
        return ~(self.plus | self.minus) & ((1 << self.n) - 1)

    def support(self) -> frozenset[int]:
        return frozenset(_bits(self.support_mask))

    def zero_set(self) -> frozenset[int]:
        return frozenset(_bits(self.zero_mask))

    def is_full(self) -> bool:
        return self.support_mask == (1 << self.n) - 1

    def __neg__(self) -> "SignVector":
        return SignVector(self.n, self.minus, self.plus)

    def flip(self, mask: int) -> "SignVector":
        """Negate the entries selected by the mask."""
        keep = ~mask
        return SignVector(
            self.n,
            (self.plus & keep) | (self.minus & mask),
            (self.minus & keep) | (self.plus & mask),
        )

    def zero_out(self, mask: int) -> "SignVector":
        keep = ~mask
        return SignVector(self.n, self.plus & keep, self.minus & keep)

    def restrict(self, indices: Sequence[int]) -> "SignVector":
        return SignVector.from_signs(self.sign(h) for h in indices)

    def conflict_mask(self, other: "SignVector") -> int:
        """Positions carrying strictly opposite signs."""
        return (self.plus & other.minus) | (self.minus & other.plus)

    def differs_mask(self, other: "SignVector") -> int:
        return (self.plus ^ other.plus) | (self.minus ^ other.minus)

    def key(self) -> tuple[int, ...]:
        return self.word()

    def __eq__(self, other):
        return (
            isinstance(other, SignVector)
            and self.n == other.n
            and self.plus == other.plus
            and self.minus == other.minus
        )

    def __hash__(self):
        return hash((self.n, self.plus, self.minus))

    def __len__(self):
        return self.n

    def __str__(self):
        return "".join(_CHARS[s] for s in self.word())

    def __repr__(self):
        return f"SignVector({str(self)!r})"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits(mask: int) -> list[int]:
    return list(_bits(mask))


def compose(x: SignVector, y: SignVector) -> SignVector:
    """Composite x then y: take x's sign wherever x is nonzero, else y's."""
    if x.n != y.n:
        raise LengthMismatch(f"composing words of length {x.n} and {y.n}")
    z = x.zero_mask
    return SignVector(x.n, x.plus | (y.plus & z), x.minus | (y.minus & z))


class Covector:
    """Realizable sign vector with an exact witness point."""

    def __init__(self, arrangement: Arrangement, sv: SignVector, witness: Optional[Vector] = None):
        if sv.n != arrangement.n:
            raise LengthMismatch("sign word length does not match the arrangement")
        self.arrangement = arrangement
        self.sv = sv
        self.witness = witness

    def sign(self, h: int) -> int:
        return self.sv.sign(h)

    def __eq__(self, other):
        return isinstance(other, Covector) and self.sv == other.sv

    def __hash__(self):
        return hash(self.sv)

    def __str__(self):
        return str(self.sv)

    def __repr__(self):
        return f"{type(self).__name__}({str(self.sv)!r})"


class Chamber(Covector):
    """Covector with empty zero set (a maximal face)."""

    def __init__(self, arrangement, sv, witness=None):
        super().__init__(arrangement, sv, witness)
        if not sv.is_full():
            raise InvalidChamberWord(f"{sv} has zeros and cannot be a chamber")


class Circuit:
    """Sign pattern of a minimal linear dependence among the normals.

    Stored up to global negation with the canonical representative whose
    first nonzero sign is +; coeffs are the integer dependence coefficients
    (content 1) aligned with the sorted support.
    """

    def __init__(self, sv: SignVector, support: tuple[int, ...], coeffs: tuple[Fraction, ...]):
        self.sv = sv
        self.support = support
        self.coeffs = coeffs

    def __eq__(self, other):
        return isinstance(other, Circuit) and self.sv == other.sv

    def __hash__(self):
        return hash(self.sv)

    def __repr__(self):
        return f"Circuit({str(self.sv)!r})"


def _generic_point(a: Arrangement) -> Vector:
    """Deterministic point avoiding every hyperplane (moment-curve scan)."""
    t = 0
    while True:
        t += 1
        p = vector([Fraction(t) ** k for k in range(a.dim)])
        if all(dot(h.normal, p) != 0 for h in a.hyperplanes):
            return p


def _word_constraints(a: Arrangement, sv: SignVector):
    return [(a.hyperplanes[h].normal, sv.sign(h)) for h in range(a.n)]


def chamber_witness(a: Arrangement, sv: SignVector) -> Optional[Vector]:
    """Exact witness for a sign word, or None when the cell is empty."""
    if a.n == 0:
        return tuple(Fraction(0) for _ in range(a.dim))
    return strict_feasible(_word_constraints(a, sv))


def enumerate_chambers(a: Arrangement) -> list[Chamber]:
    """All chambers, each with a witness, sorted by sign word.

    Starts from the chamber of a generic direction and explores by flipping
    one sign at a time, certifying each flip with an exact feasibility
    check.
    """
    cache = self_cache(a)
    if "chambers" in cache:
        return cache["chambers"]
    if a.n == 0:
        chambers = [Chamber(a, SignVector.zero(0), tuple(Fraction(0) for _ in range(a.dim)))]
        cache["chambers"] = chambers
        cache["chamber_plus_masks"] = frozenset({0})
        return chambers
    p = _generic_point(a)
    start = SignVector.from_signs(sign(dot(h.normal, p)) for h in a.hyperplanes)
    witnesses: dict[int, Vector] = {start.plus: p}
    seen_bad: set[int] = set()
    frontier = [start.plus]
    full = (1 << a.n) - 1
    while frontier:
        nxt = []
        for wplus in frontier:
            for h in range(a.n):
                cand = wplus ^ (1 << h)
                if cand in witnesses or cand in seen_bad:
                    continue
                sv = SignVector(a.n, cand, full ^ cand)
                wit = chamber_witness(a, sv)
                if wit is None:
                    seen_bad.add(cand)
                else:
                    witnesses[cand] = wit
                    nxt.append(cand)
        frontier = nxt
    chambers = [
        Chamber(a, SignVector(a.n, plus, full ^ plus), wit)
        for plus, wit in witnesses.items()
    ]
    chambers.sort(key=lambda c: c.sv.key())
    cache["chambers"] = chambers
    cache["chamber_plus_masks"] = frozenset(witnesses)
    return chambers


def chamber_plus_masks(a: Arrangement) -> frozenset[int]:
    enumerate_chambers(a)
    return self_cache(a)["chamber_plus_masks"]


def chamber_index(a: Arrangement) -> dict[int, Chamber]:
    cache = self_cache(a)
    if "chamber_by_plus" not in cache:
        cache["chamber_by_plus"] = {c.sv.plus: c for c in enumerate_chambers(a)}
    return cache["chamber_by_plus"]


def chamber_from_word(a: Arrangement, word: str) -> Chamber:
    """Look up a chamber by its sign word in the stored orientation."""
    sv = SignVector.from_string(word)
    if sv.n != a.n:
        raise LengthMismatch("chamber word length does not match the arrangement")
    wit = chamber_witness(a, sv)
    if wit is None or not sv.is_full():
        raise InvalidChamberWord(f"{word} is not a chamber of {a}")
    return Chamber(a, sv, wit)


def chamber_from_point(a: Arrangement, point: Sequence) -> Chamber:
    """Chamber containing a point off every hyperplane."""
    p = vector(point)
    signs = [sign(dot(h.normal, p)) for h in a.hyperplanes]
    if any(s == 0 for s in signs):
        raise InvalidChamberWord(f"point {p} lies on a hyperplane")
    return Chamber(a, SignVector.from_signs(signs), p)


def enumerate_circuits(a: Arrangement) -> list[Circuit]:
    """All circuits up to negation, canonical representatives, sorted by support.

    Scans support-minimal dependent subsets of size at most rank+1 and
    solves each for its (unique up to scale) dependence coefficients.
    """
    cache = self_cache(a)
    if "circuits" in cache:
        return cache["circuits"]
    normals = a.normals()
    rank_memo: dict[tuple[int, ...], int] = {}

    def rk(idx: tuple[int, ...]) -> int:
        if idx not in rank_memo:
            rank_memo[idx] = matrix_rank([normals[i] for i in idx])
        return rank_memo[idx]

    circuits = []
    for size in range(2, a.rank + 2):
        for combo in combinations(range(a.n), size):
            if rk(combo) != size - 1:
                continue
            if any(rk(combo[:i] + combo[i + 1:]) != size - 1 for i in range(size)):
                continue
            rows = [[normals[c][d] for c in combo] for d in range(a.dim)]
            ker = kernel_basis(rows, size)
            assert len(ker) == 1
            coeffs = integer_primitive(clear_denominators(ker[0]))
            lead = next(x for x in coeffs if x != 0)
            if lead < 0:
                coeffs = tuple(-x for x in coeffs)
            assert all(x != 0 for x in coeffs)
            signs = [ZERO] * a.n
            for i, c in zip(combo, coeffs):
                signs[i] = sign(c)
            circuits.append(
                Circuit(SignVector.from_signs(signs), combo, tuple(Fraction(x) for x in coeffs))
            )
    circuits.sort(key=lambda v: v.support)
    cache["circuits"] = circuits
    return circuits


def is_covector(a: Arrangement, x: SignVector) -> bool:
    """Composition test against the chamber set: x . c a chamber for all c."""
    if x.n != a.n:
        raise LengthMismatch("sign word length does not match the arrangement")
    if a.n == 0:
        return True
    masks = chamber_plus_masks(a)
    z = x.zero_mask
    return all((x.plus | (t & z)) in masks for t in masks)


def is_covector_feasible(a: Arrangement, x: SignVector) -> bool:
    """Direct exact feasibility check, independent of the chamber set."""
    if a.n == 0:
        return True
    return strict_feasible(_word_constraints(a, x)) is not None


def covectors_with_zero_set(a: Arrangement, x: Flat) -> list[Covector]:
    """All covectors vanishing exactly on the flat's localization.

    These biject with the chambers of the restriction to the flat; each is
    lifted back with an ambient witness point.
    """
    if x.codim == 0:
        return [Covector(a, c.sv, c.witness) for c in enumerate_chambers(a)]
    sub, _, _, basis = restriction_to_flat(a, x)
    out = []
    for c in enumerate_chambers(sub):
        p = lift_point(basis, c.witness, a.dim)
        signs = []
        for h in a.hyperplanes:
            if h.index in x.contains:
                signs.append(ZERO)
            else:
                s = sign(dot(h.normal, p))
                assert s != ZERO
                signs.append(s)
        sv = SignVector.from_signs(signs)
        if sv.n != a.n:
            sv = SignVector(a.n, sv.plus, sv.minus)
        out.append(Covector(a, sv, p))
    out.sort(key=lambda c: c.sv.key())
    return out


def enumerate_covectors(a: Arrangement) -> list[Covector]:
    """The full face list (every covector, including the zero vector)."""
    cache = self_cache(a)
    if "covectors" in cache:
        return cache["covectors"]
    out: list[Covector] = []
    for f in intersection_lattice(a):
        out.extend(covectors_with_zero_set(a, f))
    out.sort(key=lambda c: c.sv.key())
    cache["covectors"] = out
    return out


def verify_covector_axioms(a: Arrangement) -> list[str]:
    """Check the four covector axioms on the full face list.

    Returns a list of human-readable violations (empty means the axioms
    hold): the zero vector is a covector, covectors are closed under
    negation and composition, and sign conflicts can be eliminated.
    """
    covs = enumerate_covectors(a)
    cset = {c.sv for c in covs}
    bad = []
    if SignVector.zero(a.n) not in cset:
        bad.append("zero vector missing")
    for c in covs:
        if -c.sv not in cset:
            bad.append(f"negation of {c.sv} missing")
    words = [c.sv for c in covs]
    for x in words:
        for y in words:
            if compose(x, y) not in cset:
                bad.append(f"composite {x}.{y} missing")
    by_zero: dict[int, list[SignVector]] = {h: [] for h in range(a.n)}
    for x in words:
        zm = x.zero_mask
        for h in _bits(zm):
            by_zero[h].append(x)
    full = (1 << a.n) - 1
    for x in words:
        for y in words:
            conflict = x.conflict_mask(y)
            if not conflict:
                continue
            w = compose(x, y)
            agree = full & ~conflict
            ok_all = True
            for h in _bits(conflict):
                found = False
                for z in by_zero[h]:
                    if (z.plus & agree) == (w.plus & agree) and (z.minus & agree) == (w.minus & agree):
                        found = True
                        break
                if not found:
                    ok_all = False
                    bad.append(f"no elimination of {x} and {y} at {h}")
            if not ok_all:
                break
    return bad


def full_word_violates_circuit(a: Arrangement, sv: SignVector) -> bool:
    """True when some circuit matches the full word on its whole support."""
    for v in enumerate_circuits(a):
        for rep in (v.sv, -v.sv):
            if (rep.plus & sv.plus) == rep.plus and (rep.minus & sv.minus) == rep.minus:
                return True
    return False


def flat_of_zero_set(a: Arrangement, x: SignVector) -> Flat:
    return flat_from_indices(a, x.zero_set())
