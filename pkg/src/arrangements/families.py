"""Deterministic generators for the fixture arrangements.

Coordinates for the two small pictured fixtures are fixed here: figure1 is
three concurrent lines in the plane and figure2 is a generic arrangement of
four planes in 3-space whose fourth normal is the sum of the first three.
Any combinatorially equivalent realization would reproduce the tested
counts; these concrete coordinates are part of the package contract.

Braid arrangements are kept non-essential in R^n (no quotient), so code
paths with rank < dim stay exercised.
"""

from __future__ import annotations

from itertools import combinations

from .chamber_poset import PointedArrangement
from .core import Arrangement, arrangement_from_dict, build_arrangement, load_arrangement
from .signvectors import chamber_from_point, chamber_from_word, enumerate_chambers


def braid(n: int) -> PointedArrangement:
    """Hyperplanes x_i = x_j for i < j; base chamber x_1 < x_2 < ... < x_n.

    Hyperplane ij gets the label "ij" (1-based), so separation sets read as
    inversion sets of permutations.
    """
    if n < 2:
        raise ValueError("braid needs n >= 2")
    normals = []
    labels = []
    for i, j in combinations(range(n), 2):
        v = [0] * n
        v[j] = 1
        v[i] = -1
        normals.append(v)
        labels.append(f"{i + 1}{j + 1}")
    a = build_arrangement(n, normals, labels)
    c0 = chamber_from_point(a, list(range(1, n + 1)))
    return PointedArrangement(a, c0)


def typeB(n: int) -> PointedArrangement:
    """Hyperplanes x_i = 0, x_i = x_j and x_i = -x_j; base 0 < x_1 < ... < x_n."""
    if n < 2:
        raise ValueError("typeB needs n >= 2")
    normals = []
    labels = []
    for i in range(n):
        v = [0] * n
        v[i] = 1
        normals.append(v)
        labels.append(f"x{i + 1}")
    for i, j in combinations(range(n), 2):
        v = [0] * n
        v[j] = 1
        v[i] = -1
        normals.append(v)
        labels.append(f"{i + 1}-{j + 1}")
        w = [0] * n
        w[j] = 1
        w[i] = 1
        normals.append(w)
        labels.append(f"{i + 1}+{j + 1}")
    a = build_arrangement(n, normals, labels)
    c0 = chamber_from_point(a, list(range(1, n + 1)))
    return PointedArrangement(a, c0)


def figure1() -> PointedArrangement:
    """Three concurrent lines in the plane, based at a bottom chamber.

    Normals (0,1), (1,0), (1,1); the base chamber contains (2,-1), so its
    two walls are the first and third lines and the middle line is crossed
    second on both galleries to the antipode.
    """
    a = build_arrangement(2, [[0, 1], [1, 0], [1, 1]], labels=["H1", "H2", "H3"])
    c0 = chamber_from_point(a, [2, -1])
    return PointedArrangement(a, c0)


def figure2() -> PointedArrangement:
    """Generic four planes in 3-space, based at the simplicial all-+ chamber.

    Normals A, B, C are the coordinate planes and D = A + B + C, so the
    single circuit is (+,+,+,-).  The base (+,+,+,+) is a simplicial cone
    with walls A, B, C.
    """
    a = build_arrangement(
        3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], labels=["A", "B", "C", "D"]
    )
    c0 = chamber_from_point(a, [1, 1, 1])
    return PointedArrangement(a, c0)


def figure2_gallery_base() -> PointedArrangement:
    """The four-planes fixture rebased at a four-walled chamber.

    The pictured gallery graph between antipodal chambers (sixteen
    galleries, labeled ABCD through DCBA) lives over a chamber all four of
    whose hyperplanes are walls; the simplicial base sees only twelve
    galleries.  This base contains (-1, 2, 2).
    """
    pa = figure2()
    c = chamber_from_point(pa.arrangement, [-1, 2, 2])
    return pa.rebase(c)


def cyclic_generic(n: int, d: int) -> Arrangement:
    """Moment-curve normals (1, t, ..., t^(d-1)) at t = 1..n; any d are independent."""
    if not n >= d >= 2:
        raise ValueError("cyclic_generic needs n >= d >= 2")
    normals = [[t**k for k in range(d)] for t in range(1, n + 1)]
    return build_arrangement(d, normals)


def pointed_cyclic(n: int, d: int) -> PointedArrangement:
    """Cyclic fixture based at its canonically first chamber."""
    a = cyclic_generic(n, d)
    return PointedArrangement(a, enumerate_chambers(a)[0])


def from_file(path: str) -> PointedArrangement:
    a, word = load_arrangement(path)
    return _pointed(a, word)


def from_dict(doc: dict) -> PointedArrangement:
    a, word = arrangement_from_dict(doc)
    return _pointed(a, word)


def _pointed(a: Arrangement, word) -> PointedArrangement:
    if word is not None:
        return PointedArrangement(a, chamber_from_word(a, word))
    return PointedArrangement(a, enumerate_chambers(a)[0])


def make_fixture(name: str, n: int | None = None, d: int | None = None, path: str | None = None) -> PointedArrangement:
    """Build a named fixture; the CLI family values route through here."""
    if name == "braid":
        return braid(n if n is not None else 4)
    if name == "typeB":
        return typeB(n if n is not None else 3)
    if name == "figure1":
        return figure1()
    if name == "figure2":
        return figure2()
    if name == "cyclic-generic":
        return pointed_cyclic(n if n is not None else 5, d if d is not None else 3)
    if name == "from-file":
        if path is None:
            raise ValueError("from-file needs a path")
        return from_file(path)
    raise ValueError(f"unknown family {name!r}")


FAMILY_NAMES = ("braid", "typeB", "figure1", "figure2", "cyclic-generic", "from-file")


def fixture_label(name: str, n=None, d=None, path=None) -> str:
    args = [x for x in (f"n={n}" if n is not None else None,
                        f"d={d}" if d is not None else None,
                        path) if x]
    return f"{name}({', '.join(args)})" if args else name
