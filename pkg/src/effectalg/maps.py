"""Additive maps between boxes and their matrix classification.

A total map t : [0, u] -> [0, v] is additive when t(x (+) y) = t(x) (+) t(y)
for every defined sum.  Additive maps are exactly the actions x |-> M x of
nonnegative integer matrices M with M u <= v ("(u, v)-subunital").  Since row
i of M only has to satisfy row_i . u <= v_i, the matrices can be counted and
enumerated row by row.

additive_maps_bruteforce filters raw image tables with no matrix machinery at
all; it exists so the classification can be cross-checked against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional, Sequence, Union

from .algebra import Elem, Shape, SimplicialAlgebra
from .errors import CapExceeded

DEFAULT_MATRIX_CAP = 10**6
DEFAULT_FUNCTION_CAP = 10**7


def enumerate_rows(u: Sequence[int], budget: int) -> list[tuple[int, ...]]:
    """All nonnegative integer rows alpha with alpha . u <= budget, in
    lexicographic order."""
    u = tuple(u)
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    out: list[tuple[int, ...]] = []
    row = [0] * len(u)

    def rec(i: int, rem: int):
        if i == len(u):
            out.append(tuple(row))
            return
        for a in range(rem // u[i] + 1):
            row[i] = a
            rec(i + 1, rem - a * u[i])
        row[i] = 0

    rec(0, budget)
    return out


def count_rows(u: Sequence[int], budget: int) -> int:
    """Count rows alpha >= 0 with alpha . u <= budget without listing them."""
    u = tuple(u)
    if budget < 0:
        raise ValueError("budget must be nonnegative")

    @lru_cache(maxsize=None)
    def f(i: int, rem: int) -> int:
        if i == len(u):
            return 1
        return sum(f(i + 1, rem - a * u[i]) for a in range(rem // u[i] + 1))

    return f(0, budget)


def count_subunital(u: Sequence[int], v: Optional[Sequence[int]] = None) -> int:
    """#M(u, v): the product over codomain rows of the per-row counts."""
    u = tuple(u)
    v = u if v is None else tuple(v)
    return math.prod(count_rows(u, vi) for vi in v)


@dataclass(frozen=True)
class SubunitalMatrix:
    """A nonnegative integer matrix M with M u <= v, acting [0, u] -> [0, v]."""

    rows: tuple[tuple[int, ...], ...]
    domain: Shape
    codomain: Shape

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if len(rows) != self.codomain.r:
            raise ValueError(f"expected {self.codomain.r} rows, got {len(rows)}")
        for row, vi in zip(rows, self.codomain.u):
            if len(row) != self.domain.r:
                raise ValueError(f"expected rows of length {self.domain.r}")
            for m in row:
                if not isinstance(m, int) or isinstance(m, bool) or m < 0:
                    raise ValueError(f"matrix entries must be integers >= 0, got {m!r}")
            if sum(m * ui for m, ui in zip(row, self.domain.u)) > vi:
                raise ValueError(f"row {row} breaks subunitality against v_i = {vi}")
        object.__setattr__(self, "rows", rows)

    def apply(self, x: Elem) -> Elem:
        if x.shape != self.domain:
            raise ValueError("element is not in the matrix domain")
        y = tuple(sum(m * c for m, c in zip(row, x.coords)) for row in self.rows)
        return Elem(y, self.codomain)

    def to_json(self) -> dict:
        return {
            "rows": [list(r) for r in self.rows],
            "u": list(self.domain.u),
            "v": list(self.codomain.u),
        }


def matrix_from_json(obj: dict) -> SubunitalMatrix:
    for key in ("rows", "u", "v"):
        if key not in obj:
            raise ValueError(f'matrix JSON needs a "{key}" field')
    return SubunitalMatrix(
        tuple(tuple(r) for r in obj["rows"]), Shape(tuple(obj["u"])), Shape(tuple(obj["v"]))
    )


def is_subunital(rows: Sequence[Sequence[int]], u: Sequence[int],
                 v: Optional[Sequence[int]] = None) -> bool:
    """Raw check that rows form a (u, v)-subunital matrix; dimension mismatch raises."""
    u = tuple(u)
    v = u if v is None else tuple(v)
    if len(rows) != len(v):
        raise ValueError(f"expected {len(v)} rows, got {len(rows)}")
    for row, vi in zip(rows, v):
        if len(row) != len(u):
            raise ValueError(f"expected rows of length {len(u)}")
        if any(m < 0 for m in row):
            return False
        if sum(m * ui for m, ui in zip(row, u)) > vi:
            return False
    return True


def enumerate_subunital(u: Sequence[int], v: Optional[Sequence[int]] = None,
                        cap: int = DEFAULT_MATRIX_CAP) -> Iterator[SubunitalMatrix]:
    """Yield every (u, v)-subunital matrix, rows chosen lexicographically with
    the last row varying fastest.  Refuses up front when the count exceeds cap."""
    u = tuple(u)
    v = u if v is None else tuple(v)
    total = count_subunital(u, v)
    if total > cap:
        raise CapExceeded(f"{total} subunital matrices exceed the cap {cap}", count=total)
    dom, cod = Shape(u), Shape(v)
    pools = [enumerate_rows(u, vi) for vi in v]

    def gen():
        for rows in product(*pools):
            yield SubunitalMatrix(rows, dom, cod)

    return gen()


def apply_matrix(M: SubunitalMatrix, x: Elem) -> Elem:
    return M.apply(x)


@dataclass(frozen=True)
class NotAdditive:
    """Refutation certificate: an orthogonal pair the map table breaks."""

    witness: tuple[Elem, Elem]


def additive_maps_bruteforce(dom: SimplicialAlgebra, cod: SimplicialAlgebra,
                             cap: int = DEFAULT_FUNCTION_CAP) -> list[tuple[Elem, ...]]:
    """All additive maps [0, u] -> [0, v] by filtering raw image tables.

    Deliberately matrix-free: every one of the |cod|**|dom| functions is
    tested directly against t(x (+) y) = t(x) (+) t(y).  Tables come back in
    canonical function order (the image of the last element varies fastest).
    """
    n, m = dom.size, cod.size
    total = m**n
    if total > cap:
        raise CapExceeded(f"{total} candidate functions exceed the cap {cap}", count=total)
    pairs = []
    for i in range(n):
        for j in range(i, n):
            k = dom.oplus_index(i, j)
            if k is not None:
                pairs.append((i, j, k))
    ov = cod.oplus_table()
    elems = [cod.element(i) for i in range(m)]
    out = []
    for f in product(range(m), repeat=n):
        for i, j, k in pairs:
            t = ov[f[i]][f[j]]
            if t is None or t != f[k]:
                break
        else:
            out.append(tuple(elems[x] for x in f))
    return out


def matrix_of_map(dom: SimplicialAlgebra, cod: SimplicialAlgebra,
                  images: Sequence[Elem]) -> Union[SubunitalMatrix, NotAdditive]:
    """Classify a total map as a matrix action or refute its additivity.

    `images` lists t(x) for x in canonical index order.  On success the
    returned matrix M satisfies t(x) = M x for every x, with columns read off
    the unit vectors.  On failure the certificate carries the first orthogonal
    pair (x, y), in lexicographic index order, with t(x (+) y) != t(x) (+) t(y).
    """
    images = list(images)
    if len(images) != dom.size:
        raise ValueError(f"expected {dom.size} images, got {len(images)}")
    for t in images:
        if not isinstance(t, Elem) or t.shape != cod.shape:
            raise ValueError("images must be elements of the codomain")
    r = dom.shape.r
    cols = []
    for i in range(r):
        e = Elem(tuple(1 if j == i else 0 for j in range(r)), dom.shape)
        cols.append(images[e.index].coords)
    rows = tuple(tuple(cols[j][i] for j in range(r)) for i in range(cod.shape.r))

    agrees = True
    for x in dom.elements():
        y = tuple(sum(m * c for m, c in zip(row, x.coords)) for row in rows)
        if y != images[x.index].coords:
            agrees = False
            break
    if agrees:
        return SubunitalMatrix(rows, dom.shape, cod.shape)

    for i in range(dom.size):
        for j in range(i, dom.size):
            k = dom.oplus_index(i, j)
            if k is None:
                continue
            t = cod.oplus_index(images[i].index, images[j].index)
            if t is None or t != images[k].index:
                return NotAdditive((dom.element(i), dom.element(j)))
    raise AssertionError("map disagrees with its unit-vector matrix yet no "
                         "orthogonal pair fails; this should be impossible")


def is_coordinate_picker(M: SubunitalMatrix) -> Optional[tuple[int, ...]]:
    """Recognize rows that are zero or unit vectors.

    For a square M, returns a tuple with entry 0 for each zero row and k for
    each row equal to the unit vector picking coordinate k (1-based); returns
    None when some row is neither.
    """
    if M.domain.r != M.codomain.r:
        raise ValueError("coordinate pickers are only defined for square matrices")
    picks = []
    for row in M.rows:
        nz = [j for j, m in enumerate(row) if m]
        if not nz:
            picks.append(0)
        elif len(nz) == 1 and row[nz[0]] == 1:
            picks.append(nz[0] + 1)
        else:
            return None
    return tuple(picks)
