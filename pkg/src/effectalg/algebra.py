"""Finite effect algebras: simplicial intervals in Z^r and explicit sum tables.

An effect algebra is a set with a partial commutative and associative sum, a
zero and a one, a unique orthosupplement a' satisfying a (+) a' = 1, and the
law that a (+) 1 defined forces a = 0.  Two concrete carriers live here:

* SimplicialAlgebra -- the integer box [0, u] in Z^r, where x (+) y equals
  x + y when x + y <= u coordinatewise and is undefined otherwise;
* TableAlgebra -- an arbitrary finite carrier given by an explicit partial
  sum table, checked against the laws by validate_table_algebra.

Elements of a box are numbered 0 .. N-1 in mixed-radix order with coordinate 1
varying fastest, so index 0 is the zero vector and index N-1 is u itself.
Index-level sums use None for "undefined"; the JSON form uses -1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence, Union

from .errors import CapExceeded, InvalidTableAlgebra

# Refuse to build boxes with more elements than this.
CARRIER_LIMIT = 10**6
# Largest carrier for which a full N x N sum table will be materialized.
SUM_TABLE_LIMIT = 2048


@dataclass(frozen=True)
class Shape:
    """A box shape u = (u_1, ..., u_r), every u_i >= 1."""

    u: tuple[int, ...]

    def __post_init__(self):
        u = tuple(self.u)
        if not u:
            raise ValueError("shape needs at least one coordinate")
        for ui in u:
            if not isinstance(ui, int) or isinstance(ui, bool) or ui < 1:
                raise ValueError(f"shape coordinates must be integers >= 1, got {ui!r}")
        object.__setattr__(self, "u", u)

    @property
    def r(self) -> int:
        return len(self.u)

    @cached_property
    def size(self) -> int:
        return math.prod(ui + 1 for ui in self.u)

    @cached_property
    def _places(self) -> tuple[int, ...]:
        places, p = [], 1
        for ui in self.u:
            places.append(p)
            p *= ui + 1
        return tuple(places)

    def index_of(self, coords: Sequence[int]) -> int:
        return sum(c * p for c, p in zip(coords, self._places))

    def coords_of(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.size:
            raise ValueError(f"index {index} out of range for shape {self.u}")
        out = []
        for ui in self.u:
            index, c = divmod(index, ui + 1)
            out.append(c)
        return tuple(out)

    def is_homogeneous(self) -> bool:
        return len(set(self.u)) == 1


@dataclass(frozen=True)
class Elem:
    """An element of the box [0, u], stored by coordinates."""

    coords: tuple[int, ...]
    shape: Shape

    def __post_init__(self):
        coords = tuple(self.coords)
        if len(coords) != self.shape.r:
            raise ValueError(f"expected {self.shape.r} coordinates, got {len(coords)}")
        for c, ui in zip(coords, self.shape.u):
            if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c <= ui:
                raise ValueError(f"coordinate {c!r} outside [0, {ui}]")
        object.__setattr__(self, "coords", coords)

    @property
    def index(self) -> int:
        return self.shape.index_of(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)


class SimplicialAlgebra:
    """The interval [0, u] in Z^r under truncated vector addition."""

    def __init__(self, shape: Shape):
        if shape.size > CARRIER_LIMIT:
            raise CapExceeded(
                f"box [0, {shape.u}] has {shape.size} elements, over the "
                f"carrier limit {CARRIER_LIMIT}",
                count=shape.size,
            )
        self.shape = shape
        self.size = shape.size
        self.zero = Elem((0,) * shape.r, shape)
        self.one = Elem(shape.u, shape)
        self.zero_index = 0
        self.one_index = shape.size - 1
        self._sums: Optional[tuple[tuple[Optional[int], ...], ...]] = None
        self._ortho: Optional[tuple[int, ...]] = None

    def __repr__(self):
        return f"SimplicialAlgebra(u={self.shape.u})"

    def element(self, index: int) -> Elem:
        return Elem(self.shape.coords_of(index), self.shape)

    def index(self, x: Elem) -> int:
        if x.shape != self.shape:
            raise ValueError("element belongs to a different box")
        return x.index

    def elements(self) -> Iterator[Elem]:
        """All elements in canonical index order."""
        for i in range(self.size):
            yield self.element(i)

    def oplus_index(self, i: int, j: int) -> Optional[int]:
        a = self.shape.coords_of(i)
        b = self.shape.coords_of(j)
        s = tuple(x + y for x, y in zip(a, b))
        if any(c > ui for c, ui in zip(s, self.shape.u)):
            return None
        return self.shape.index_of(s)

    def oplus_table(self) -> tuple[tuple[Optional[int], ...], ...]:
        """Full index-level sum table, memoized; None marks undefined sums."""
        if self._sums is None:
            if self.size > SUM_TABLE_LIMIT:
                raise CapExceeded(
                    f"sum table for {self.size} elements is over the "
                    f"limit {SUM_TABLE_LIMIT}",
                    count=self.size * self.size,
                )
            u = self.shape.u
            coords = [self.shape.coords_of(i) for i in range(self.size)]
            rows = []
            for a in coords:
                row = []
                for b in coords:
                    s = tuple(x + y for x, y in zip(a, b))
                    row.append(None if any(c > ui for c, ui in zip(s, u))
                               else self.shape.index_of(s))
                rows.append(tuple(row))
            self._sums = tuple(rows)
        return self._sums

    def ortho_table(self) -> tuple[int, ...]:
        if self._ortho is None:
            u = self.shape.u
            self._ortho = tuple(
                self.shape.index_of(tuple(ui - c for c, ui in zip(self.shape.coords_of(i), u)))
                for i in range(self.size)
            )
        return self._ortho

    def to_table(self) -> "TableAlgebra":
        """Export the box as an explicit sum table (validation is the caller's call)."""
        return TableAlgebra(self.size, self.zero_index, self.one_index, self.oplus_table())

    def to_json(self) -> dict:
        return {"type": "simplicial", "u": list(self.shape.u)}


class TableAlgebra:
    """A finite effect-algebra candidate given by an explicit partial sum table.

    The constructor checks only well-formedness: table dimensions, index
    ranges, entries int-or-None.  Whether the laws actually hold is decided
    by validate_table_algebra; loading from JSON runs that check eagerly.
    """

    def __init__(self, size: int, zero: int, one: int,
                 sum_table: Sequence[Sequence[Optional[int]]]):
        if not isinstance(size, int) or size < 1:
            raise ValueError(f"size must be a positive integer, got {size!r}")
        for name, v in (("zero", zero), ("one", one)):
            if not isinstance(v, int) or not 0 <= v < size:
                raise ValueError(f"{name} index {v!r} out of range for size {size}")
        if len(sum_table) != size:
            raise ValueError(f"sum table must have {size} rows, got {len(sum_table)}")
        rows = []
        for row in sum_table:
            if len(row) != size:
                raise ValueError(f"sum table rows must have {size} entries")
            for v in row:
                if v is not None and (not isinstance(v, int) or not 0 <= v < size):
                    raise ValueError(f"sum entry {v!r} is not None or an index below {size}")
            rows.append(tuple(row))
        self.size = size
        self.zero_index = zero
        self.one_index = one
        self.sum_table = tuple(rows)
        self._ortho: Optional[tuple[int, ...]] = None

    def __repr__(self):
        return f"TableAlgebra(size={self.size})"

    def elements(self) -> Iterator[int]:
        return iter(range(self.size))

    def oplus_index(self, i: int, j: int) -> Optional[int]:
        return self.sum_table[i][j]

    def oplus_table(self) -> tuple[tuple[Optional[int], ...], ...]:
        return self.sum_table

    def ortho_table(self) -> tuple[int, ...]:
        """Orthosupplement of each element; requires the table to determine it uniquely."""
        if self._ortho is None:
            out = []
            for a in range(self.size):
                partners = [b for b in range(self.size)
                            if self.sum_table[a][b] == self.one_index]
                if len(partners) != 1:
                    raise ValueError(
                        f"element {a} has {len(partners)} orthosupplements; "
                        "validate the table first"
                    )
                out.append(partners[0])
            self._ortho = tuple(out)
        return self._ortho

    def to_json(self) -> dict:
        return {
            "type": "table",
            "size": self.size,
            "zero": self.zero_index,
            "one": self.one_index,
            "sum": [[-1 if v is None else v for v in row] for row in self.sum_table],
        }


FiniteEffectAlgebra = Union[SimplicialAlgebra, TableAlgebra]


@dataclass(frozen=True)
class AtomRecord:
    """A minimal nonzero element together with its isotropic index ord."""

    atom: Union[Elem, int]
    ord: int


@dataclass
class ValidationReport:
    """Outcome of checking a sum table against the effect-algebra laws.

    `checks` maps each law name to None (holds) or a witness dict giving the
    first violating instance in canonical scan order.
    """

    size: int
    checks: dict[str, Optional[dict]]

    LAWS = ("commutativity", "associativity", "orthosupplement", "zero_one", "positivity")

    @property
    def ok(self) -> bool:
        return all(w is None for w in self.checks.values())

    def first_failure(self) -> str:
        for law in self.LAWS:
            w = self.checks.get(law)
            if w is not None:
                return f"{law} fails at {w}"
        return "all laws hold"

    def to_json(self) -> dict:
        out: dict = {"valid": self.ok}
        for law in self.LAWS:
            w = self.checks.get(law)
            out[law] = "pass" if w is None else {"fail": w}
        return out


def make_simplicial(u: Union[Shape, Sequence[int]]) -> SimplicialAlgebra:
    """Build the box [0, u]; refuses carriers above CARRIER_LIMIT."""
    shape = u if isinstance(u, Shape) else Shape(tuple(u))
    return SimplicialAlgebra(shape)


def oplus(alg: FiniteEffectAlgebra, x, y):
    """Partial sum; None when undefined.  Elems on boxes, indices on tables."""
    if isinstance(alg, SimplicialAlgebra):
        k = alg.oplus_index(alg.index(x), alg.index(y))
        return None if k is None else alg.element(k)
    return alg.oplus_index(x, y)


def orthosupplement(alg: FiniteEffectAlgebra, x):
    """The unique x' with x (+) x' = 1."""
    if isinstance(alg, SimplicialAlgebra):
        u = alg.shape.u
        return Elem(tuple(ui - c for c, ui in zip(x.coords, u)), alg.shape)
    return alg.ortho_table()[x]


def leq(alg: FiniteEffectAlgebra, x, y) -> bool:
    """True iff some z satisfies x (+) z = y."""
    if isinstance(alg, SimplicialAlgebra):
        return all(a <= b for a, b in zip(x.coords, y.coords))
    return any(alg.sum_table[x][z] == y for z in range(alg.size))


def isotropic_index(alg: FiniteEffectAlgebra, x) -> int:
    """ord(x): the largest n for which the n-fold sum x (+) ... (+) x exists.

    Undefined (raises ValueError) at x = 0, where every multiple exists.
    """
    if isinstance(alg, SimplicialAlgebra):
        if x.is_zero():
            raise ValueError("ord(0) is undefined")
        return min(ui // c for c, ui in zip(x.coords, alg.shape.u) if c)
    if x == alg.zero_index:
        raise ValueError("ord(0) is undefined")
    n, s = 1, x
    while True:
        t = alg.sum_table[s][x]
        if t is None:
            return n
        s, n = t, n + 1
        if n > alg.size:
            raise RuntimeError("multiples of a nonzero element failed to terminate; "
                               "the table is not an effect algebra")


def atoms(alg: FiniteEffectAlgebra) -> list[AtomRecord]:
    """All minimal nonzero elements with their isotropic indices.

    On a box these are the unit vectors e_i with ord(e_i) = u_i; on a table
    they are found by scanning the order relation directly.
    """
    if isinstance(alg, SimplicialAlgebra):
        shape = alg.shape
        out = []
        for i, ui in enumerate(shape.u):
            e = Elem(tuple(1 if j == i else 0 for j in range(shape.r)), shape)
            out.append(AtomRecord(e, ui))
        return out
    n = alg.size
    # below[a] = nonzero strict lower bounds of a
    below = [set() for _ in range(n)]
    for b in range(n):
        if b == alg.zero_index:
            continue
        for c in range(n):
            a = alg.sum_table[b][c]
            if a is not None and a != b:
                below[a].add(b)
    return [AtomRecord(a, isotropic_index(alg, a))
            for a in range(n)
            if a != alg.zero_index and not below[a]]


def has_obstruction_atom(alg: FiniteEffectAlgebra) -> bool:
    """True iff some atom has isotropic index >= 2."""
    return any(rec.ord >= 2 for rec in atoms(alg))


def unique_atom_chain(alg: FiniteEffectAlgebra) -> Optional[int]:
    """If the algebra has exactly one atom p, return n = ord(p), else None.

    When the atom is unique the carrier must be exactly {0, p, 2p, ..., np}
    with np = 1; anything else means the input was not a valid effect algebra,
    reported as a RuntimeError.
    """
    recs = atoms(alg)
    if len(recs) != 1:
        return None
    rec = recs[0]
    p = rec.atom.index if isinstance(rec.atom, Elem) else rec.atom
    n = rec.ord
    multiples = [alg.zero_index]
    s = alg.zero_index
    for _ in range(n):
        s = alg.oplus_index(s, p)
        if s is None:
            raise RuntimeError("ord(p) multiples of the unique atom stopped early")
        multiples.append(s)
    if (len(set(multiples)) != alg.size or s != alg.one_index):
        raise RuntimeError("carrier is not the chain of multiples of its unique atom")
    return n


def validate_table_algebra(alg: TableAlgebra) -> ValidationReport:
    """Check the sum table against the effect-algebra laws.

    Reports the first witness per failed law, scanning elements in index
    order: commutativity over pairs (a, b); associativity with definedness
    agreement over triples (a, b, c); unique orthosupplement per element;
    the zero-one law (a (+) 1 defined forces a = 0); and positivity
    (a (+) b = 0 forces a = b = 0) as a derived sanity check.
    """
    n = alg.size
    s = alg.sum_table
    zero, one = alg.zero_index, alg.one_index
    checks: dict[str, Optional[dict]] = {}

    def commutativity():
        for a in range(n):
            for b in range(n):
                if s[a][b] != s[b][a]:
                    return {"a": a, "b": b}
        return None

    def associativity():
        for a in range(n):
            for b in range(n):
                ab = s[a][b]
                for c in range(n):
                    bc = s[b][c]
                    left = None if ab is None else s[ab][c]
                    right = None if bc is None else s[a][bc]
                    if (left is None) != (right is None) or left != right:
                        return {"a": a, "b": b, "c": c}
        return None

    def orthosupplement_law():
        for a in range(n):
            partners = [b for b in range(n) if s[a][b] == one]
            if len(partners) != 1:
                return {"a": a, "partners": partners}
        return None

    def zero_one():
        for a in range(n):
            if s[a][one] is not None and a != zero:
                return {"a": a}
        return None

    def positivity():
        for a in range(n):
            for b in range(n):
                if s[a][b] == zero and (a != zero or b != zero):
                    return {"a": a, "b": b}
        return None

    checks["commutativity"] = commutativity()
    checks["associativity"] = associativity()
    checks["orthosupplement"] = orthosupplement_law()
    checks["zero_one"] = zero_one()
    checks["positivity"] = positivity()
    return ValidationReport(size=n, checks=checks)


def algebra_to_json(alg: FiniteEffectAlgebra) -> dict:
    return alg.to_json()


def algebra_from_json(obj: dict) -> FiniteEffectAlgebra:
    """Decode an algebra object; table inputs are validated eagerly."""
    if not isinstance(obj, dict):
        raise ValueError("algebra JSON must be an object")
    kind = obj.get("type")
    if kind == "simplicial":
        u = obj.get("u")
        if not isinstance(u, list):
            raise ValueError('simplicial algebra needs a "u" list')
        return make_simplicial(u)
    if kind == "table":
        for key in ("size", "zero", "one", "sum"):
            if key not in obj:
                raise ValueError(f'table algebra needs a "{key}" field')
        raw = obj["sum"]
        if not isinstance(raw, list):
            raise ValueError('"sum" must be a list of rows')
        table = [[None if v == -1 else v for v in row] for row in raw]
        alg = TableAlgebra(obj["size"], obj["zero"], obj["one"], table)
        report = validate_table_algebra(alg)
        if not report.ok:
            raise InvalidTableAlgebra(report)
        return alg
    raise ValueError(f"unknown algebra type {kind!r}")


def load_algebra(path) -> FiniteEffectAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        return algebra_from_json(json.load(fh))
