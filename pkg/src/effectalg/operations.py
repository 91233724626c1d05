"""Total binary operations on finite effect algebras and the axiom battery.

An operation is stored either as a matrix family (one u-subunital matrix per
element, boxes only, so every left translation is additive by construction)
or as a full N x N table of result indices.  check_axioms evaluates the
sequential-product axioms:

  S1  every left translation b |-> a o b is additive;
  S2  1 o a = a;
  S3  a o b = 0 implies b o a = 0;
  S4  if a o b = b o a, then a o b' = b' o a and a o (b o c) = (a o b) o c
      for every c;
  S5  if c commutes with a and with b, then c commutes with a o b, and with
      a (+) b whenever that sum is defined.

A failed axiom reports the lexicographically least witness tuple in canonical
element order (for S1 the orthogonal pair is scanned with b <= c, which still
finds the least witness because the instance is symmetric in b and c; for S4
the b'-clause is tried before the associativity clause).  replay_witness
re-evaluates a witness tuple against the operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .algebra import (
    Elem,
    FiniteEffectAlgebra,
    Shape,
    SimplicialAlgebra,
    TableAlgebra,
    algebra_from_json,
    make_simplicial,
)
from .maps import NotAdditive, is_subunital, matrix_of_map

Matrix = tuple[tuple[int, ...], ...]

AXIOM_NAMES = ("s1", "s2", "s3", "s4", "s5")


class Operation:
    """A total binary operation a o b on a finite effect algebra."""

    def __init__(self, algebra: FiniteEffectAlgebra,
                 matrices: Optional[Sequence[Sequence[Sequence[int]]]] = None,
                 table: Optional[Sequence[Sequence[int]]] = None):
        if (matrices is None) == (table is None):
            raise ValueError("give exactly one of matrices= or table=")
        self.algebra = algebra
        n = algebra.size
        if matrices is not None:
            if not isinstance(algebra, SimplicialAlgebra):
                raise ValueError("matrix families are only defined on boxes")
            matrices = tuple(tuple(tuple(row) for row in M) for M in matrices)
            if len(matrices) != n:
                raise ValueError(f"expected {n} matrices, got {len(matrices)}")
            u = algebra.shape.u
            for a, M in enumerate(matrices):
                if not is_subunital(M, u, u):
                    raise ValueError(f"matrix for element {a} is not u-subunital")
            self.matrices: Optional[tuple[Matrix, ...]] = matrices
            self._table: Optional[tuple[tuple[int, ...], ...]] = None
        else:
            rows = []
            if len(table) != n:
                raise ValueError(f"expected {n} table rows, got {len(table)}")
            for row in table:
                if len(row) != n:
                    raise ValueError(f"expected table rows of length {n}")
                for v in row:
                    if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                        raise ValueError(f"table entry {v!r} is not an index below {n}")
                rows.append(tuple(row))
            self.matrices = None
            self._table = tuple(rows)

    @property
    def is_matrix_family(self) -> bool:
        return self.matrices is not None

    def __repr__(self):
        rep = "matrices" if self.is_matrix_family else "table"
        return f"Operation({self.algebra!r}, {rep})"

    def apply(self, a: int, b: int) -> int:
        """Index of a o b; matrix families compute it by matrix application."""
        if self.matrices is None:
            return self._table[a][b]
        shape = self.algebra.shape
        x = shape.coords_of(b)
        M = self.matrices[a]
        return shape.index_of(tuple(sum(m * c for m, c in zip(row, x)) for row in M))

    def product_table(self) -> tuple[tuple[int, ...], ...]:
        """The full N x N result table, computed once for matrix families."""
        if self._table is None:
            shape = self.algebra.shape
            coords = [shape.coords_of(i) for i in range(self.algebra.size)]
            index_of = shape.index_of
            rows = []
            for M in self.matrices:
                rows.append(tuple(
                    index_of(tuple(sum(m * c for m, c in zip(row, x)) for row in M))
                    for x in coords
                ))
            self._table = tuple(rows)
        return self._table

    def to_json(self) -> dict:
        out: dict = {"algebra": self.algebra.to_json()}
        if self.is_matrix_family:
            out["rows"] = {str(a): [list(r) for r in M]
                           for a, M in enumerate(self.matrices)}
        else:
            out["table"] = [list(row) for row in self._table]
        return out


def op_from_json(obj: dict) -> Operation:
    if not isinstance(obj, dict) or "algebra" not in obj:
        raise ValueError('operation JSON needs an "algebra" field')
    alg = algebra_from_json(obj["algebra"])
    if "table" in obj:
        return Operation(alg, table=obj["table"])
    if "rows" in obj:
        if not isinstance(alg, SimplicialAlgebra):
            raise ValueError("matrix-family operations need a simplicial algebra")
        rows = obj["rows"]
        expected = {str(a) for a in range(alg.size)}
        if set(rows) != expected:
            raise ValueError(f"rows must have exactly the keys 0..{alg.size - 1}")
        matrices = tuple(tuple(tuple(r) for r in rows[str(a)]) for a in range(alg.size))
        return Operation(alg, matrices=matrices)
    raise ValueError('operation JSON needs a "table" or "rows" field')


def _identity(r: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))


def _zero_matrix(r: int) -> Matrix:
    return tuple((0,) * r for _ in range(r))


def sigma_universal(alg: FiniteEffectAlgebra) -> Operation:
    """The universal operation: a o b = 0 when a = 0, else b."""
    if isinstance(alg, SimplicialAlgebra):
        r = alg.shape.r
        z, ident = _zero_matrix(r), _identity(r)
        return Operation(alg, matrices=tuple(
            z if a == alg.zero_index else ident for a in range(alg.size)
        ))
    n, zero = alg.size, alg.zero_index
    return Operation(alg, table=tuple(
        (zero,) * n if a == zero else tuple(range(n)) for a in range(n)
    ))


def tau_perm(u, perm: Sequence[int]) -> Operation:
    """The permutation twist on a homogeneous box: a o x is 0 at a = 0, x at
    a = u, and Px in between, where P permutes coordinates by the 1-based
    `perm` (coordinate i of Px is coordinate perm[i] of x)."""
    alg = u if isinstance(u, SimplicialAlgebra) else make_simplicial(u)
    shape = alg.shape
    if not shape.is_homogeneous():
        raise ValueError(f"permutation twists need a homogeneous shape, got {shape.u}")
    perm = tuple(perm)
    if sorted(perm) != list(range(1, shape.r + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{shape.r}")
    r = shape.r
    P = tuple(tuple(1 if j == perm[i] - 1 else 0 for j in range(r)) for i in range(r))
    z, ident = _zero_matrix(r), _identity(r)
    matrices = []
    for a in range(alg.size):
        if a == alg.zero_index:
            matrices.append(z)
        elif a == alg.one_index:
            matrices.append(ident)
        else:
            matrices.append(P)
    return Operation(alg, matrices=tuple(matrices))


def meet_boolean(r) -> Operation:
    """Componentwise minimum on the Boolean box (1, ..., 1); a o b = a AND b."""
    alg = r if isinstance(r, SimplicialAlgebra) else make_simplicial((1,) * r)
    if any(ui != 1 for ui in alg.shape.u):
        raise ValueError(f"the meet operation needs u = (1,...,1), got {alg.shape.u}")
    rank = alg.shape.r
    matrices = []
    for x in alg.elements():
        matrices.append(tuple(
            tuple(x.coords[i] if i == j else 0 for j in range(rank))
            for i in range(rank)
        ))
    return Operation(alg, matrices=tuple(matrices))


@dataclass
class AxiomReport:
    """Per-axiom verdicts for s1..s<upto>; a value of None means the axiom
    holds, otherwise it is the least witness tuple."""

    upto: int
    results: dict[str, Optional[tuple[int, ...]]]

    @property
    def all_pass(self) -> bool:
        return all(w is None for w in self.results.values())

    def passed(self, axiom: str) -> bool:
        return self.results[axiom] is None

    def witness(self, axiom: str) -> Optional[tuple[int, ...]]:
        return self.results[axiom]

    def to_json(self) -> dict:
        out = {}
        for name in AXIOM_NAMES[: self.upto]:
            w = self.results[name]
            out[name] = "pass" if w is None else {"fail": dict(zip("abc", w))}
        return out


def check_axioms(op: Operation, upto: int) -> AxiomReport:
    """Evaluate axioms S1..S<upto> exactly, collecting least witnesses.

    Each axiom short-circuits at its first violation but every axiom up to
    `upto` is evaluated.
    """
    if not 1 <= upto <= 5:
        raise ValueError(f"upto must be in 1..5, got {upto}")
    alg = op.algebra
    n = alg.size
    prod = op.product_table()
    sums = alg.oplus_table()
    zero, one = alg.zero_index, alg.one_index

    def s1():
        for a in range(n):
            row = prod[a]
            for b in range(n):
                sb = sums[b]
                ab = row[b]
                for c in range(b, n):
                    k = sb[c]
                    if k is None:
                        continue
                    t = sums[ab][row[c]]
                    if t is None or t != row[k]:
                        return (a, b, c)
        return None

    def s2():
        row = prod[one]
        for a in range(n):
            if row[a] != a:
                return (a,)
        return None

    def s3():
        for a in range(n):
            row = prod[a]
            for b in range(n):
                if row[b] == zero and prod[b][a] != zero:
                    return (a, b)
        return None

    def s4():
        ortho = alg.ortho_table()
        for a in range(n):
            row = prod[a]
            for b in range(n):
                if row[b] != prod[b][a]:
                    continue
                bp = ortho[b]
                if row[bp] != prod[bp][a]:
                    return (a, b)
                rowb = prod[b]
                ab = row[b]
                for c in range(n):
                    if row[rowb[c]] != prod[ab][c]:
                        return (a, b, c)
        return None

    def s5():
        for a in range(n):
            rowa = prod[a]
            for b in range(n):
                ab = rowa[b]
                k = sums[a][b]
                for c in range(n):
                    rowc = prod[c]
                    if rowc[a] != rowa[c] or rowc[b] != prod[b][c]:
                        continue
                    if rowc[ab] != prod[ab][c]:
                        return (a, b, c)
                    if k is not None and rowc[k] != prod[k][c]:
                        return (a, b, c)
        return None

    checkers = {"s1": s1, "s2": s2, "s3": s3, "s4": s4, "s5": s5}
    results = {name: checkers[name]() for name in AXIOM_NAMES[:upto]}
    return AxiomReport(upto=upto, results=results)


def replay_witness(op: Operation, axiom: str, witness: Sequence[int]) -> bool:
    """Re-evaluate one axiom instance; True iff the violation reproduces."""
    alg = op.algebra
    prod = op.product_table()
    sums = alg.oplus_table()
    zero, one = alg.zero_index, alg.one_index
    w = tuple(witness)
    if axiom == "s1":
        a, b, c = w
        k = sums[b][c]
        if k is None:
            return False
        t = sums[prod[a][b]][prod[a][c]]
        return t is None or t != prod[a][k]
    if axiom == "s2":
        (a,) = w
        return prod[one][a] != a
    if axiom == "s3":
        a, b = w
        return prod[a][b] == zero and prod[b][a] != zero
    if axiom == "s4":
        if len(w) == 2:
            a, b = w
            bp = alg.ortho_table()[b]
            return prod[a][b] == prod[b][a] and prod[a][bp] != prod[bp][a]
        a, b, c = w
        return (prod[a][b] == prod[b][a]
                and prod[a][prod[b][c]] != prod[prod[a][b]][c])
    if axiom == "s5":
        a, b, c = w
        if prod[c][a] != prod[a][c] or prod[c][b] != prod[b][c]:
            return False
        ab = prod[a][b]
        if prod[c][ab] != prod[ab][c]:
            return True
        k = sums[a][b]
        return k is not None and prod[c][k] != prod[k][c]
    raise ValueError(f"unknown axiom {axiom!r}")


def right_unit_holds(op: Operation) -> tuple[bool, Optional[int]]:
    """Whether a o 1 = a for every a; on failure also the least violating a."""
    prod = op.product_table()
    one = op.algebra.one_index
    for a in range(op.algebra.size):
        if prod[a][one] != a:
            return (False, a)
    return (True, None)


def commutes(op: Operation, a: Union[int, Elem], b: Union[int, Elem]) -> bool:
    """a o b = b o a."""
    ai = _as_index(op.algebra, a)
    bi = _as_index(op.algebra, b)
    return op.apply(ai, bi) == op.apply(bi, ai)


def _as_index(alg: FiniteEffectAlgebra, x: Union[int, Elem]) -> int:
    if isinstance(x, Elem):
        if not isinstance(alg, SimplicialAlgebra):
            raise ValueError("coordinate elements only address boxes")
        return alg.index(x)
    if isinstance(x, int) and 0 <= x < alg.size:
        return x
    raise ValueError(f"{x!r} is not an element of the algebra")


def to_full_table(op: Operation) -> Operation:
    """The same operation re-represented as a full table."""
    return Operation(op.algebra, table=op.product_table())


@dataclass(frozen=True)
class NotS1:
    """Refutation: row `row` of the table is not an additive left translation."""

    row: int
    witness: tuple[Elem, Elem]


def from_full_table(alg: SimplicialAlgebra,
                    table: Sequence[Sequence[int]]) -> Union[Operation, NotS1]:
    """Recover the matrix family of a product table, or refute S1.

    Each row is classified by matrix_of_map; the first non-additive row (with
    its orthogonal-pair witness) refutes S1.
    """
    if not isinstance(alg, SimplicialAlgebra):
        raise ValueError("matrix families are only defined on boxes")
    matrices = []
    for a, row in enumerate(table):
        images = [alg.element(t) for t in row]
        got = matrix_of_map(alg, alg, images)
        if isinstance(got, NotAdditive):
            return NotS1(row=a, witness=got.witness)
        matrices.append(got.rows)
    return Operation(alg, matrices=tuple(matrices))
