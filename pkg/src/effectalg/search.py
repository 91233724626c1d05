"""Exhaustive searches over operations satisfying axiom prefixes S1..Sk.

The S1+S2 candidate space on a box is a Cartesian product: one u-subunital
matrix per element with the top row pinned to the identity, so it can be
counted by formula and enumerated directly.  For S3 the search backtracks
over row assignments in canonical element order, pruning with the
bidirectional zero condition (M_a b = 0 iff M_b a = 0) against every
previously assigned row; S4 and S5 are filtered on complete candidates only.
Nonexistence results are exhaustive or explicitly undecided, never guessed.

full_bruteforce_ops is the independent oracle: it filters raw N x N tables
through the checker with no matrix machinery at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Optional, Sequence

from .algebra import Shape, FiniteEffectAlgebra, SimplicialAlgebra, has_obstruction_atom, make_simplicial
from .errors import CapExceeded, NodeBudgetExceeded
from .maps import count_subunital, enumerate_subunital
from .operations import Matrix, Operation, check_axioms, meet_boolean, sigma_universal

DEFAULT_OP_CAP = 10**5
DEFAULT_NODE_BUDGET = 10**7
DEFAULT_TABLE_CAP = 10**7


@dataclass
class SearchResult:
    """Outcome of an operation search on the box [0, u] at axiom prefix k."""

    u: tuple[int, ...]
    k: int
    count: int
    certificate: str  # "exhaustive" or "formula"
    operations: Optional[list[Operation]]

    def to_json(self) -> dict:
        out: dict = {
            "u": list(self.u),
            "k": self.k,
            "count": str(self.count),
            "certificate": self.certificate,
        }
        if self.operations is not None:
            out["operations"] = [
                [list(row) for row in op.product_table()] for op in self.operations
            ]
        return out


@dataclass
class S4Existence:
    """Whether some S1-S4 operation exists on [0, u].

    exists is None when the search ran out of node budget; the certificate is
    then "undecided".  A positive answer carries a verified witness operation;
    a negative one certifies an exhaustive search.
    """

    u: tuple[int, ...]
    exists: Optional[bool]
    certificate: str  # "witness", "exhaustive" or "undecided"
    witness: Optional[Operation]

    def to_json(self) -> dict:
        out: dict = {
            "u": list(self.u),
            "exists": self.exists,
            "certificate": self.certificate,
        }
        if self.witness is not None:
            out["witness"] = [list(row) for row in self.witness.product_table()]
        return out


@dataclass
class B2Record:
    """One survivor on the four-element Boolean box: its row maps A (at p)
    and B (at q) and the values (u, v, s, t) = (A p, A q, B p, B q)."""

    op: Operation
    A: Matrix
    B: Matrix
    uvst: tuple[int, int, int, int]


@dataclass
class B2Classification:
    records: list[B2Record]
    block_v_zero: list[int]
    block_v_nonzero: list[int]

    @property
    def total(self) -> int:
        return len(self.records)


@dataclass
class ChainReport:
    """The full axiom-by-axiom picture on the chain [0, n]."""

    n: int
    s1s2_count: int
    s1s3_count: int
    s1s3_matches_sigma: bool
    s4: S4Existence
    s5_exists: bool
    s5_witness: Optional[Operation]


def _identity(r: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))


def count_s1s2(u: Sequence[int]) -> int:
    """#M(u) ** (N - 1): free matrix choices everywhere except the top row."""
    u = tuple(u)
    return count_subunital(u, u) ** (Shape(u).size - 1)


def enumerate_s1(u: Sequence[int], cap: int = DEFAULT_OP_CAP) -> Iterator[Operation]:
    """All matrix families with no row constraint at all (axiom S1 only)."""
    u = tuple(u)
    alg = make_simplicial(u)
    total = count_subunital(u, u) ** alg.size
    if total > cap:
        raise CapExceeded(f"{total} S1 operations exceed the cap {cap}", count=total)
    pool = [M.rows for M in enumerate_subunital(u, u)]

    def gen():
        for choice in product(pool, repeat=alg.size):
            yield Operation(alg, matrices=choice)

    return gen()


def enumerate_s1s2(u: Sequence[int], cap: int = DEFAULT_OP_CAP) -> Iterator[Operation]:
    """All S1+S2 operations: top row pinned to the identity, every other
    element assigned each u-subunital matrix, elements in canonical order
    with the later element's choice varying faster."""
    u = tuple(u)
    total = count_s1s2(u)
    if total > cap:
        raise CapExceeded(f"{total} S1+S2 operations exceed the cap {cap}", count=total)
    alg = make_simplicial(u)
    pool = [M.rows for M in enumerate_subunital(u, u)]
    ident = _identity(alg.shape.r)

    def gen():
        for choice in product(pool, repeat=alg.size - 1):
            yield Operation(alg, matrices=choice + (ident,))

    return gen()


def _pool_actions(alg: SimplicialAlgebra, pool: list[Matrix]):
    """Per-matrix action on the carrier and bitmask of elements sent to 0."""
    shape = alg.shape
    coords = [shape.coords_of(i) for i in range(alg.size)]
    action, zmask = [], []
    for M in pool:
        act, zm = [], 0
        for b, x in enumerate(coords):
            idx = shape.index_of(tuple(sum(m * c for m, c in zip(row, x)) for row in M))
            act.append(idx)
            if idx == 0:
                zm |= 1 << b
        action.append(tuple(act))
        zmask.append(zm)
    return action, zmask


def _s3_pruned_choices(alg: SimplicialAlgebra, pool: list[Matrix], node_budget: int,
                       on_solution: Callable[[tuple[int, ...]], bool]) -> None:
    """Backtrack over pool indices for elements 0..N-2 (top row fixed to the
    identity), keeping the bidirectional zero condition M_a b = 0 iff M_b a = 0
    satisfied for every pair of rows.  Calls on_solution per S3-consistent
    assignment; a True return aborts the search.

    One node = one attempted row assignment; crossing node_budget raises.
    """
    n = alg.size
    npool = len(pool)
    _, zmask = _pool_actions(alg, pool)
    full = (1 << npool) - 1
    top = n - 1
    # rows_zero_at[b]: pool indices whose matrix sends element b to 0
    rows_zero_at = [0] * n
    for mi in range(npool):
        zm = zmask[mi]
        for b in range(n):
            if (zm >> b) & 1:
                rows_zero_at[b] |= 1 << mi

    # Constraints against the pre-fixed top row (identity): I a = 0 iff a = 0,
    # so element 0 needs M_0 u = 0 and every other element needs M_a u != 0.
    allowed0 = []
    for a in range(n - 1):
        allowed0.append(rows_zero_at[top] if a == 0 else full & ~rows_zero_at[top])
    if any(m == 0 for m in allowed0):
        return

    choice = [0] * (n - 1)
    nodes = 0

    def dfs(pos: int, allowed: list[int]) -> bool:
        nonlocal nodes
        m = allowed[pos]
        while m:
            low = m & -m
            mi = low.bit_length() - 1
            m ^= low
            nodes += 1
            if nodes > node_budget:
                raise NodeBudgetExceeded(
                    f"S3 search exceeded the node budget {node_budget}", nodes=nodes
                )
            choice[pos] = mi
            if pos == n - 2:
                if on_solution(tuple(choice)):
                    return True
                continue
            zm = zmask[mi]
            narrowed = allowed.copy()
            dead = False
            for a in range(pos + 1, n - 1):
                if (zm >> a) & 1:
                    na = narrowed[a] & rows_zero_at[pos]
                else:
                    na = narrowed[a] & ~rows_zero_at[pos]
                if na == 0:
                    dead = True
                    break
                narrowed[a] = na
            if not dead and dfs(pos + 1, narrowed):
                return True
        return False

    dfs(0, allowed0)


def enumerate_s1sk(u: Sequence[int], k: int, cap: int = DEFAULT_OP_CAP,
                   node_budget: int = DEFAULT_NODE_BUDGET) -> SearchResult:
    """All operations passing S1..Sk for k in 3..5, by S3-pruned backtracking;
    for k >= 4 the S3 survivors are filtered through the full checker.

    The count is always exact; the operations list is dropped (None) when the
    count exceeds cap.
    """
    if k not in (3, 4, 5):
        raise ValueError(f"k must be in 3..5, got {k}")
    u = tuple(u)
    alg = make_simplicial(u)
    pool = [M.rows for M in enumerate_subunital(u, u)]
    ident = _identity(alg.shape.r)

    count = 0
    ops: Optional[list[Operation]] = []

    def on_solution(choice: tuple[int, ...]) -> bool:
        nonlocal count, ops
        op = Operation(alg, matrices=tuple(pool[mi] for mi in choice) + (ident,))
        if k > 3 and not check_axioms(op, k).all_pass:
            return False
        count += 1
        if ops is not None:
            if count <= cap:
                ops.append(op)
            else:
                ops = None
        return False

    _s3_pruned_choices(alg, pool, node_budget, on_solution)
    return SearchResult(u=u, k=k, count=count, certificate="exhaustive", operations=ops)


def exists_s1s4(u: Sequence[int],
                node_budget: int = DEFAULT_NODE_BUDGET) -> S4Existence:
    """Decide whether [0, u] carries an S1-S4 operation.

    Boolean shapes get the componentwise meet as an explicit witness (re-run
    through the checker before being returned).  Every other shape has an
    obstruction atom, so the S3-pruned search is run to exhaustion expecting
    no survivor; a budget trip reports undecided rather than guessing.
    """
    u = tuple(u)
    alg = make_simplicial(u)
    if not has_obstruction_atom(alg):
        op = meet_boolean(alg)
        if not check_axioms(op, 4).all_pass:
            raise RuntimeError("componentwise meet failed S1-S4 on a Boolean box; "
                               "internal inconsistency")
        return S4Existence(u=u, exists=True, certificate="witness", witness=op)

    pool = [M.rows for M in enumerate_subunital(u, u)]
    ident = _identity(alg.shape.r)
    found: list[Operation] = []

    def on_solution(choice: tuple[int, ...]) -> bool:
        op = Operation(alg, matrices=tuple(pool[mi] for mi in choice) + (ident,))
        if check_axioms(op, 4).all_pass:
            found.append(op)
            return True
        return False

    try:
        _s3_pruned_choices(alg, pool, node_budget, on_solution)
    except NodeBudgetExceeded:
        return S4Existence(u=u, exists=None, certificate="undecided", witness=None)
    if found:
        raise RuntimeError(f"an S1-S4 operation turned up on the obstructed shape {u}; "
                           "internal inconsistency")
    return S4Existence(u=u, exists=False, certificate="exhaustive", witness=None)


def classify_b2(cap: int = DEFAULT_OP_CAP,
                node_budget: int = DEFAULT_NODE_BUDGET) -> B2Classification:
    """Classify the S1-S3 survivors on the four-element Boolean box.

    Each survivor must consist of the zero row at 0, the identity row at the
    top, and additive rows A at p = (1,0) and B at q = (0,1) whose values
    (u, v, s, t) = (A p, A q, B p, B q) satisfy the cross-zero condition
    v = 0 iff s = 0.  Survivors are partitioned by that zero pattern into
    blocks of 9 and 25; any structural violation is an internal error.
    """
    res = enumerate_s1sk((1, 1), 3, cap=cap, node_budget=node_budget)
    if res.operations is None:
        raise CapExceeded("classification needs the materialized operations", count=res.count)
    zero_m: Matrix = ((0, 0), (0, 0))
    ident = _identity(2)
    p, q = 1, 2  # canonical indices of (1,0) and (0,1)
    records = []
    for op in res.operations:
        ms = op.matrices
        if ms[0] != zero_m or ms[3] != ident:
            raise RuntimeError("survivor lacks the zero/identity row structure; "
                               "internal inconsistency")
        table = op.product_table()
        uvst = (table[p][p], table[p][q], table[q][p], table[q][q])
        if uvst[:2] == (0, 0) or uvst[2:] == (0, 0):
            raise RuntimeError("survivor has a zero row at p or q; internal inconsistency")
        if (uvst[1] == 0) != (uvst[2] == 0):
            raise RuntimeError("survivor violates the cross-zero condition; "
                               "internal inconsistency")
        records.append(B2Record(op=op, A=ms[p], B=ms[q], uvst=uvst))
    v_zero = [i for i, rec in enumerate(records) if rec.uvst[1] == 0]
    v_nonzero = [i for i, rec in enumerate(records) if rec.uvst[1] != 0]
    if len(v_zero) != 9 or len(v_nonzero) != 25:
        raise RuntimeError(f"expected blocks of 9 and 25, got {len(v_zero)} and "
                           f"{len(v_nonzero)}")
    return B2Classification(records=records, block_v_zero=v_zero, block_v_nonzero=v_nonzero)


def chain_report(n: int, cap: int = DEFAULT_OP_CAP,
                 node_budget: int = DEFAULT_NODE_BUDGET) -> ChainReport:
    """Compute the axiom-by-axiom counts on the chain [0, n]."""
    if n < 1:
        raise ValueError(f"chains need n >= 1, got {n}")
    u = (n,)
    alg = make_simplicial(u)
    res3 = enumerate_s1sk(u, 3, cap=cap, node_budget=node_budget)
    sigma_table = sigma_universal(alg).product_table()
    matches = (res3.count == 1 and res3.operations is not None
               and res3.operations[0].product_table() == sigma_table)
    s4 = exists_s1s4(u, node_budget=node_budget)
    s5_ops = [op for op in (res3.operations or []) if check_axioms(op, 5).all_pass]
    return ChainReport(
        n=n,
        s1s2_count=count_s1s2(u),
        s1s3_count=res3.count,
        s1s3_matches_sigma=matches,
        s4=s4,
        s5_exists=bool(s5_ops),
        s5_witness=s5_ops[0] if s5_ops else None,
    )


def full_bruteforce_ops(alg: FiniteEffectAlgebra, k: int,
                        cap: int = DEFAULT_TABLE_CAP) -> list[Operation]:
    """Filter ALL N x N tables through check_axioms(., k).

    The independent oracle for the structured searches: table representation
    only, no matrices anywhere.  Tables are generated in canonical function
    order (last cell varying fastest).
    """
    n = alg.size
    total = n ** (n * n)
    if total > cap:
        raise CapExceeded(f"{total} candidate tables exceed the cap {cap}", count=total)
    out = []
    for flat in product(range(n), repeat=n * n):
        op = Operation(alg, table=tuple(flat[i * n:(i + 1) * n] for i in range(n)))
        if check_axioms(op, k).all_pass:
            out.append(op)
    return out
