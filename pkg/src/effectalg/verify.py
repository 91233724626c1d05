"""The reproduction suite: every acceptance criterion as expected-vs-actual rows.

Each row compares a frozen expected value against a freshly computed one.
UNDECIDED is reserved for the one search that is allowed to trip its node
budget (the S4 nonexistence run on the 25-element box); it does not fail the
suite, while any FAIL does.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fixtures
from .algebra import make_simplicial
from .maps import additive_maps_bruteforce, count_subunital, enumerate_subunital
from .operations import (
    Operation,
    check_axioms,
    right_unit_holds,
    sigma_universal,
    tau_perm,
)
from .search import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_OP_CAP,
    classify_b2,
    enumerate_s1,
    enumerate_s1s2,
    enumerate_s1sk,
    exists_s1s4,
    full_bruteforce_ops,
)

PASS, FAIL, UNDECIDED = "PASS", "FAIL", "UNDECIDED"


@dataclass
class SuiteRow:
    criterion: int
    name: str
    expected: str
    actual: str
    status: str

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "name": self.name,
            "expected": self.expected,
            "actual": self.actual,
            "status": self.status,
        }


@dataclass
class SuiteReport:
    rows: list[SuiteRow]

    @property
    def ok(self) -> bool:
        return not any(r.status == FAIL for r in self.rows)

    def tally(self) -> dict:
        return {
            "passed": sum(r.status == PASS for r in self.rows),
            "failed": sum(r.status == FAIL for r in self.rows),
            "undecided": sum(r.status == UNDECIDED for r in self.rows),
        }

    def to_json(self) -> dict:
        out = {"suite": "paper", "ok": self.ok}
        out.update(self.tally())
        out["rows"] = [r.to_json() for r in self.rows]
        return out


def _row(criterion: int, name: str, expected: str, actual: str,
         undecided: bool = False) -> SuiteRow:
    status = UNDECIDED if undecided else (PASS if expected == actual else FAIL)
    return SuiteRow(criterion, name, expected, actual, status)


def _ush(u) -> str:
    return "(" + ",".join(str(x) for x in u) + ")"


def _criterion1() -> list[SuiteRow]:
    cases = [((1,), 2), ((2,), 2), ((3,), 2), ((4,), 2),
             ((1, 1), 9), ((1, 1, 1), 64), ((2, 1), 8)]
    return [
        _row(1, f"#M{_ush(u)}", str(want), str(count_subunital(u)))
        for u, want in cases
    ]


def _criterion2() -> list[SuiteRow]:
    rows = []
    for u in [(1,), (2,), (3,), (1, 1), (2, 1)]:
        alg = make_simplicial(u)
        elems = list(alg.elements())
        brute = {tuple(e.index for e in tab)
                 for tab in additive_maps_bruteforce(alg, alg)}
        structured = {tuple(M.apply(x).index for x in elems)
                      for M in enumerate_subunital(u)}
        actual = ("equal sets" if brute == structured
                  else f"differ ({len(brute)} vs {len(structured)})")
        rows.append(_row(2, f"additive-map oracle on {_ush(u)}", "equal sets", actual))
    return rows


def _criterion3() -> list[SuiteRow]:
    rows = []
    cases = [((1,), 2, "C1"), ((2,), 4, "C2"), ((3,), 8, "C3"), ((1, 1), 729, "B2")]
    for u, want, label in cases:
        ops = list(enumerate_s1s2(u))
        all_pass = all(check_axioms(op, 2).all_pass for op in ops)
        actual = f"{len(ops)} ops, all pass k=2: {all_pass}"
        rows.append(_row(3, f"S1+S2 on {label}", f"{want} ops, all pass k=2: True", actual))
    return rows


def _criterion4(cap: int, node_budget: int) -> list[SuiteRow]:
    rows = []
    for n in (1, 2, 3, 4):
        res = enumerate_s1sk((n,), 3, cap=cap, node_budget=node_budget)
        sigma_t = sigma_universal(make_simplicial((n,))).product_table()
        if (res.count == 1 and res.operations
                and res.operations[0].product_table() == sigma_t):
            actual = "unique, equals sigma"
        else:
            actual = f"count={res.count}"
        rows.append(_row(4, f"S1-S3 on C{n}", "unique, equals sigma", actual))
    return rows


def _criterion5(cap: int, node_budget: int) -> list[SuiteRow]:
    try:
        cls = classify_b2(cap=cap, node_budget=node_budget)
    except RuntimeError as exc:
        return [_row(5, "B2 S1-S3 classification", "34 = 9 + 25", f"error: {exc}")]
    cross = all((rec.uvst[1] == 0) == (rec.uvst[2] == 0) for rec in cls.records)
    return [
        _row(5, "B2 S1-S3 count", "34", str(cls.total)),
        _row(5, "B2 blocks (v=0, v!=0)", "9 + 25",
             f"{len(cls.block_v_zero)} + {len(cls.block_v_nonzero)}"),
        _row(5, "B2 cross-zero condition", "holds for all",
             "holds for all" if cross else "violated"),
    ]


def _criterion6(node_budget: int) -> tuple[list[SuiteRow], list[tuple[tuple, Operation]]]:
    rows = []
    witnesses = []
    for u in [(2,), (3,), (4,), (2, 1), (2, 2)]:
        res = exists_s1s4(u, node_budget=node_budget)
        if res.exists is None:
            rows.append(_row(6, f"S1-S4 on {_ush(u)}", "false (exhaustive)",
                             "undecided (node budget)", undecided=True))
        else:
            actual = f"{str(res.exists).lower()} ({res.certificate})"
            rows.append(_row(6, f"S1-S4 on {_ush(u)}", "false (exhaustive)", actual))
    for u in [(1,), (1, 1), (1, 1, 1)]:
        res = exists_s1s4(u, node_budget=node_budget)
        ok = (res.exists is True and res.witness is not None
              and check_axioms(res.witness, 5).all_pass)
        actual = "true, witness passes k=5" if ok else f"exists={res.exists}"
        rows.append(_row(6, f"S1-S4 on {_ush(u)}", "true, witness passes k=5", actual))
        if res.witness is not None:
            witnesses.append((u, res.witness))
    return rows, witnesses


def _criterion7() -> list[SuiteRow]:
    algebras = [(f"C{n} table", fixtures.load_fixture(f"c{n}")) for n in (1, 2, 3, 4)]
    algebras += [(f"box {_ush(u)}", make_simplicial(u))
                 for u in [(1, 1), (2, 1), (1, 1, 1)]]
    algebras.append(("MO2", fixtures.mo2()))
    rows = []
    for label, alg in algebras:
        rep = check_axioms(sigma_universal(alg), 3)
        rows.append(_row(7, f"sigma passes k=3 on {label}", "all pass",
                         "all pass" if rep.all_pass else f"fails {rep.results}"))
    return rows


def _criterion8(witnesses) -> list[SuiteRow]:
    rows = []
    for u, op in witnesses:
        holds, w = right_unit_holds(op)
        actual = "holds" if holds else f"fails at a={w}"
        rows.append(_row(8, f"right unit on S1-S4 witness for {_ush(u)}", "holds", actual))
    return rows


def _criterion9() -> list[SuiteRow]:
    rows = []
    for u in [(1, 1), (2, 2)]:
        alg = make_simplicial(u)
        tau = tau_perm(alg, (2, 1))
        rep = check_axioms(tau, 3)
        differs = tau.product_table() != sigma_universal(alg).product_table()
        actual = f"all pass k=3: {rep.all_pass}, differs from sigma: {differs}"
        rows.append(_row(9, f"tau_swap on {_ush(u)}",
                         "all pass k=3: True, differs from sigma: True", actual))
    return rows


def _criterion10(cap: int, node_budget: int) -> list[SuiteRow]:
    rows = []
    for n in (1, 2):
        alg = make_simplicial((n,))
        for k in range(1, 6):
            brute = {op.product_table() for op in full_bruteforce_ops(alg, k)}
            if k == 1:
                structured = {op.product_table() for op in enumerate_s1((n,))}
            elif k == 2:
                structured = {op.product_table() for op in enumerate_s1s2((n,))}
            else:
                res = enumerate_s1sk((n,), k, cap=cap, node_budget=node_budget)
                structured = {op.product_table() for op in res.operations}
            actual = ("equal sets" if brute == structured
                      else f"differ ({len(brute)} vs {len(structured)})")
            rows.append(_row(10, f"oracle vs search on C{n}, k={k}", "equal sets", actual))
    return rows


def run_suite(cap: int = DEFAULT_OP_CAP,
              node_budget: int = DEFAULT_NODE_BUDGET) -> SuiteReport:
    rows: list[SuiteRow] = []
    rows += _criterion1()
    rows += _criterion2()
    rows += _criterion3()
    rows += _criterion4(cap, node_budget)
    rows += _criterion5(cap, node_budget)
    c6_rows, witnesses = _criterion6(node_budget)
    rows += c6_rows
    rows += _criterion7()
    rows += _criterion8(witnesses)
    rows += _criterion9()
    rows += _criterion10(cap, node_budget)
    return SuiteReport(rows=rows)
