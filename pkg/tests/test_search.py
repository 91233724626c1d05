"""Search-layer behavior, cross-checked three independent ways.

1. _b2_reference below re-derives every count on the four-element Boolean box
   from scratch: it builds all 729 one-matrix-per-element candidate tables and
   filters them with predicates written directly from the axiom statements,
   sharing no code with the library checker.
2. full_bruteforce_ops filters raw N x N tables, exercising the checker with
   no matrix or search machinery in the loop.
3. The unpruned route (enumerate all S1+S2 families, then check) must agree
   with the pruned backtracking search wherever both are affordable.

The exact survivor counts frozen here were computed by route 1 or 2 first and
only then compared against the library.
"""

from functools import lru_cache
from itertools import product

import pytest

from effectalg import (
    CapExceeded,
    NodeBudgetExceeded,
    chain_report,
    check_axioms,
    classify_b2,
    count_s1s2,
    enumerate_s1,
    enumerate_s1s2,
    enumerate_s1sk,
    exists_s1s4,
    full_bruteforce_ops,
    make_simplicial,
    meet_boolean,
    sigma_universal,
    tau_perm,
)

B2_ELEMS = [(0, 0), (1, 0), (0, 1), (1, 1)]
B2_MEET_TABLE = ((0, 0, 0, 0), (0, 1, 0, 1), (0, 0, 2, 2), (0, 1, 2, 3))


@lru_cache(maxsize=1)
def _b2_reference():
    """Survivor tables per axiom prefix on the four-element Boolean box,
    computed from first principles."""
    idx = {e: i for i, e in enumerate(B2_ELEMS)}

    def osum(i, j):
        s = tuple(a + b for a, b in zip(B2_ELEMS[i], B2_ELEMS[j]))
        return idx[s] if max(s) <= 1 else None

    sums = [[osum(i, j) for j in range(4)] for i in range(4)]
    orth = [idx[(1 - e[0], 1 - e[1])] for e in B2_ELEMS]

    mats = [m for m in product(range(2), repeat=4)
            if m[0] + m[1] <= 1 and m[2] + m[3] <= 1]
    assert len(mats) == 9

    def act(m, e):
        return idx[(m[0] * e[0] + m[1] * e[1], m[2] * e[0] + m[3] * e[1])]

    def s3(t):
        return all(not (t[a][b] == 0 and t[b][a] != 0)
                   for a in range(4) for b in range(4))

    def s4(t):
        for a in range(4):
            for b in range(4):
                if t[a][b] != t[b][a]:
                    continue
                if t[a][orth[b]] != t[orth[b]][a]:
                    return False
                if any(t[a][t[b][c]] != t[t[a][b]][c] for c in range(4)):
                    return False
        return True

    def s5(t):
        for a in range(4):
            for b in range(4):
                for c in range(4):
                    if t[c][a] != t[a][c] or t[c][b] != t[b][c]:
                        continue
                    ab = t[a][b]
                    if t[c][ab] != t[ab][c]:
                        return False
                    k = sums[a][b]
                    if k is not None and t[c][k] != t[k][c]:
                        return False
        return True

    ident = (1, 0, 0, 1)
    survivors = {3: set(), 4: set(), 5: set()}
    for family in product(mats, repeat=3):
        rows = family + (ident,)
        t = tuple(tuple(act(m, B2_ELEMS[b]) for b in range(4)) for m in rows)
        if s3(t):
            survivors[3].add(t)
            if s4(t):
                survivors[4].add(t)
                if s5(t):
                    survivors[5].add(t)
    return survivors


def test_reference_counts_on_the_boolean_box():
    ref = _b2_reference()
    assert len(ref[3]) == 34
    assert len(ref[4]) == 1
    assert len(ref[5]) == 1
    assert ref[4] == ref[5] == {B2_MEET_TABLE}


def test_search_reproduces_the_reference_on_the_boolean_box():
    ref = _b2_reference()
    for k in (3, 4, 5):
        res = enumerate_s1sk((1, 1), k)
        assert res.count == len(ref[k])
        assert {op.product_table() for op in res.operations} == ref[k]
        assert res.certificate == "exhaustive"


def test_s1s2_counts():
    assert count_s1s2((1,)) == 2
    assert count_s1s2((2,)) == 4
    assert count_s1s2((3,)) == 8
    assert count_s1s2((4,)) == 16
    assert count_s1s2((1, 1)) == 729
    assert count_s1s2((2, 1)) == 32768


def test_s1s2_enumeration_matches_its_count_and_passes():
    for u in [(1,), (2,), (3,), (1, 1)]:
        ops = list(enumerate_s1s2(u))
        assert len(ops) == count_s1s2(u)
        assert len({op.product_table() for op in ops}) == len(ops)
        assert all(check_axioms(op, 2).all_pass for op in ops)


def test_s1_enumeration():
    for u, want in [((1,), 4), ((2,), 8)]:
        ops = list(enumerate_s1(u))
        assert len(ops) == want
        assert all(check_axioms(op, 1).all_pass for op in ops)
    with pytest.raises(CapExceeded):
        enumerate_s1((1, 1), cap=100)


def test_s1s2_cap_refusal_carries_the_exact_count():
    with pytest.raises(CapExceeded) as exc:
        enumerate_s1s2((1, 1), cap=10)
    assert exc.value.count == 729


def test_s1s2_enumeration_is_deterministic():
    runs = [[op.product_table() for op in enumerate_s1s2((2,))] for _ in range(2)]
    assert runs[0] == runs[1]


def test_enumerate_s1sk_validates_k():
    for k in (1, 2, 6):
        with pytest.raises(ValueError):
            enumerate_s1sk((1,), k)


def test_counts_stay_exact_when_the_ops_list_is_dropped():
    res = enumerate_s1sk((1, 1), 3, cap=10)
    assert res.count == 34
    assert res.operations is None
    assert res.certificate == "exhaustive"


def test_frozen_counts_on_wider_boxes():
    # counts confirmed by the unpruned filter route below before freezing
    for u, want in [((2, 1), 57), ((2, 2), 2000)]:
        assert enumerate_s1sk(u, 3).count == want
    for u in [(2, 1), (2, 2)]:
        assert enumerate_s1sk(u, 4).count == 0
        assert enumerate_s1sk(u, 5).count == 0


def test_pruned_search_agrees_with_the_unpruned_filter():
    for u in [(2,), (3,), (1, 1), (2, 1)]:
        filtered = [op for op in enumerate_s1s2(u, cap=40000)
                    if check_axioms(op, 3).all_pass]
        res = enumerate_s1sk(u, 3, cap=40000)
        assert res.count == len(filtered)
        assert ({op.product_table() for op in res.operations}
                == {op.product_table() for op in filtered})


def test_search_agrees_with_raw_table_bruteforce():
    for u in [(1,), (2,)]:
        alg = make_simplicial(u)
        for k in (1, 2, 3, 4, 5):
            brute = {op.product_table() for op in full_bruteforce_ops(alg, k)}
            if k == 1:
                structured = {op.product_table() for op in enumerate_s1(u)}
            elif k == 2:
                structured = {op.product_table() for op in enumerate_s1s2(u)}
            else:
                structured = {op.product_table()
                              for op in enumerate_s1sk(u, k).operations}
            assert brute == structured, (u, k)


def test_bruteforce_counts_on_the_two_chain():
    alg = make_simplicial((1,))
    assert [len(full_bruteforce_ops(alg, k)) for k in (1, 2, 3, 4, 5)] == [4, 2, 1, 1, 1]


def test_bruteforce_cap_refusal():
    with pytest.raises(CapExceeded):
        full_bruteforce_ops(make_simplicial((1, 1)), 1, cap=100)


def test_b2_classification_blocks():
    cls = classify_b2()
    assert cls.total == 34
    assert len(cls.block_v_zero) == 9
    assert len(cls.block_v_nonzero) == 25
    assert sorted(cls.block_v_zero + cls.block_v_nonzero) == list(range(34))

    diagonal_zero = {(1, 0), (2, 0), (3, 0)}
    crossing = {(0, 1), (0, 2), (0, 3), (1, 2), (2, 1)}
    # within each block the two value pairs range over the same possibilities,
    # independently of one another
    v0 = [(cls.records[i].uvst[0], cls.records[i].uvst[1]) for i in cls.block_v_zero]
    v0q = [(cls.records[i].uvst[3], cls.records[i].uvst[2]) for i in cls.block_v_zero]
    assert set(v0) == diagonal_zero and set(v0q) == diagonal_zero
    assert len(set(zip(v0, v0q))) == 9
    vn = [(cls.records[i].uvst[0], cls.records[i].uvst[1]) for i in cls.block_v_nonzero]
    vnq = [(cls.records[i].uvst[3], cls.records[i].uvst[2]) for i in cls.block_v_nonzero]
    assert set(vn) == crossing and set(vnq) == crossing
    assert len(set(zip(vn, vnq))) == 25


def test_b2_classification_contains_the_named_operations():
    cls = classify_b2()
    tables = {rec.op.product_table() for rec in cls.records}
    assert meet_boolean(2).product_table() in tables
    assert tau_perm((1, 1), (2, 1)).product_table() in tables
    meet_rec = next(rec for rec in cls.records
                    if rec.op.product_table() == B2_MEET_TABLE)
    assert meet_rec.uvst == (1, 0, 0, 2)


def test_s1s4_existence_negative_cases_are_exhaustive():
    for u in [(2,), (3,), (2, 1)]:
        res = exists_s1s4(u)
        assert res.exists is False
        assert res.certificate == "exhaustive"
        assert res.witness is None


def test_s1s4_existence_positive_cases_carry_verified_witnesses():
    for u in [(1,), (1, 1), (1, 1, 1)]:
        res = exists_s1s4(u)
        assert res.exists is True
        assert res.certificate == "witness"
        assert check_axioms(res.witness, 4).all_pass
        assert res.witness.product_table() == meet_boolean(len(u)).product_table()


def test_s1s4_existence_reports_undecided_on_a_tiny_budget():
    res = exists_s1s4((2, 2), node_budget=5)
    assert res.exists is None
    assert res.certificate == "undecided"
    assert res.witness is None


def test_node_budget_exception():
    with pytest.raises(NodeBudgetExceeded) as exc:
        enumerate_s1sk((2, 2), 3, node_budget=5)
    assert exc.value.nodes > 5


def test_chain_reports():
    rep = chain_report(1)
    assert (rep.s1s2_count, rep.s1s3_count) == (2, 1)
    assert rep.s1s3_matches_sigma
    assert rep.s4.exists is True and rep.s5_exists
    assert rep.s5_witness.product_table() == sigma_universal(
        make_simplicial((1,))).product_table()
    for n in (2, 3, 4):
        rep = chain_report(n)
        assert rep.s1s2_count == 2**n
        assert rep.s1s3_count == 1
        assert rep.s1s3_matches_sigma
        assert rep.s4.exists is False and rep.s4.certificate == "exhaustive"
        assert not rep.s5_exists and rep.s5_witness is None
    with pytest.raises(ValueError):
        chain_report(0)


def test_search_result_json():
    res = enumerate_s1sk((2,), 3)
    obj = res.to_json()
    assert obj["count"] == "1"
    assert obj["certificate"] == "exhaustive"
    assert obj["operations"] == [[[0, 0, 0], [0, 1, 2], [0, 1, 2]]]
    res.operations = None
    assert "operations" not in res.to_json()


def test_existence_json():
    pos = exists_s1s4((1, 1))
    obj = pos.to_json()
    assert obj["exists"] is True and obj["certificate"] == "witness"
    assert obj["witness"] == [list(r) for r in B2_MEET_TABLE]
    neg = exists_s1s4((2,))
    assert "witness" not in neg.to_json()
