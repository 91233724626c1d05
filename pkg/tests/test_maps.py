"""Additive maps and their matrix classification.

The brute-force route (raw image tables filtered by the additivity equation)
is the oracle here; the matrix route must reproduce it exactly on every shape
small enough to brute-force.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from effectalg import (
    CapExceeded,
    Elem,
    NotAdditive,
    Shape,
    SubunitalMatrix,
    additive_maps_bruteforce,
    apply_matrix,
    count_subunital,
    enumerate_subunital,
    is_coordinate_picker,
    is_subunital,
    make_simplicial,
    matrix_from_json,
    matrix_of_map,
)
from effectalg.maps import count_rows, enumerate_rows

small_shapes = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(tuple)


def test_row_enumeration_is_lexicographic_and_complete():
    rows = enumerate_rows((2, 1), 2)
    assert rows == [(0, 0), (0, 1), (0, 2), (1, 0)]
    assert count_rows((2, 1), 2) == 4


@given(small_shapes, st.integers(0, 4))
def test_row_count_matches_the_listing(u, budget):
    rows = enumerate_rows(u, budget)
    assert len(rows) == count_rows(u, budget)
    assert rows == sorted(rows)
    assert all(sum(a * ui for a, ui in zip(row, u)) <= budget for row in rows)


def test_matrix_counts():
    for n in (1, 2, 3, 4):
        assert count_subunital((n,)) == 2
    assert count_subunital((1, 1)) == 9
    assert count_subunital((1, 1, 1)) == 64
    assert count_subunital((2, 1)) == 8


def test_homogeneous_count_is_r_plus_1_to_the_r():
    for r in (1, 2, 3):
        for k in (1, 2, 3):
            assert count_subunital((k,) * r) == (r + 1) ** r


def test_enumeration_matches_the_count_and_is_deterministic():
    for u in [(1,), (3,), (1, 1), (2, 1)]:
        first = [M.rows for M in enumerate_subunital(u)]
        assert len(first) == len(set(first)) == count_subunital(u)
        assert first == [M.rows for M in enumerate_subunital(u)]
        assert all(is_subunital(rows, u) for rows in first)


def test_enumeration_cap_refusal_reports_the_count():
    with pytest.raises(CapExceeded) as exc:
        list(enumerate_subunital((1, 1), cap=8))
    assert exc.value.count == 9


def test_subunital_matrix_rejects_bad_rows():
    dom = Shape((2, 1))
    with pytest.raises(ValueError):
        SubunitalMatrix(((1, 1), (0, 0)), dom, dom)  # 2 + 1 > 2 on row 1
    with pytest.raises(ValueError):
        SubunitalMatrix(((0, -1), (0, 0)), dom, dom)
    with pytest.raises(ValueError):
        SubunitalMatrix(((0, 0),), dom, dom)


def test_is_subunital_edges():
    assert not is_subunital(((2,),), (2,), (3,))
    assert is_subunital(((1,),), (2,), (2,))
    assert not is_subunital(((0, -1), (0, 0)), (1, 1))
    with pytest.raises(ValueError):
        is_subunital(((0,),), (1, 1))


@given(small_shapes, st.data())
def test_matrix_action_lands_in_the_codomain(u, data):
    ms = list(enumerate_subunital(u, u, cap=10**4))
    M = data.draw(st.sampled_from(ms))
    alg = make_simplicial(u)
    x = alg.element(data.draw(st.integers(0, alg.size - 1)))
    y = apply_matrix(M, x)
    assert all(0 <= c <= ui for c, ui in zip(y.coords, u))


@settings(max_examples=30)
@given(small_shapes, st.data())
def test_matrix_action_is_additive(u, data):
    ms = list(enumerate_subunital(u, u, cap=10**4))
    M = data.draw(st.sampled_from(ms))
    alg = make_simplicial(u)
    i = data.draw(st.integers(0, alg.size - 1))
    j = data.draw(st.integers(0, alg.size - 1))
    k = alg.oplus_index(i, j)
    if k is None:
        return
    left = apply_matrix(M, alg.element(k))
    right = tuple(a + b for a, b in zip(
        apply_matrix(M, alg.element(i)).coords,
        apply_matrix(M, alg.element(j)).coords,
    ))
    assert left.coords == right


def test_bruteforce_equals_matrix_route():
    """The raw function filter and the matrix action agree map for map."""
    for u in [(1,), (2,), (3,), (1, 1), (2, 1)]:
        alg = make_simplicial(u)
        brute = {tuple(x.index for x in images)
                 for images in additive_maps_bruteforce(alg, alg)}
        via_matrices = {
            tuple(apply_matrix(M, x).index for x in alg.elements())
            for M in enumerate_subunital(u, u)
        }
        assert brute == via_matrices
        assert len(brute) == count_subunital(u)


def test_bruteforce_across_different_shapes():
    dom, cod = make_simplicial((2,)), make_simplicial((1, 1))
    brute = {tuple(x.index for x in images)
             for images in additive_maps_bruteforce(dom, cod)}
    via = {tuple(apply_matrix(M, x).index for x in dom.elements())
           for M in enumerate_subunital((2,), (1, 1))}
    assert brute == via
    assert len(brute) == count_subunital((2,), (1, 1))


def test_bruteforce_cap():
    alg = make_simplicial((2, 2))
    with pytest.raises(CapExceeded):
        additive_maps_bruteforce(alg, alg, cap=100)


def test_matrix_of_map_round_trip():
    alg = make_simplicial((2, 1))
    for M in enumerate_subunital((2, 1)):
        images = [apply_matrix(M, x) for x in alg.elements()]
        back = matrix_of_map(alg, alg, images)
        assert isinstance(back, SubunitalMatrix)
        assert back.rows == M.rows


def test_matrix_of_map_refutes_with_a_replaying_witness():
    alg = make_simplicial((2,))
    # send 0,1,2 to 0,1,0: then t(1 (+) 1) = 0 but t(1) (+) t(1) = 2
    images = [alg.element(0), alg.element(1), alg.element(0)]
    got = matrix_of_map(alg, alg, images)
    assert isinstance(got, NotAdditive)
    x, y = got.witness
    k = alg.oplus_index(x.index, y.index)
    assert k is not None
    t = alg.oplus_index(images[x.index].index, images[y.index].index)
    assert t is None or t != images[k].index


def test_matrix_of_map_input_validation():
    alg = make_simplicial((1,))
    with pytest.raises(ValueError):
        matrix_of_map(alg, alg, [alg.element(0)])
    other = make_simplicial((1, 1))
    with pytest.raises(ValueError):
        matrix_of_map(alg, alg, [other.element(0), other.element(1)])


def test_homogeneous_maps_are_exactly_the_coordinate_pickers():
    for u in [(1, 1), (2, 2), (1, 1, 1), (3, 3)]:
        ms = list(enumerate_subunital(u))
        picks = [is_coordinate_picker(M) for M in ms]
        assert all(p is not None for p in picks)
        r = len(u)
        assert len(set(picks)) == len(ms) == (r + 1) ** r


def test_mixed_shapes_admit_non_picker_maps():
    ms = list(enumerate_subunital((2, 1)))
    non = [M.rows for M in ms if is_coordinate_picker(M) is None]
    assert non == [((0, 2), (0, 0)), ((0, 2), (0, 1))]


def test_coordinate_picker_demands_square():
    M = next(iter(enumerate_subunital((2,), (1, 1))))
    with pytest.raises(ValueError):
        is_coordinate_picker(M)


def test_matrix_json_round_trip():
    M = SubunitalMatrix(((0, 1), (1, 0)), Shape((1, 1)), Shape((1, 1)))
    assert matrix_from_json(M.to_json()).rows == M.rows
    with pytest.raises(ValueError):
        matrix_from_json({"rows": [[0]]})


def test_apply_checks_the_domain():
    M = SubunitalMatrix(((1,),), Shape((2,)), Shape((2,)))
    with pytest.raises(ValueError):
        M.apply(Elem((1, 0), Shape((1, 1))))
