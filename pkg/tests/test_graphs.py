import numpy as np
import pytest
from hypothesis import given, strategies as st

from colorfiber import (
    CDegSequence,
    ColorAssignment,
    EdgeVector,
    all_pairs,
    cdeg,
    cell_count,
    cell_index,
    design_matrix,
    index_cell,
    index_pair,
    is_monomial_walk,
    pair_count,
    pair_index,
    pos_neg_colors,
    pos_neg_degrees,
    walk_from_brackets,
)

Z5 = ColorAssignment.from_sequence((1, 1, 2, 2, 3))

# five-vertex, three-color design matrix, written out by hand
D5_EXPECTED = np.array(
    [
        # degree rows, vertices 1..5; columns in pair order
        # (1,2) (1,3) (1,4) (1,5) (2,3) (2,4) (2,5) (3,4) (3,5) (4,5)
        [1, 1, 1, 1, 0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 1, 1, 1, 0, 0, 0],
        [0, 1, 0, 0, 1, 0, 0, 1, 1, 0],
        [0, 0, 1, 0, 0, 1, 0, 1, 0, 1],
        [0, 0, 0, 1, 0, 0, 1, 0, 1, 1],
        # cell rows, color pairs (1,1),(1,2),(1,3),(2,2),(2,3),(3,3)
        [1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 1, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    ],
    dtype=np.int64,
)


def test_pair_index_round_trip():
    for n in range(2, 15):
        assert pair_count(n) == n * (n - 1) // 2
        seen = set()
        for u, v in all_pairs(n):
            t = pair_index(u, v, n)
            assert index_pair(t, n) == (u, v)
            seen.add(t)
        assert seen == set(range(pair_count(n)))


def test_pair_index_order_is_lexicographic():
    assert pair_index(1, 2, 5) == 0
    assert pair_index(1, 5, 5) == 3
    assert pair_index(2, 3, 5) == 4
    assert pair_index(4, 5, 5) == 9


def test_cell_index_round_trip():
    for k in range(1, 10):
        assert cell_count(k) == k * (k + 1) // 2
        for idx in range(cell_count(k)):
            i, j = index_cell(idx, k)
            assert 1 <= i <= j <= k
            assert cell_index(i, j, k) == idx


def test_pair_index_rejects_bad_input():
    with pytest.raises(ValueError):
        pair_index(3, 3, 5)
    with pytest.raises(ValueError):
        pair_index(0, 2, 5)
    with pytest.raises(ValueError):
        pair_index(2, 6, 5)


def test_color_assignment_basics():
    assert Z5.n == 5
    assert Z5.k == 3
    assert Z5.color_of(1) == 1 and Z5.color_of(5) == 3
    assert Z5.class_of(2) == (3, 4)
    assert Z5.is_sorted()
    assert not ColorAssignment.from_sequence((1, 2, 1)).is_sorted()
    assert Z5.cell_of_pair(1, 2) == cell_index(1, 1, 3)
    assert Z5.cell_of_pair(2, 5) == cell_index(1, 3, 3)
    # explicit k can exceed the colors in use
    z = ColorAssignment.from_sequence((1, 1), k=4)
    assert z.k == 4
    with pytest.raises(ValueError):
        ColorAssignment.from_sequence((0, 1))
    with pytest.raises(ValueError):
        ColorAssignment.from_sequence((1, 3), k=2)


def test_edge_vector_construction_and_algebra():
    a = EdgeVector.from_edges(4, [(1, 2, 2), (3, 4, 1)])
    b = EdgeVector.from_edges(4, [(1, 2, 1), (2, 3, 1)])
    assert a.entry(1, 2) == 2
    assert a.entry(1, 3) == 0
    assert (a + b).entry(1, 2) == 3
    assert (a - b).entry(2, 3) == -1
    assert (-a).entry(3, 4) == -1
    assert a.one_norm() == 3
    assert a.total() == 3
    assert a.is_multigraph() and not a.is_simple()
    assert b.is_simple()
    d = a - b
    assert d.positive_part() - d.negative_part() == d
    assert d.positive_part().is_multigraph()
    assert d.support() == ((1, 2), (2, 3), (3, 4))
    assert list(d.edges()) == [(1, 2, 1), (2, 3, -1), (3, 4, 1)]
    assert EdgeVector.zeros(4).is_zero()
    assert hash(a) == hash(EdgeVector.from_edges(4, [(3, 4, 1), (1, 2, 2)]))
    assert a != b
    with pytest.raises(ValueError):
        a + EdgeVector.zeros(5)


def test_edge_vector_entries_read_only():
    a = EdgeVector.from_edges(3, [(1, 2, 1)])
    with pytest.raises(ValueError):
        a.entries[0] = 7


def test_cdeg_sequence_validation():
    with pytest.raises(ValueError):
        CDegSequence(degrees=(1, 1), cells=(3,), k=1)  # degree sum != 2 * cells
    with pytest.raises(ValueError):
        CDegSequence(degrees=(2, 2), cells=(1, 1), k=1)  # wrong cell length
    lab = CDegSequence(degrees=(2, 2), cells=(2,), k=1)
    assert lab.n == 2 and lab.total_edges == 2


def test_cdeg_of_handbuilt_multigraph():
    g = EdgeVector.from_edges(
        5, [(1, 2, 1), (1, 3, 2), (1, 5, 1), (2, 4, 1), (2, 5, 2), (3, 5, 1), (4, 5, 3)]
    )
    lab = cdeg(g, Z5)
    assert lab.degrees == (4, 4, 3, 4, 7)
    assert lab.cells == (1, 3, 3, 0, 4, 0)
    assert lab.total_edges == 11
    assert lab.consistent_with(Z5)


def test_design_matrix_frozen():
    D = design_matrix(5, Z5)
    assert D.matrix.shape == (11, 10)
    assert np.array_equal(D.matrix, D5_EXPECTED)
    assert np.array_equal(D.degree_rows, D5_EXPECTED[:5])
    assert np.array_equal(D.cell_rows, D5_EXPECTED[5:])


def test_design_matrix_apply_matches_cdeg():
    g = EdgeVector.from_edges(5, [(1, 2, 1), (2, 5, 2), (4, 5, 1)])
    img = design_matrix(5, Z5).apply(g)
    lab = cdeg(g, Z5)
    assert img.tolist() == list(lab.degrees) + list(lab.cells)


def test_walk_from_brackets_frozen():
    w = walk_from_brackets([1, 5, 2, 4, 5, 3, 2, 4], 5)
    assert w.entries.tolist() == [0, 0, -1, 1, -1, 2, -1, 0, 1, -1]
    assert is_monomial_walk(w, Z5)
    assert not is_monomial_walk(EdgeVector.from_edges(5, [(1, 2, 1)]), Z5)


def test_walk_from_brackets_needs_even_length():
    with pytest.raises(ValueError):
        walk_from_brackets([1, 2, 3], 4)


@st.composite
def vector_and_coloring(draw):
    n = draw(st.integers(min_value=2, max_value=8))
    k = draw(st.integers(min_value=1, max_value=min(n, 4)))
    colors = [draw(st.integers(min_value=1, max_value=k)) for _ in range(n)]
    colors[draw(st.integers(min_value=0, max_value=n - 1))] = k  # keep k occupied
    entries = [
        draw(st.integers(min_value=-3, max_value=3)) for _ in range(pair_count(n))
    ]
    return EdgeVector(n, entries), ColorAssignment.from_sequence(colors, k=k)


@given(vector_and_coloring())
def test_design_matrix_image_is_signed_cdeg(data):
    gamma, z = data
    img = design_matrix(z.n, z).apply(gamma)
    dpos, dneg = pos_neg_degrees(gamma)
    cpos, cneg = pos_neg_colors(gamma, z)
    assert np.array_equal(img[: z.n], dpos - dneg)
    assert np.array_equal(img[z.n :], cpos - cneg)
    # walks are exactly the kernel
    assert is_monomial_walk(gamma, z) == (not img.any())


@given(vector_and_coloring())
def test_positive_negative_split(data):
    gamma, _ = data
    plus, minus = gamma.positive_part(), gamma.negative_part()
    assert plus - minus == gamma
    assert plus.one_norm() + minus.one_norm() == gamma.one_norm()
    assert not (np.minimum(plus.entries, minus.entries)).any()
