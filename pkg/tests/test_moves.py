import numpy as np
import pytest

from colorfiber import (
    ColorAssignment,
    EdgeVector,
    Move,
    MoveSet,
    apply_move,
    design_matrix,
    enumerate_quadratic_moves,
    is_basis_move,
    minimal_norm_check,
)
from colorfiber.moves import canonical_sign
from oracles import kernel_scan_norm4, rgs_colorings

Z8 = ColorAssignment.from_sequence((1, 1, 2, 2, 1, 1, 2, 2))


def canonical_bytes(moveset):
    out = set()
    for mv in moveset:
        out.add(canonical_sign(mv.as_edge_vector()).entries.tobytes())
    return out


def test_move_count_frozen():
    assert len(enumerate_quadratic_moves(8, Z8)) == 138
    assert len(enumerate_quadratic_moves(4, ColorAssignment.from_sequence((1, 1, 1, 1)))) == 3
    assert len(enumerate_quadratic_moves(5, ColorAssignment.from_sequence((1, 1, 2, 2, 3)))) == 5


def test_single_admissible_exchange_on_two_color_square():
    # with colors (1,1,2,2) only the exchange pairing the two color-mixed
    # matchings survives the admissibility gates
    z = ColorAssignment.from_sequence((1, 1, 2, 2))
    ms = enumerate_quadratic_moves(4, z)
    assert len(ms) == 1
    assert ms[0].as_edge_vector().entries.tolist() == [0, 1, -1, -1, 1, 0]


def test_enumeration_matches_kernel_scan_small():
    # the full n <= 7 sweep lives in the acceptance tests; spot-check here
    for z in [
        (1, 1, 1, 1),
        (1, 1, 2, 2),
        (1, 2, 1, 2),
        (1, 1, 1, 2, 2),
        (1, 2, 3, 1, 2),
        (1, 1, 2, 2, 3, 3),
    ]:
        za = ColorAssignment.from_sequence(z)
        ours = canonical_bytes(enumerate_quadratic_moves(za.n, za))
        theirs = kernel_scan_norm4(za.n, z)
        assert ours == theirs, z


def test_every_move_is_a_norm4_kernel_vector():
    D = design_matrix(8, Z8)
    for mv in enumerate_quadratic_moves(8, Z8):
        vec = mv.as_edge_vector()
        assert vec.one_norm() == 4
        assert not D.apply(vec).any()
        assert is_basis_move(vec, Z8)


def test_enumeration_is_deterministic():
    a = enumerate_quadratic_moves(8, Z8)
    b = enumerate_quadratic_moves(8, Z8)
    assert [m.pairs for m in a] == [m.pairs for m in b]
    assert len(canonical_bytes(a)) == len(a)  # no duplicates up to sign


def test_move_round_trip_and_cycle():
    ms = enumerate_quadratic_moves(4, ColorAssignment.from_sequence((1, 1, 1, 1)))
    for mv in ms:
        assert Move.from_edge_vector(mv.as_edge_vector()).pairs == mv.pairs
        assert mv.one_norm() == 4
        a, b, c, d = mv.cycle()
        assert len({a, b, c, d}) == 4
        assert mv.negated().as_edge_vector() == -mv.as_edge_vector()


def test_is_basis_move_rejects_non_moves():
    z = ColorAssignment.from_sequence((1, 1, 1, 1))
    not_kernel = EdgeVector.from_edges(4, [(1, 2, 1), (3, 4, 1), (1, 3, -1), (1, 4, -1)])
    assert not is_basis_move(not_kernel, z)
    too_long = EdgeVector.from_edges(4, [(1, 2, 2), (3, 4, 2), (1, 3, -2), (2, 4, -2)])
    assert not is_basis_move(too_long, z)
    assert not is_basis_move(EdgeVector.zeros(4), z)
    # inadmissible for the finer coloring even though it is in the kernel
    # of the degree rows
    z2 = ColorAssignment.from_sequence((1, 1, 2, 2))
    crossing_vs_sides = EdgeVector.from_edges(
        4, [(1, 2, 1), (3, 4, 1), (1, 3, -1), (2, 4, -1)]
    )
    assert not is_basis_move(crossing_vs_sides, z2)


def test_apply_move_feasibility():
    z = ColorAssignment.from_sequence((1, 1, 1, 1))
    ms = enumerate_quadratic_moves(4, z)
    mv = ms[0]
    start = mv.as_edge_vector().negative_part()  # exactly the edges the move consumes
    stepped = apply_move(start, mv)
    assert stepped is not None
    assert stepped == start + mv.as_edge_vector()
    # reverse from a graph missing the needed edges
    assert apply_move(EdgeVector.zeros(4), mv) is None


def test_packed_and_dense_agree():
    ms = enumerate_quadratic_moves(8, Z8)
    dense = ms.dense()
    idx, val, ln = ms.packed()
    assert dense.shape == (len(ms), 28)
    rebuilt = np.zeros_like(dense)
    for r in range(len(ms)):
        for c in range(ln[r]):
            rebuilt[r, idx[r, c]] = val[r, c]
    assert np.array_equal(rebuilt, dense)
    assert np.abs(dense).sum(axis=1).max() == 4


def test_minimal_norm_check_frozen():
    assert minimal_norm_check(5, ColorAssignment.from_sequence((1, 1, 2, 2, 3))) == 4
    assert minimal_norm_check(4, ColorAssignment.from_sequence((1, 2, 3, 4))) is None
    assert minimal_norm_check(4, ColorAssignment.from_sequence((1, 1, 1, 1))) == 4


def test_minimal_norm_check_guard():
    from colorfiber import GuardExceeded

    with pytest.raises(GuardExceeded):
        minimal_norm_check(9, ColorAssignment.from_sequence((1,) * 9))


def test_moveset_build_dedups():
    z = ColorAssignment.from_sequence((1, 1, 1, 1))
    v = EdgeVector.from_edges(4, [(1, 2, 1), (3, 4, 1), (1, 3, -1), (2, 4, -1)])
    ms = MoveSet.build(z, [v, -v, v])
    assert len(ms) == 1


def test_rgs_coloring_counts():
    # restricted growth strings with at most 3 blocks: Stirling sums
    assert len(rgs_colorings(4, 3)) == 14
    assert len(rgs_colorings(7, 3)) == 365
