import numpy as np
import pytest

from kmn_ebi import (
    STAR,
    EdgeLabeling,
    InvalidParams,
    LabelingError,
    PartialLabeling,
    SwitchError,
    SwitchOp,
    VertexLabel,
    apply_switch,
    build_f,
    build_f_prime,
    derive_partition,
    ebi_index,
    induce_labels,
    is_edge_friendly,
)


@pytest.mark.parametrize("m, n, q, r", [(7, 4, 2, 1), (5, 4, 1, 2), (9, 2, 4, 1), (9, 4, 3, 0), (7, 6, 1, 3)])
def test_derive_partition(m, n, q, r):
    p = derive_partition(m, n)
    assert (p.q, p.r) == (q, r)
    assert m == p.q * (n // 2 + 1) + p.r


@pytest.mark.parametrize("m, n, fragment", [
    (6, 4, "m must be odd"),
    (7, 3, "n must be even"),
    (5, 6, "m must exceed n"),
    (5, 0, "n must be at least 2"),
    (1, 2, "m must be at least 3"),
])
def test_derive_partition_rejects(m, n, fragment):
    with pytest.raises(InvalidParams, match=fragment):
        derive_partition(m, n)


def test_partition_facts_hold_for_all_small_pairs():
    for m in range(3, 102, 2):
        for n in range(2, m, 2):
            p = derive_partition(m, n)
            assert 0 <= p.r <= n // 2
            if n == 2:
                assert (p.q, p.r) == ((m - 1) // 2, 1)
            elif p.q == 1:
                assert (m, p.r) == (n + 1, n // 2)


def test_flat_layout_is_a_bijection():
    p = derive_partition(13, 8)
    ids = list(p.a_vertices())
    assert [v.index for v in ids] == list(range(p.m))
    assert all(p.a_from_index(v.index) == v for v in ids)
    assert str(p.a(STAR, 3)) == "v_3^*"
    assert p.a(STAR, 1).index == 10


def test_star_block_absent_when_r_zero():
    p = derive_partition(9, 4)
    with pytest.raises(IndexError):
        p.a(STAR, 1)


def test_half_split_rows_on_k54():
    p = derive_partition(5, 4)
    lab = EdgeLabeling(p, [[1, 1, 0, 0]] * 5)
    s = induce_labels(lab)
    assert s.vA_unlabeled == 5
    assert s.deg1_b == (5, 5, 0, 0)
    assert s.labels_b == (VertexLabel.ONE, VertexLabel.ONE, VertexLabel.ZERO, VertexLabel.ZERO)
    assert s.index == 0


def test_checkerboard_k32():
    lab = EdgeLabeling(derive_partition(3, 2), [[1, 0], [0, 1], [1, 0]])
    s = induce_labels(lab)
    assert s.deg1_b == (2, 1)
    assert ebi_index(lab) == 0


def test_summary_of_constructions():
    s = induce_labels(build_f(derive_partition(5, 4)))
    assert (s.vB1, s.vB0, s.index) == (2, 2, 0)
    s = induce_labels(build_f_prime(derive_partition(5, 4)))
    assert (s.vB1, s.vB0, s.index) == (3, 1, 2)
    assert ebi_index(build_f(derive_partition(7, 6))) == 0
    assert ebi_index(build_f_prime(derive_partition(7, 6))) == 4


def test_is_edge_friendly():
    assert not is_edge_friendly(np.ones((3, 2)))
    half = np.zeros((5, 4))
    half.flat[:10] = 1
    assert is_edge_friendly(half)
    half.flat[10] = 1
    assert not is_edge_friendly(half)


def test_unfriendly_labeling_rejected():
    with pytest.raises(LabelingError):
        EdgeLabeling(derive_partition(3, 2), np.ones((3, 2), dtype=int))
    with pytest.raises(LabelingError):
        EdgeLabeling(derive_partition(3, 2), [[1, 0], [0, 1]])


def test_labeling_is_read_only():
    lab = build_f(derive_partition(5, 4))
    with pytest.raises(ValueError):
        lab.cells[0, 0] = 0


def test_row_masks():
    lab = build_f(derive_partition(5, 4))
    assert lab.row_masks() == [0b0011, 0b1100, 0b1100, 0b0011, 0b1100]


def test_switch_on_f54():
    p = derive_partition(5, 4)
    lab = build_f(p)
    op = SwitchOp(p.u(1), p.a(1, 1), p.a(1, 2))
    out = apply_switch(lab, op)
    s = induce_labels(out)
    assert s.label_of(p.a(1, 1)) is VertexLabel.ZERO
    assert s.label_of(p.a(1, 2)) is VertexLabel.ONE
    assert s.index == 0
    assert (out.e1, out.e0) == (lab.e1, lab.e0)
    assert induce_labels(lab).label_of(p.a(1, 1)) is VertexLabel.UNLABELED  # original untouched
    with pytest.raises(SwitchError):
        apply_switch(out, op)
    assert apply_switch(out, op.reversed()) == lab


def test_switch_op_validation():
    p = derive_partition(5, 4)
    with pytest.raises(SwitchError):
        SwitchOp(p.u(1), p.a(1, 1), p.a(1, 1))
    with pytest.raises(SwitchError):
        SwitchOp(p.a(1, 2), p.a(1, 1), p.a(1, 3))


def test_partial_labeling_finalize_requires_all_rows():
    p = derive_partition(3, 2)
    part = PartialLabeling(p)
    part.set_row(p.a(1, 1), [1])
    with pytest.raises(LabelingError, match="unset rows"):
        part.finalize()
    part.set_row(p.a(1, 2), [2])
    part.set_row(p.a(STAR, 1), [1])
    assert part.finalize().row_strings() == ["10", "01", "10"]
