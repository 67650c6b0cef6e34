import pytest

from kmn_ebi import IndexSet, derive_partition, max_index, range_overlap_check, theorem_ebi


@pytest.mark.parametrize("m, n, top", [(9, 2, 0), (3, 2, 0), (7, 4, 4), (9, 4, 5), (5, 4, 3),
                                       (7, 6, 7), (11, 4, 5)])
def test_theorem_values(m, n, top):
    p = derive_partition(m, n)
    assert max_index(p) == top
    assert theorem_ebi(p) == IndexSet.upto(top)


def test_theorem_is_contiguous_and_reaches_n_minus_2():
    for m in range(5, 202, 2):
        for n in range(4, m, 2):
            p = derive_partition(m, n)
            assert theorem_ebi(p).is_contiguous_from_zero()
            assert max_index(p) >= n - 2


@pytest.mark.parametrize("m, n, low, case", [
    (5, 4, 1, "r>=2, m=n+1"),
    (7, 4, 2, "r=1"),
    (9, 6, 4, "r=1"),
    (9, 4, 3, "r=0"),
    (11, 4, 3, "r>=2, m>=n+5"),
])
def test_range_overlap_examples(m, n, low, case):
    rep = range_overlap_check(derive_partition(m, n))
    assert rep.ok and rep.low_max == low and rep.case == case
    assert rep.threshold == n - 3


def test_range_overlap_rejects_n2():
    with pytest.raises(ValueError):
        range_overlap_check(derive_partition(5, 2))


def test_range_overlap_case_m_n_plus_3_never_has_r_ge_2():
    # m = n + 3 always leaves remainder 1, so that branch stays unreachable
    for n in range(4, 200, 2):
        assert derive_partition(n + 3, n).r == 1


def test_index_set_helpers():
    s = IndexSet([3, 1, 0, 2])
    assert s.is_contiguous_from_zero() and s.max == 3 and str(s) == "{0..3}"
    assert s == {0, 1, 2, 3}
    assert (IndexSet([0, 1]) | IndexSet([4])).to_list() == [0, 1, 4]
    assert not IndexSet([0, 2]).is_contiguous_from_zero()
    assert str(IndexSet([0, 2, 4])) == "{0,2,4}"
    with pytest.raises(ValueError):
        IndexSet([-1])
