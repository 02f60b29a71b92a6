"""Formal Hodge tables: twists, effectivity, direct sums, serialization."""

import pytest

from fanhodge.mhs import MixedHSTable, PureHS, f_graded_dim, is_effective, tate_twist


def test_pure_hs_basic():
    h = PureHS(2, {(1, 1): 3, (2, 0): 1, (0, 2): 1})
    assert h.dim == 5
    assert h.h(1, 1) == 3 and h.h(5, -3) == 0
    with pytest.raises(ValueError):
        PureHS(2, {(1, 0): 1})
    with pytest.raises(ValueError):
        PureHS(2, {(1, 1): -1})


def test_zero_entries_are_dropped():
    assert PureHS(0, {(0, 0): 0}) == PureHS(0)
    assert PureHS(0, {(0, 0): 0}).is_zero()


def test_direct_sum():
    a = PureHS(2, {(1, 1): 1})
    b = PureHS(2, {(1, 1): 2, (2, 0): 1})
    assert (a + b).h(1, 1) == 3
    with pytest.raises(ValueError):
        a + PureHS(3)


def test_tate_twist():
    h = PureHS(1, {(1, 0): 1, (0, 1): 1})
    t = tate_twist(h, 2)
    assert t.weight == 5 and t.h(3, 2) == 1 and t.h(2, 3) == 1
    assert tate_twist(t, -2) == h


def test_effectivity():
    assert is_effective(PureHS(0, {(0, 0): 1}))
    assert not is_effective(tate_twist(PureHS(0, {(0, 0): 1}), -1))


def test_hodge_filtration_dims():
    h = PureHS(2, {(2, 0): 1, (1, 1): 3, (0, 2): 1})
    assert [f_graded_dim(h, p) for p in range(4)] == [5, 4, 1, 0]


def test_mixed_table():
    t = MixedHSTable(2, [PureHS(2, {(1, 1): 2}), PureHS(4, {(2, 2): 1})])
    assert t.graded_dim(2) == 2 and t.graded_dim(4) == 1 and t.graded_dim(3) == 0
    assert t.total_dim == 3
    assert t.weights_in_range(2)
    assert not MixedHSTable(1, [PureHS(3, {(2, 1): 1})]).weights_in_range(5)
    with pytest.raises(ValueError):
        MixedHSTable(2, [PureHS(2, {(1, 1): 1}), PureHS(2, {(2, 0): 1})])


def test_json_round_trip():
    h = PureHS(3, {(2, 1): 2, (1, 2): 2})
    assert PureHS.from_dict(h.to_dict()) == h
    t = MixedHSTable(3, [h, PureHS(4, {(2, 2): 5})])
    assert MixedHSTable.from_dict(t.to_dict()) == t
