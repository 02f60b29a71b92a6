"""Admissible-region rules, classical presets, rendering."""

import random

import pytest

from fanhodge.errors import InvalidParams
from fanhodge.stairs import (
    CorankData,
    admissible_region,
    parse_preset,
    preset_o2n,
    preset_sp,
    preset_u,
    render_region,
)

SIEGEL2_K3 = {(0, 3), (1, 2), (2, 1), (3, 0), (1, 3), (2, 2), (3, 1), (3, 3)}


def test_preset_values():
    sp2 = preset_sp(2)
    assert (sp2.n, sp2.n_seq, sp2.c) == (3, (1, 3), 2)
    assert sp2.tube_domain
    u23 = preset_u(2, 3)
    assert (u23.n, u23.n_seq, u23.c) == (6, (1, 4), 4)
    assert not u23.tube_domain
    o25 = preset_o2n(5)
    assert (o25.n, o25.n_seq, o25.c) == (5, (1, 5), 4)


def test_preset_parsing_and_validation():
    assert parse_preset("sp:3").n == 6
    assert parse_preset("custom:5;2,5;3").n_seq == (2, 5)
    for bad in ("sp:1", "o2n:2", "u:3,2", "xx:1", "custom:5;5,2;3", "sp:zz"):
        with pytest.raises(InvalidParams):
            parse_preset(bad)
    with pytest.raises(InvalidParams):
        CorankData(n=2, n_seq=(1, 3), c=1)


def test_siegel_genus2_top_degree_region():
    rg = admissible_region(preset_sp(2), 3)
    assert rg.admissible == frozenset(SIEGEL2_K3)
    # weight 2n-1 row (m=2) is empty
    assert not [pq for pq in rg.admissible if sum(pq) == 5]


def test_pure_row_below_boundary_codimension():
    for cd in (preset_sp(2), preset_sp(3), preset_o2n(4), preset_u(2, 2)):
        for k in range(0, cd.c):
            rg = admissible_region(cd, k)
            expected = {
                (p, k - p)
                for p in range(0, min(k, cd.n) + 1)
                if 0 <= k - p <= min(k, cd.n)
            }
            assert rg.admissible == frozenset(expected)


def test_roof_pairs_absent_below_top_degree():
    for cd in (preset_sp(2), preset_sp(3), preset_o2n(5), preset_u(2, 3)):
        for k in range(cd.c, cd.n):
            rg = admissible_region(cd, k)
            for p, q in rg.admissible:
                if p + q > k:
                    assert p != k and q != k


def test_o2n_odd_weight_rows_vanish_above_first_step():
    for n in (3, 4, 5, 6):
        cd = preset_o2n(n)
        rg = admissible_region(cd, n)
        for p, q in rg.admissible:
            m = p + q - n
            if m > 1:
                assert (p + q) % 2 == 0  # |p-q| <= 0 forces p = q


def test_vacuum_above_top_corank():
    cd = CorankData(n=4, n_seq=(1, 2), c=2)  # non-tube: n(r) = 2 < 4
    rg = admissible_region(cd, 4)
    assert not [pq for pq in rg.admissible if sum(pq) - 4 > 2]


def test_tube_domain_top_corner_admissible():
    for cd in (preset_sp(2), preset_sp(3), preset_o2n(4)):
        assert cd.tube_domain
        rg = admissible_region(cd, cd.n)
        assert (cd.n, cd.n) in rg.admissible


def test_symmetry_in_p_q():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(1, 6)
        seq = sorted(rng.sample(range(1, n + 1), rng.randint(1, min(3, n))))
        cd = CorankData(n=n, n_seq=tuple(seq), c=rng.randint(1, n))
        for k in range(0, n + 2):
            rg = admissible_region(cd, k)
            assert {(q, p) for p, q in rg.admissible} == set(rg.admissible)


def test_monotone_in_covering_values():
    # raising every covering value min{n(i) >= m} shrinks (or keeps) the region
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(2, 6)
        small = sorted(rng.sample(range(1, n + 1), rng.randint(1, min(3, n))))
        # bump non-final values only: a larger n(r) would shrink the vacuum
        # zone m > n(r) and could legitimately grow the region
        larger = sorted(
            {min(v + rng.randint(0, small[-1] - v), small[-1]) for v in small}
        )
        a = CorankData(n=n, n_seq=tuple(small), c=2)
        b = CorankData(n=n, n_seq=tuple(larger), c=2)

        def covering(cd, m):
            i = cd.covering_corank(m)
            return None if i is None else cd.n_of(i)

        dominated = all(
            covering(a, m) is None
            or (covering(b, m) is not None and covering(b, m) >= covering(a, m))
            for m in range(1, n + 1)
        )
        if not dominated:
            continue
        for k in range(0, n + 2):
            assert admissible_region(b, k).admissible <= admissible_region(
                a, k
            ).admissible


def test_shift_relation_between_degrees():
    # region at k < n = (k-n)-shift of the k=n region, cut to the k-triangle,
    # minus the roof
    for cd in (preset_sp(2), preset_o2n(4), preset_u(2, 2)):
        top = admissible_region(cd, cd.n).admissible
        for k in range(cd.c, cd.n):
            shift = k - cd.n
            expected = set()
            for p, q in top:
                pp, qq = p + shift, q + shift
                if pp + qq < k or pp < 0 or qq < 0:
                    continue
                if max(pp, qq) > min(k, cd.n):
                    continue
                if pp + qq > k and (pp == k or qq == k):
                    continue
                expected.add((pp, qq))
            got = {pq for pq in admissible_region(cd, k).admissible if sum(pq) > k}
            assert got == {pq for pq in expected if sum(pq) > k}


def test_rule_trace_records_every_rule():
    rg = admissible_region(preset_sp(2), 3)
    t = rg.trace(3, 3)
    assert t["triangle"] and t["pure-bb"] and t["top-corank"]
    assert t["stairs-n(2)"]
    t2 = rg.trace(2, 3)
    assert not all(t2.values())


def test_render_ascii_deterministic():
    rg = admissible_region(preset_sp(2), 3)
    a = render_region(rg, "ascii")
    assert a == render_region(rg, "ascii")
    assert a.count("*") == len(SIEGEL2_K3)


def test_render_svg():
    rg = admissible_region(preset_sp(2), 3)
    svg = render_region(rg, "svg")
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count("<rect") == len(SIEGEL2_K3)
    with pytest.raises(ValueError):
        render_region(rg, "png")


def test_region_json():
    rg = admissible_region(preset_sp(2), 1)
    d = rg.to_dict()
    assert d["k"] == 1 and d["admissible"] == [[0, 1], [1, 0]]
    assert "0,1" in d["trace"]
