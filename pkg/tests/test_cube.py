import pytest

from indcube import cube
from indcube.cube import (
    ENUM_BUDGET,
    Family,
    enumerate_all,
    enumerate_layer,
    in_degree,
    is_antichain,
    is_independent,
    layer_counts,
    lower_shadow,
    out_degree,
    outdegree_histogram,
    render_set,
    set_to_vertices,
    upper_shadow,
    vertices_to_set,
)
from indcube.graphs import ResourceBudgetError, cycle, edgeless, erdos_renyi, path

from conftest import brute_all_sets, brute_layer_sets, brute_outdeg


def vs(*vertices) -> int:
    return vertices_to_set(vertices)


def test_mask_helpers():
    assert vs(1, 3, 5) == 0b10101
    assert set_to_vertices(0b10101) == (1, 3, 5)
    assert set_to_vertices(0) == ()
    assert render_set(0) == "{}"
    assert render_set(vs(2, 7)) == "{2,7}"


def test_is_independent():
    p5 = path(5)
    assert is_independent(p5, vs(1, 3, 5))
    assert not is_independent(p5, vs(2, 3))
    assert not is_independent(cycle(5), vs(1, 5))  # wrap-around edge
    assert is_independent(p5, 0)


def test_enumerate_layer_golden():
    fam = enumerate_layer(path(4), 2)
    assert list(fam) == [vs(1, 3), vs(1, 4), vs(2, 4)]  # lex by bit-vector
    assert len(enumerate_layer(path(11), 3)) == 84
    assert list(enumerate_layer(cycle(6), 0)) == [0]


def test_enumerate_layer_vs_brute():
    for g in (path(7), cycle(7), edgeless(5), erdos_renyi(8, 0.35, 11)):
        for r in range(g.n + 1):
            got = [set_to_vertices(m) for m in enumerate_layer(g, r)]
            assert sorted(got) == brute_layer_sets(g, r)


def test_enumerate_all_counts():
    assert len(list(enumerate_all(path(1)))) == 2
    assert len(list(enumerate_all(path(2)))) == 3
    assert len(list(enumerate_all(path(10)))) == 144
    g = erdos_renyi(9, 0.3, 5)
    assert sorted(set_to_vertices(m) for m in enumerate_all(g)) == sorted(
        brute_all_sets(g)
    )
    # no duplicates
    all_p8 = list(enumerate_all(path(8)))
    assert len(all_p8) == len(set(all_p8))


def test_layer_counts_consistency():
    for g in (path(9), cycle(8), edgeless(6)):
        counts = layer_counts(g)
        assert counts == [len(enumerate_layer(g, r)) for r in range(g.n + 1)]
        assert sum(counts) == len(list(enumerate_all(g)))


def test_enumeration_budget():
    # edgeless(23) has 2^23 > ENUM_BUDGET independent sets
    assert ENUM_BUDGET < 2**23
    with pytest.raises(ResourceBudgetError):
        for _ in enumerate_all(edgeless(23)):
            pass


def test_degrees():
    p5 = path(5)
    assert in_degree(p5, vs(1, 3)) == 2
    assert in_degree(p5, 0) == 0
    assert out_degree(p5, vs(1)) == 3  # can add 3, 4 or 5
    assert out_degree(p5, 0) == 5

    # blocks of 010 then zeros: out-degree n - 3r
    n = 13
    pn = path(n)
    for r in (1, 2, 3, 4):
        a = vertices_to_set([3 * i + 2 for i in range(r)])
        assert out_degree(pn, a) == n - 3 * r
    # blocks of 10 then zeros: out-degree n - 2r
    for r in (1, 2, 3, 4):
        a = vertices_to_set([2 * i + 1 for i in range(r)])
        assert out_degree(pn, a) == n - 2 * r


def test_out_degree_vs_brute():
    g = erdos_renyi(9, 0.25, 3)
    for m in enumerate_all(g):
        assert out_degree(g, m) == brute_outdeg(g, set_to_vertices(m))


def test_outdegree_histogram():
    assert outdegree_histogram(path(5), 1) == {2: 3, 3: 2}
    for n in (4, 7, 9):
        assert outdegree_histogram(path(n), 0) == {n: 1}
    # histogram totals partition the layer
    g = cycle(9)
    for r in range(4):
        hist = outdegree_histogram(g, r)
        assert sum(hist.values()) == len(enumerate_layer(g, r))
    # P_n support is [n-3r, n-2r] for r >= 1
    for r in (1, 2, 3):
        hist = outdegree_histogram(path(12), r)
        assert min(hist) >= 12 - 3 * r
        assert max(hist) <= 12 - 2 * r


def test_shadows():
    p4 = path(4)
    fam = Family(p4, (vs(1, 3),))
    assert list(lower_shadow(p4, fam)) == [vs(1), vs(3)]

    p5 = path(5)
    up = upper_shadow(p5, Family(p5, (vs(1),)))
    assert sorted(up) == sorted([vs(1, 3), vs(1, 4), vs(1, 5)])

    assert len(lower_shadow(p4, Family(p4, (0,)))) == 0
    assert list(upper_shadow(p4, Family(p4, ()))) == []


def test_shadow_dedup_and_monotone():
    g = path(8)
    layer3 = list(enumerate_layer(g, 3))
    small = Family(g, tuple(layer3[:4]))
    large = Family(g, tuple(layer3[:9]))
    lo_small = set(lower_shadow(g, small))
    lo_large = set(lower_shadow(g, large))
    assert lo_small <= lo_large
    assert set(upper_shadow(g, small)) <= set(upper_shadow(g, large))
    # every shadow member really is one step away from some input member
    for b in lo_small:
        assert any(b & ~a == 0 and (a ^ b).bit_count() == 1 for a in small)


def test_shadow_counting_bound():
    # |lower shadow| >= r|F| / max out-degree over the shadow: each member
    # of F sends r down-edges, each shadow element receives at most its
    # out-degree many.
    import random

    rng = random.Random(99)
    g = path(9)
    layer = list(enumerate_layer(g, 3))
    for _ in range(25):
        fam = Family(g, tuple(rng.sample(layer, rng.randint(1, len(layer)))))
        shadow = lower_shadow(g, fam)
        dmax = max(out_degree(g, b) for b in shadow)
        assert len(shadow) * dmax >= 3 * len(fam)


def test_is_antichain():
    g = path(6)
    assert is_antichain(enumerate_layer(g, 2))
    assert not is_antichain(Family(g, (vs(1), vs(1, 3))))
    assert is_antichain(Family(g, ()))
    assert is_antichain(Family(g, (0,)))


def test_family_validation():
    g = path(4)
    with pytest.raises(ValueError):
        Family(g, (vs(1), vs(1)))  # duplicate
    with pytest.raises(ValueError):
        Family(g, (vs(1, 2),))  # dependent set
    # families are bound to their graph; operations reject a mismatch
    fam = Family(g, (vs(1),))
    with pytest.raises(ValueError):
        lower_shadow(edgeless(4), fam)
    with pytest.raises(ValueError):
        cube.upper_shadow(path(5), fam)
