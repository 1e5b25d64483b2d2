from math import exp, isclose, log, sqrt

import pytest

from indcube import formulas as F
from indcube.cube import enumerate_all, enumerate_layer, outdegree_histogram
from indcube.graphs import path

GOLDEN = (5 - sqrt(5)) / 10  # argmax of the layer-size exponent


def test_fibonacci():
    assert [F.fibonacci(k) for k in range(10)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]
    assert F.fibonacci(12) == 144
    assert F.fibonacci(3) == 2
    assert F.fibonacci(300) == F.fibonacci(299) + F.fibonacci(298)
    with pytest.raises(ValueError):
        F.fibonacci(-1)


def test_cube_size():
    assert F.cube_size_pn(1) == 2
    assert F.cube_size_pn(2) == 3
    assert F.cube_size_pn(11) == 233
    for n in range(1, 16):
        assert F.cube_size_pn(n) == len(list(enumerate_all(path(n))))


def test_layer_size():
    assert F.layer_size_pn(11, 3) == 84
    assert F.layer_size_pn(11, 4) == 70
    assert F.layer_size_pn(11, 3) + F.layer_size_pn(11, 4) == 154
    assert F.layer_size_pn(4, 2) == 3
    # out-of-support arguments give 0, not errors
    assert F.layer_size_pn(5, -1) == 0
    assert F.layer_size_pn(5, 4) == 0
    for n in range(1, 13):
        for r in range(n + 1):
            assert F.layer_size_pn(n, r) == len(enumerate_layer(path(n), r))


def test_r_star():
    assert F.r_star(11).values == (3,)
    assert F.r_star(1).values == (0, 1)
    assert len(F.r_star(500).values) == 1
    assert abs(F.r_star(500).values[0] - 138) <= 2

    for n in list(range(1, 120)) + [350, 777]:
        sizes = [F.layer_size_pn(n, r) for r in range(n + 1)]
        peak = max(sizes)
        argmax = tuple(r for r, q in enumerate(sizes) if q == peak)
        ms = F.r_star(n)
        assert ms.values == argmax, n
        assert ms.peak == peak
        # neighbours outside the maximizer set are strictly smaller
        lo, hi = argmax[0] - 1, argmax[-1] + 1
        if lo >= 0:
            assert sizes[lo] < peak
        if hi <= n:
            assert sizes[hi] < peak


def test_r_star_tracks_golden_fraction():
    for n in (100, 400, 1000):
        r = F.r_star(n).values[0]
        assert abs(r - GOLDEN * n) < 3


def test_outdeg_count():
    assert F.outdeg_count_pn(5, 1, 2) == 3
    assert F.outdeg_count_pn(5, 1, 3) == 2
    assert F.outdeg_count_pn(9, 2, 20) == 0
    assert F.outdeg_count_pn(9, 2, -1) == 0
    for n in range(1, 13):
        for r in range(n + 1):
            hist = outdegree_histogram(path(n), r)
            for d in range(-1, n + 2):
                assert F.outdeg_count_pn(n, r, d) == hist.get(d, 0), (n, r, d)


def test_outdeg_partition_identity():
    # the d-window [n-3r, n-2r] clips at 0 for the very top layer (odd n,
    # r = (n+1)/2, where the lone maximal set has out-degree 0)
    for n in range(1, 21):
        for r in range(n + 1):
            total = sum(
                F.outdeg_count_pn(n, r, d)
                for d in range(max(0, n - 3 * r), max(0, n - 2 * r) + 1)
            )
            assert total == F.layer_size_pn(n, r)


def test_d_star():
    assert F.d_star(5, 1).values == (2,)
    with pytest.raises(ValueError):
        F.d_star(10, 0)
    with pytest.raises(ValueError):
        F.d_star(10, 6)  # empty layer

    for n in (20, 55, 200):
        for r in range(1, (n + 1) // 2 + 1):
            if F.layer_size_pn(n, r) == 0:
                continue
            counts = {
                d: F.outdeg_count_pn(n, r, d)
                for d in range(max(0, n - 3 * r), max(0, n - 2 * r) + 1)
            }
            peak = max(counts.values())
            argmax = tuple(sorted(d for d, q in counts.items() if q == peak))
            ms = F.d_star(n, r)
            assert ms.values == argmax, (n, r)
            assert ms.peak == peak
            assert len(argmax) in (1, 2)


def test_outdeg_unimodality():
    for n, r in ((30, 8), (47, 11), (101, 25)):
        lo, hi = F.d_star(n, r).values[0], F.d_star(n, r).values[-1]
        prev = 0
        for d in range(n - 3 * r, lo + 1):
            cur = F.outdeg_count_pn(n, r, d)
            assert cur > prev or d == lo
            prev = cur
        prev = F.outdeg_count_pn(n, r, hi)
        for d in range(hi + 1, n - 2 * r + 1):
            cur = F.outdeg_count_pn(n, r, d)
            assert cur < prev
            prev = cur


def test_d_star_expansion():
    n = 10**4
    # leading term at c=0
    assert isclose(F.d_star_expansion(n, 0.0), GOLDEN * n, rel_tol=1e-2)
    # slack against the exact maximizer (calibrated allowance: 50)
    rs = F.r_star(n).values[0]
    ds = F.d_star(n, rs)
    mid = sum(ds.values) / len(ds.values)
    assert abs(F.d_star_expansion(n, 0.0) - mid) <= 50
    # the sqrt(n) coefficient is negative: larger c pushes the value down
    assert F.d_star_expansion(n, 1.0) < F.d_star_expansion(n, 0.0)


def test_entropy_F():
    pt = F.entropy_F(GOLDEN)
    assert abs(pt.d1) < 1e-12
    assert isclose(pt.d2, -5 * sqrt(5), rel_tol=1e-12)
    # numeric derivative agreement away from the peak
    h = 1e-6
    for x in (0.1, 0.2, 0.35):
        num = (F.entropy_F(x + h).value - F.entropy_F(x - h).value) / (2 * h)
        assert isclose(num, F.entropy_F(x).d1, rel_tol=1e-4)
    for bad in (0.0, 0.5, -0.2, 0.7):
        with pytest.raises(ValueError):
            F.entropy_F(bad)


def test_entropy_G():
    for a in (0.2, 0.25, 0.3):
        beta = a * a / (1 - a)
        pt = F.entropy_G(a, beta)
        assert abs(pt.d1) < 1e-12
        want = -((1 - a) ** 3) / (a * a * (1 - 2 * a) ** 2)
        assert isclose(pt.d2, want, rel_tol=1e-10)
    with pytest.raises(ValueError):
        F.entropy_G(0.3, 0.3)  # needs y < x
    with pytest.raises(ValueError):
        F.entropy_G(0.4, 0.05)  # x < (1+y)/3 violated


def test_layer_size_stirling():
    for n, a in ((200, 0.3), (500, 0.25), (1000, 0.25)):
        exact = F.layer_size_pn(n, round(a * n))
        rel = abs(F.layer_size_stirling(n, a) - exact) / exact
        assert rel <= 10 / n  # frozen calibration constant
    # O(1/n): error roughly halves from n=500 to n=1000 at fixed alpha
    e500 = abs(F.layer_size_stirling(500, 0.25) - F.layer_size_pn(500, 125)) / F.layer_size_pn(500, 125)
    e1000 = abs(F.layer_size_stirling(1000, 0.25) - F.layer_size_pn(1000, 250)) / F.layer_size_pn(1000, 250)
    assert abs(e500 / e1000 - 2) < 0.5
    # the exponent peaks at the golden ratio point
    vals = {a: F.entropy_F(a).value for a in (0.2, 0.25, GOLDEN, 0.3, 0.35)}
    assert max(vals, key=vals.get) == GOLDEN
    with pytest.raises(ValueError):
        F.layer_size_stirling(100, 0.5)


def test_outdeg_stirling():
    for n, a, b in ((240, 0.3, 0.15), (480, 0.3, 0.15), (240, 0.25, 0.1)):
        d = round((1 - 3 * a + b) * n)
        exact = F.outdeg_count_pn(n, round(a * n), d)
        rel = abs(F.outdeg_stirling(n, a, b) - exact) / exact
        assert rel <= 10 / n
    # beta = alpha^2/(1-alpha) maximizes over beta at fixed alpha
    a = 0.3
    grid = [0.09, 0.11, a * a / (1 - a), 0.14, 0.16]
    vals = [F.entropy_G(a, b).value for b in grid]
    assert max(range(5), key=vals.__getitem__) == 2
    # domain boundary: beta just under alpha fine, beta = alpha rejected
    F.outdeg_stirling(240, 0.3, 0.29)
    with pytest.raises(ValueError):
        F.outdeg_stirling(240, 0.3, 0.3)


def test_gaussian_sum_bounds():
    lower, upper, s = F.gaussian_sum_bounds(1.0)
    assert isclose(lower, 0.3261, abs_tol=5e-4)
    assert isclose(s, 0.3863, abs_tol=5e-4)
    assert isclose(upper, 1.2533, abs_tol=5e-4)
    assert lower <= s <= upper

    for a in (0.6, 1.0, 2.5, 10.0, 40.0, 100.0):
        lower, upper, s = F.gaussian_sum_bounds(a)
        assert lower <= s <= upper, a
    # large a: the first term dominates
    lower, upper, s = F.gaussian_sum_bounds(30.0)
    assert isclose(s, exp(-30), rel_tol=1e-10)
    assert s >= lower
    with pytest.raises(ValueError):
        F.gaussian_sum_bounds(0.0)


def test_gaussian_lower_bound_failure_region():
    # documented failure of the sqrt(pi/4a)e^{-a} lower bound for small a:
    # there the sum behaves like sqrt(pi/4a) - 1/2 and dips below it
    lower, upper, s = F.gaussian_sum_bounds(0.01)
    assert s < lower
    assert s <= upper
    assert isclose(s, sqrt(3.14159265 / 0.04) - 0.5, rel_tol=1e-3)


def test_quad_exp_sum_bound():
    bound, s = F.quad_exp_sum_bound(0.0, 0.0, 1.0)
    assert isclose(s, 1 + 2 * 0.3863, abs_tol=2e-3)
    assert s <= bound
    b5, s5 = F.quad_exp_sum_bound(5.0, 0.0, 1.0)
    assert isclose(s5, s * exp(-5), rel_tol=1e-9)
    # (x - 1/2)^2 * 3 = 3x^2 - 3x + 3/4
    bound3, s3 = F.quad_exp_sum_bound(0.75, -3.0, 3.0)
    assert s3 <= bound3
    import random

    rng = random.Random(2024)
    for _ in range(60):
        a0 = rng.uniform(-3, 3)
        a1 = rng.uniform(-8, 8)
        a2 = rng.uniform(0.01, 12)
        bound, s = F.quad_exp_sum_bound(a0, a1, a2)
        assert s <= bound, (a0, a1, a2)
    with pytest.raises(ValueError):
        F.quad_exp_sum_bound(0, 0, 0)
    with pytest.raises(ValueError):
        F.quad_exp_sum_bound(0, 0, -1)


def test_qrdstar_ratio():
    v100 = F.qrdstar_ratio(100, F.r_star(100).values[0])
    assert 0.1 < v100 < 10
    v2000 = F.qrdstar_ratio(2000, F.r_star(2000).values[0])
    v4000 = F.qrdstar_ratio(4000, F.r_star(4000).values[0])
    assert abs(v2000 - v4000) / v2000 < 0.2
    with pytest.raises(ValueError):
        F.qrdstar_ratio(100, F.r_star(100).values[0] + 100)
