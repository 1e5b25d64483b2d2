from math import comb, sqrt

import pytest

from indcube import cube, experiments as E
from indcube.formulas import layer_size_pn, r_star
from indcube.graphs import erdos_renyi, path


def test_conjecture_check_pn():
    rows = E.conjecture_check_pn(10)
    assert [r.n for r in rows] == list(range(1, 11))
    for row in rows:
        assert row.certificate_ok
        assert row.ratio == 1.0  # exact equality below the open case
        assert row.max_layer == r_star(row.n).peak
        assert row.width == row.max_layer
        assert row.runtime_ms >= 0
    with pytest.raises(ValueError):
        E.conjecture_check_pn(0)


def test_conjecture_check_cn():
    rows = E.conjecture_check_cn(8)
    assert [r.n for r in rows] == list(range(3, 9))
    assert rows[0].width == 3  # the triangle: three singletons
    for row in rows:
        assert row.certificate_ok
        assert row.ratio >= 1.0


def test_open_case_n11():
    rep = E.open_case_n11()
    assert rep.certificate_ok
    assert rep.max_layer == 84
    assert rep.width >= 84
    assert sum(len(ch) for ch in rep.chain_cover) == 154
    assert rep.ratio == rep.width / 84


def test_gnp_rows():
    seeds = list(range(40, 60))
    rows = E.gnp_experiment(12, 1.5, seeds)
    assert [r.seed for r in rows] == sorted(seeds)
    p = 1.5 / 12
    for row in rows:
        assert row.n == 12 and row.p == p
        assert row.ratio >= 1.0
        assert row.width >= row.max_layer == max(row.layer_counts)
        g = erdos_renyi(12, p, row.seed)
        assert list(row.layer_counts) == cube.layer_counts(g)
        for r, want in enumerate(row.expected_counts):
            assert want == pytest.approx(comb(12, r) * (1 - p) ** comb(r, 2))


def test_gnp_determinism():
    a = E.gnp_csv(E.gnp_experiment(10, 1.0, list(range(7))))
    b = E.gnp_csv(E.gnp_experiment(10, 1.0, list(range(7))))
    assert a == b
    # seed order in the input does not matter
    c = E.gnp_csv(E.gnp_experiment(10, 1.0, list(range(6, -1, -1))))
    assert a == c


def test_gnp_edgeless_limit():
    for row in E.gnp_experiment(9, 0.0, [1, 2]):
        assert row.ratio == 1.0  # plain Sperner on the empty graph
        assert sum(row.layer_counts) == 2**9


def test_gnp_expected_count_formula_monte_carlo():
    # the per-layer expectation C(n,r)(1-p)^C(r,2) against 2000 samples,
    # gated at 5 standard errors (flake odds ~1e-6 per cell)
    n, c, trials = 10, 1.0, 2000
    p = c / n
    sums = [0.0] * (n + 1)
    sqsums = [0.0] * (n + 1)
    for seed in range(trials):
        counts = cube.layer_counts(erdos_renyi(n, p, seed))
        for r, k in enumerate(counts):
            sums[r] += k
            sqsums[r] += k * k
    for r in range(5):
        mean = sums[r] / trials
        var = sqsums[r] / trials - mean * mean
        se = sqrt(max(var, 1e-12) / trials)
        expected = comb(n, r) * (1 - p) ** comb(r, 2)
        assert abs(mean - expected) <= 5 * se + 1e-9, (r, mean, expected)


def test_decay_audit_layers():
    rows = E.decay_audit_layers(10**4)
    assert [row.c for row in rows] == list(E.DECAY_GRID)
    assert rows[0].exact_log_ratio == 0.0  # c = 0 exactly
    for row in rows[1:]:
        assert row.rel_error <= 0.15
        assert row.predicted == pytest.approx(E.LAYER_DECAY_COEFF * row.c**2)
        assert row.offset == int(row.c * 100)


def test_decay_audit_outdeg_structure():
    # the exact log-ratio really is quadratic in c (drift cancels at the
    # argmax); the reference constant itself is gated in the acceptance
    # suite, not here
    rows = E.decay_audit_outdeg(10**4)
    assert rows[0].exact_log_ratio == 0.0
    by_c = {row.c: row.exact_log_ratio for row in rows}
    assert by_c[1.0] / by_c[0.5] == pytest.approx(4.0, rel=0.05)
    assert by_c[1.5] / by_c[1.0] == pytest.approx(2.25, rel=0.05)
    for row in rows[1:]:
        assert row.exact_log_ratio > 0
        assert row.rel_error == pytest.approx(
            abs(row.exact_log_ratio - row.predicted) / row.predicted
        )


def test_decay_audit_rejects_small_n():
    with pytest.raises(ValueError):
        E.decay_audit_layers(16)  # c-grid leaves the nonempty-layer range


def test_tail_mass_audit():
    rep = E.tail_mass_audit(1000)
    assert rep["shrinks"] is True
    assert rep["tail_ratio"] < 1
    assert rep["tail_ratio_scaled"] < rep["tail_ratio"]
    assert rep["n_scaled"] == 4000
    # a window covering every layer leaves no tail at all
    rep_all = E.tail_mass_audit(500, window=500)
    assert rep_all["tail_ratio"] == 0.0
    # sanity floor from the criteria: ratio < 1 already at n = 100
    assert E.tail_mass_audit(100)["tail_ratio"] < 1


def test_csv_emitters():
    rows = E.conjecture_check_pn(6)
    text = E.conjecture_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "n,width,max_layer,ratio,certificate_ok"
    assert len(lines) == 7
    assert lines[1].endswith(",true")
    assert text == E.conjecture_csv(rows)  # stable

    gnp_text = E.gnp_csv(E.gnp_experiment(8, 1.0, [3]))
    assert gnp_text.splitlines()[0] == (
        "n,p,seed,width,max_layer,ratio,layer_counts,expected_counts"
    )
    assert ";" in gnp_text.splitlines()[1]

    decay_text = E.decay_csv(E.decay_audit_layers(10**4))
    assert decay_text.splitlines()[0] == "c,offset,exact_log_ratio,predicted,rel_error"

    tail_text = E.tail_csv(E.tail_mass_audit(200))
    assert tail_text.splitlines()[0].startswith("n,window,tail_ratio")
    assert tail_text.splitlines()[1].endswith("true")


def test_row_dicts():
    row = E.conjecture_check_pn(3)[-1]
    d = row.to_dict()
    assert set(d) == {"n", "width", "max_layer", "ratio", "certificate_ok", "runtime_ms"}
    gd = E.gnp_experiment(8, 1.0, [1])[0].to_dict()
    assert gd["seed"] == 1
    assert len(gd["layer_counts"]) == len(gd["expected_counts"]) == 9
