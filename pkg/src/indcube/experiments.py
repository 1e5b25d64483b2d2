"""Batch experiments: conjecture scans, decay audits, random-graph trials.

Every row that contains a width went through the certified solver, so a
row existing at all means its certificate checked out.  All experiments
are deterministic functions of their arguments (seeds included); CSV
renderings are byte-identical across reruns, which is why wall-clock
fields stay out of the serialized forms.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb, exp, floor, log, sqrt

from . import cube, width
from .cube import Family
from .formulas import (
    _log_big,
    d_star,
    layer_size_pn,
    outdeg_count_pn,
    r_star,
)
from .graphs import Graph, cycle, erdos_renyi, path

# Reference quadratic coefficients the decay audits compare against:
# exp(-coeff * c^2) per sqrt(n)-scaled offset c.
LAYER_DECAY_COEFF = 5 * sqrt(5) / 2
OUTDEG_DECAY_COEFF = (25 + 11 * sqrt(5)) / 8

DECAY_GRID = (0.0, 0.5, 1.0, 1.5)


@dataclass(frozen=True)
class ConjectureRow:
    n: int
    width: int
    max_layer: int
    ratio: float
    certificate_ok: bool
    runtime_ms: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "width": self.width,
            "max_layer": self.max_layer,
            "ratio": self.ratio,
            "certificate_ok": self.certificate_ok,
            "runtime_ms": self.runtime_ms,
        }


@dataclass(frozen=True)
class GnpTrialRow:
    n: int
    p: float
    seed: int
    width: int
    max_layer: int
    ratio: float
    layer_counts: tuple[int, ...]
    expected_counts: tuple[float, ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "seed": self.seed,
            "width": self.width,
            "max_layer": self.max_layer,
            "ratio": self.ratio,
            "layer_counts": list(self.layer_counts),
            "expected_counts": list(self.expected_counts),
        }


@dataclass(frozen=True)
class DecayRow:
    c: float
    offset: int
    exact_log_ratio: float
    predicted: float
    rel_error: float

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "offset": self.offset,
            "exact_log_ratio": self.exact_log_ratio,
            "predicted": self.predicted,
            "rel_error": self.rel_error,
        }


def _solved_row(n: int, g: Graph) -> ConjectureRow:
    t0 = time.perf_counter()
    w, counts = width.band_width_stats(g, 0, g.n)
    ms = (time.perf_counter() - t0) * 1000.0
    max_layer = max(counts)
    return ConjectureRow(
        n=n,
        width=w,
        max_layer=max_layer,
        ratio=w / max_layer,
        certificate_ok=True,  # band_width_stats raises on a bad certificate
        runtime_ms=ms,
    )


def conjecture_check_pn(n_max: int) -> list[ConjectureRow]:
    """Width vs largest layer for every path up to n_max.

    Equality is a proved fact for n <= 10 and open beyond; the rows
    report what the certified solver found, and the ratio column is the
    empirical bounded-constant audit.
    """
    if n_max < 1:
        raise ValueError("need n_max >= 1")
    return [_solved_row(n, path(n)) for n in range(1, n_max + 1)]


def conjecture_check_cn(n_max: int) -> list[ConjectureRow]:
    """Width vs largest layer for cycles (vertex-transitive test case)."""
    if n_max < 3:
        raise ValueError("need n_max >= 3")
    return [_solved_row(n, cycle(n)) for n in range(3, n_max + 1)]


def open_case_n11() -> width.WidthReport:
    """Settle the 11-path width by solving the 3..4 band and the full cube.

    The shadow-push argument says the two values must agree; that
    agreement is machine-checked here, and the common value travels as
    a derived output with its certificate -- it is nowhere pinned as an
    expected constant.
    """
    g = path(11)
    band = width.max_antichain_band(g, 3, 4)
    full = width.max_antichain(Family(g, tuple(cube.enumerate_all(g))))
    if band.width != full.width:
        raise width.CertificateError(
            f"band width {band.width} != full width {full.width}; "
            "the shadow argument forbids this"
        )
    return band


def gnp_experiment(n: int, c: float, seeds: list[int]) -> list[GnpTrialRow]:
    """Certified widths and layer counts for random graphs at p = c/n.

    expected_counts[r] = C(n,r) * (1-p)^C(r,2) is the exact expectation
    of layer_counts[r]; the comparison (empirical mean vs 5 standard
    errors) lives in the test suite, rows just carry both columns.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    p = c / n
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"c/n = {p} is not a probability")
    expected = tuple(comb(n, r) * (1.0 - p) ** comb(r, 2) for r in range(n + 1))
    rows = []
    for seed in sorted(seeds):
        g = erdos_renyi(n, p, seed)
        w, counts = width.band_width_stats(g, 0, n)
        max_layer = max(counts)
        rows.append(
            GnpTrialRow(
                n=n,
                p=p,
                seed=seed,
                width=w,
                max_layer=max_layer,
                ratio=w / max_layer,
                layer_counts=tuple(counts),
                expected_counts=expected,
            )
        )
    return rows


def decay_audit_layers(n: int) -> list[DecayRow]:
    """Exact layer-count decay around the widest layer vs the reference
    quadratic exp(-5*sqrt(5)/2 * c^2).

    For each grid c the offset is floor(c*sqrt(n)) and the prediction is
    evaluated at the realized offset/sqrt(n), so rounding the offset to
    an integer is not counted as model error.
    """
    rs = r_star(n).values[0]
    rows = []
    for c in DECAY_GRID:
        t = floor(c * sqrt(n))
        shifted = layer_size_pn(n, rs + t)
        if shifted == 0:
            raise ValueError(f"offset {t} leaves the nonempty-layer range")
        exact = _log_big(layer_size_pn(n, rs)) - _log_big(shifted)
        predicted = LAYER_DECAY_COEFF * (t / sqrt(n)) ** 2
        rel = abs(exact - predicted) / predicted if predicted else abs(exact)
        rows.append(DecayRow(c, t, exact, predicted, rel))
    return rows


def decay_audit_outdeg(n: int, r: int | None = None) -> list[DecayRow]:
    """Exact out-degree-count decay within layer r (default: the widest)
    vs the reference quadratic exp(-(25+11*sqrt(5))/8 * c^2)."""
    if r is None:
        r = r_star(n).values[0]
    ds = d_star(n, r).values[0]
    rows = []
    for c in DECAY_GRID:
        t = floor(c * sqrt(n))
        shifted = outdeg_count_pn(n, r, ds + t)
        if shifted == 0:
            raise ValueError(f"offset {t} leaves the out-degree support")
        exact = _log_big(outdeg_count_pn(n, r, ds)) - _log_big(shifted)
        predicted = OUTDEG_DECAY_COEFF * (t / sqrt(n)) ** 2
        rel = abs(exact - predicted) / predicted if predicted else abs(exact)
        rows.append(DecayRow(c, t, exact, predicted, rel))
    return rows


def _tail_ratio(n: int, window: int) -> float:
    rs = r_star(n).values[0]
    peak = layer_size_pn(n, rs)
    tail = 0
    for r in range(0, (n + 1) // 2 + 1):
        if abs(r - rs) > window:
            tail += layer_size_pn(n, r)
    if tail == 0:
        return 0.0
    return exp(_log_big(tail) - _log_big(peak))


def tail_mass_audit(n: int, window: int | None = None) -> dict:
    """Mass of layers far from the widest one, relative to its size.

    The default window is floor(sqrt(n log n)); the report also
    evaluates 4n (same explicit window if one was given) and records
    whether the relative tail shrank, the finite sample of the
    concentration statement.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    w_n = window if window is not None else int(sqrt(n * log(n)))
    w_4n = window if window is not None else int(sqrt(4 * n * log(4 * n)))
    ratio_n = _tail_ratio(n, w_n)
    ratio_4n = _tail_ratio(4 * n, w_4n)
    return {
        "n": n,
        "window": w_n,
        "tail_ratio": ratio_n,
        "n_scaled": 4 * n,
        "window_scaled": w_4n,
        "tail_ratio_scaled": ratio_4n,
        "shrinks": ratio_4n < ratio_n,
    }


# ----------------------------------------------------------------- CSV output

def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def conjecture_csv(rows: list[ConjectureRow]) -> str:
    out = ["n,width,max_layer,ratio,certificate_ok"]
    for row in sorted(rows, key=lambda r: r.n):
        out.append(
            ",".join(
                _fmt(v)
                for v in (row.n, row.width, row.max_layer, row.ratio,
                          row.certificate_ok)
            )
        )
    return "\n".join(out) + "\n"


def gnp_csv(rows: list[GnpTrialRow]) -> str:
    out = ["n,p,seed,width,max_layer,ratio,layer_counts,expected_counts"]
    for row in sorted(rows, key=lambda r: r.seed):
        cells = [
            _fmt(row.n),
            _fmt(row.p),
            _fmt(row.seed),
            _fmt(row.width),
            _fmt(row.max_layer),
            _fmt(row.ratio),
            ";".join(_fmt(v) for v in row.layer_counts),
            ";".join(_fmt(v) for v in row.expected_counts),
        ]
        out.append(",".join(cells))
    return "\n".join(out) + "\n"


def decay_csv(rows: list[DecayRow]) -> str:
    out = ["c,offset,exact_log_ratio,predicted,rel_error"]
    for row in sorted(rows, key=lambda r: r.c):
        out.append(
            ",".join(
                _fmt(v)
                for v in (row.c, row.offset, row.exact_log_ratio,
                          row.predicted, row.rel_error)
            )
        )
    return "\n".join(out) + "\n"


def tail_csv(report: dict) -> str:
    keys = ["n", "window", "tail_ratio", "n_scaled", "window_scaled",
            "tail_ratio_scaled", "shrinks"]
    head = ",".join(keys)
    return head + "\n" + ",".join(_fmt(report[k]) for k in keys) + "\n"
