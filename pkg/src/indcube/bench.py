"""Backend shoot-out: pure Python vs the compiled extension.

Run as `python -m indcube.bench`.  Times the enumeration/counting kernels
and the band chain-cover solver on fixed workloads with both backends and
prints a small table.  Also asserts along the way that the two backends
return identical results on every workload, which is the whole point of
keeping the slow one around.
"""

from __future__ import annotations

import sys
import time

from . import _purecore
from .graphs import erdos_renyi, path


def _time(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - t0, out


def _row(name: str, t_pure: float, t_fast: float | None) -> str:
    if t_fast is None:
        return f"{name:<34} {t_pure:>9.3f}s {'-':>9} {'-':>7}"
    speedup = t_pure / t_fast if t_fast > 0 else float("inf")
    return f"{name:<34} {t_pure:>9.3f}s {t_fast:>8.3f}s {speedup:>6.1f}x"


def main() -> int:
    try:
        from . import _fastcore
    except ImportError:
        _fastcore = None
        print("compiled backend not importable; timing the pure backend only",
              file=sys.stderr)

    p22 = path(22)
    p26 = path(26)
    g18 = erdos_renyi(18, 2.0 / 18, 1729)

    jobs = [
        ("layer_counts, path n=26",
         lambda core: core.layer_counts(p26.n, p26.adj)),
        ("enumerate_all, path n=22",
         lambda core: core.enumerate_all(p22.n, p22.adj)),
        ("outdeg_histogram, path n=22 r=7",
         lambda core: core.outdeg_histogram(p22.n, p22.adj, 7)),
        ("band cover, path n=20 full",
         lambda core: core.solve_band_cover(20, path(20).adj, 0, 20)),
        ("band cover, G(18, 2/18) seed 1729",
         lambda core: core.solve_band_cover(g18.n, g18.adj, 0, g18.n)),
    ]

    print(f"{'workload':<34} {'pure':>10} {'fast':>9} {'ratio':>7}")
    for name, job in jobs:
        t_pure, out_pure = _time(job, _purecore)
        if _fastcore is None:
            print(_row(name, t_pure, None))
            continue
        t_fast, out_fast = _time(job, _fastcore)
        if out_pure != out_fast:
            print(f"MISMATCH on {name!r}: backends disagree", file=sys.stderr)
            return 1
        print(_row(name, t_pure, t_fast))
    return 0


if __name__ == "__main__":
    sys.exit(main())
