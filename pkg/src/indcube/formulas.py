"""Closed forms and asymptotics for layer/out-degree counts of path cubes.

Count-valued functions are exact over Python ints and are oracle-tested
against enumeration. The argmax helpers (`r_star`, `d_star`) work purely
with integer ratio inequalities -- no floating point near boundaries --
and may return two consecutive maximizers when there is an exact tie.
Floating point appears only in the Stirling-scale estimates and bound
helpers at the bottom, each with a stated open domain.

Conventions used throughout:
    q(n, r)    = number of independent r-sets of the n-path
               = C(n-r+1, r); zero outside 0 <= r <= (n+1)/2.
    q(n, r, d) = those with exactly d addable vertices; supported on
               n-3r <= d <= n-2r for 1 <= r, n >= 2r, with the single
               degenerate case n = 2r-1 where only d = 0 occurs.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, exp, isqrt, log, pi, sqrt

# A count; arbitrary precision, never rounded.
BigCount = int


@dataclass(frozen=True)
class MaximizerSet:
    """Argmax witnesses: one value, or two consecutive ones on a tie.

    ``peak`` is the (common) maximum being attained.
    """

    values: tuple[int, ...]
    peak: BigCount

    def midpoint(self) -> float:
        return sum(self.values) / len(self.values)


@dataclass(frozen=True)
class EntropyPoint:
    """A point evaluation of an exponent function: value and the first
    two derivatives (in the last argument for the two-variable form)."""

    args: tuple[float, ...]
    value: float
    d1: float
    d2: float


# ---------------------------------------------------------------- exact counts

def fibonacci(k: int) -> BigCount:
    """F_0 = 0, F_1 = 1, F_k = F_{k-1} + F_{k-2}."""
    if k < 0:
        raise ValueError("negative index")
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def cube_size_pn(n: int) -> BigCount:
    """Number of independent sets of the n-path: F_{n+2}."""
    if n < 1:
        raise ValueError("need n >= 1")
    return fibonacci(n + 2)


def layer_size_pn(n: int, r: int) -> BigCount:
    """q(n, r) = C(n-r+1, r); zero for out-of-range r."""
    if n < 1:
        raise ValueError("need n >= 1")
    if r < 0 or n - r + 1 < r:
        return 0
    return comb(n - r + 1, r)


def _layer_quad(n: int, r: int) -> int:
    # sign of q(n, r+1) - q(n, r) is the sign of this quadratic
    return 5 * r * r - r * (5 * n + 2) + (n * n - 1)


def r_star(n: int) -> MaximizerSet:
    """Sizes r at which q(n, r) is maximal (one value or a tied pair).

    The ratio q(n, r+1)/q(n, r) is >= 1 exactly while the integer
    quadratic 5r^2 - r(5n+2) + (n^2-1) stays non-negative, so the argmax
    is the first r where it turns negative; a tie with r-1 happens when
    the quadratic vanished exactly there. Asymptotically the maximizer
    sits at (5-sqrt(5))/10 * n + O(1).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    s = isqrt(5 * n * n + 20 * n + 24)
    k = (5 * n + 2 - s) // 10 + 1
    while _layer_quad(n, k) >= 0:
        k += 1
    while k >= 1 and _layer_quad(n, k - 1) < 0:
        k -= 1
    if k >= 1 and _layer_quad(n, k - 1) == 0:
        values = (k - 1, k)
    else:
        values = (k,)
    return MaximizerSet(values, layer_size_pn(n, values[0]))


def outdeg_count_pn(n: int, r: int, d: int) -> BigCount:
    """q(n, r, d): independent r-sets of the n-path with out-degree d.

    Product form C(r+1, z) * C(n-2r, r-z) with z = d - n + 3r, except
    when n = 2r-1 (a single fully-packed set remains, out-degree 0,
    which the product form misses -- handled explicitly).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if r < 0 or layer_size_pn(n, r) == 0:
        return 0
    if n == 2 * r - 1:
        return 1 if d == 0 else 0
    z = d - n + 3 * r
    if z < 0 or z > r + 1 or r - z < 0 or r - z > n - 2 * r:
        return 0
    return comb(r + 1, z) * comb(n - 2 * r, r - z)


def d_star(n: int, r: int) -> MaximizerSet:
    """Out-degrees d at which q(n, r, d) is maximal within layer r.

    In shifted coordinates z = d - n + 3r the ratio q(z+1)/q(z) is >= 1
    exactly while z(n-r+3) <= r^2 + 4r - n - 1, giving the first
    decreasing z in closed form; clamped to the support and returning a
    pair when the ratio equals 1 exactly. The counts are unimodal in d,
    which the tests check directly.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    if layer_size_pn(n, r) == 0:
        raise ValueError(f"layer {r} of the {n}-path is empty")
    if n == 2 * r - 1:
        return MaximizerSet((0,), 1)
    T = r * r + 4 * r - n - 1
    denom = n - r + 3
    k = 0 if T < 0 else T // denom + 1
    z_min = max(0, 3 * r - n)
    z_max = r
    tie = T >= 0 and k >= 1 and (k - 1) * denom == T
    if k <= z_min:
        zs = (z_min,)
    elif k > z_max:
        zs = (z_max,)
    elif tie:
        zs = (k - 1, k)
    else:
        zs = (k,)
    ds = tuple(n - 3 * r + z for z in zs)
    return MaximizerSet(ds, outdeg_count_pn(n, r, ds[0]))


# --------------------------------------------------------------- entropy scale

def d_star_expansion(n: int, c: float) -> float:
    """Leading terms of the most-common out-degree near the widest layer.

    For layers r about c*sqrt(n) above the widest one, the maximizing
    out-degree expands as
        (5-sqrt(5))/10 * n  -  (5*sqrt(5)-7)/2 * c*sqrt(n)  +  (10-2*sqrt(5))*c^2
    up to an O(1) remainder (audits allow an additive slack of 50,
    fixed by pre-build calibration where the observed gap was < 3).
    """
    if abs(c) > sqrt(log(n)):
        raise ValueError("need |c| <= sqrt(log n)")
    return (
        (5 - sqrt(5)) / 10 * n
        - (5 * sqrt(5) - 7) / 2 * c * sqrt(n)
        + (10 - 2 * sqrt(5)) * c * c
    )


def entropy_F(x: float) -> EntropyPoint:
    """One-variable exponent governing layer growth: q(n, xn) ~ e^{nF(x)}.

    F(x) = (1-x)log(1-x) - x log x - (1-2x)log(1-2x) on the open
    interval (0, 1/2). Its derivative log((1-2x)^2 / (x(1-x))) vanishes
    at (5-sqrt(5))/10 and F'' there equals -5*sqrt(5).
    """
    if not 0.0 < x < 0.5:
        raise ValueError("need 0 < x < 1/2")
    value = (1 - x) * log(1 - x) - x * log(x) - (1 - 2 * x) * log(1 - 2 * x)
    d1 = log((1 - 2 * x) ** 2 / (x * (1 - x)))
    d2 = -4.0 / (1 - 2 * x) - 1.0 / x + 1.0 / (1 - x)
    return EntropyPoint((x,), value, d1, d2)


def entropy_G(x: float, y: float) -> EntropyPoint:
    """Two-variable exponent governing out-degree counts within a layer.

    G(x, y) = x log x + (1-2x)log(1-2x) - y log y - 2(x-y)log(x-y)
              - (1-3x+y)log(1-3x+y),
    reported with its first two y-derivatives. In y it is maximal at
    y = x^2/(1-x), where the second derivative is
    -(1-x)^3 / (x^2 (1-2x)^2). Domain: 1e-9 < y < x - 1e-9 and
    x < (1 + y - 1e-9)/3.
    """
    if not (1e-9 < y < x - 1e-9 and x < (1 + y - 1e-9) / 3):
        raise ValueError("arguments outside the open domain")
    value = (
        x * log(x)
        + (1 - 2 * x) * log(1 - 2 * x)
        - y * log(y)
        - 2 * (x - y) * log(x - y)
        - (1 - 3 * x + y) * log(1 - 3 * x + y)
    )
    d1 = log((x - y) ** 2 / (y * (1 - 3 * x + y)))
    d2 = -1.0 / y - 2.0 / (x - y) - 1.0 / (1 - 3 * x + y)
    return EntropyPoint((x, y), value, d1, d2)


def layer_size_stirling(n: int, alpha: float) -> float:
    """Stirling-scale estimate of q(n, alpha*n).

    (1-a)^{3/2} / (sqrt(2*pi*a*(1-2a)) * (1-2a)) * n^{-1/2} * e^{nF(a)}.
    Relative error is O(1/n) on grids where alpha*n is an integer
    (calibrated constant: rel*n <= 10 on the fixture grid).
    """
    if not 1e-9 < alpha < 0.5 - 1e-9:
        raise ValueError("need 1e-9 < alpha < 1/2 - 1e-9")
    a = alpha
    pref = (1 - a) * sqrt(1 - a) / (sqrt(2 * pi * a * (1 - 2 * a)) * (1 - 2 * a))
    return pref / sqrt(n) * exp(n * entropy_F(a).value)


def outdeg_stirling(n: int, alpha: float, beta: float) -> float:
    """Stirling-scale estimate of q(n, alpha*n, (1-3*alpha+beta)*n).

    alpha*sqrt(alpha*(1-2*alpha)) / (2*pi*n*(alpha-beta)^2 *
    sqrt(beta*(1-3*alpha+beta))) * e^{nG(alpha,beta)}. Relative error is
    O(1/n) on integer-aligned grids (calibrated: rel*n <= 10). Only the
    open-domain margins are enforced; off-grid arguments evaluate fine
    but approximate nothing exactly.
    """
    a, b = alpha, beta
    g = entropy_G(a, b)  # also validates the domain
    pref = (
        a * sqrt(a * (1 - 2 * a))
        / (2 * pi * n * (a - b) ** 2 * sqrt(b * (1 - 3 * a + b)))
    )
    return pref * exp(n * g.value)


# ------------------------------------------------------------------ sum bounds

def gaussian_sum_bounds(a: float) -> tuple[float, float, float]:
    """(lower, upper, partial_sum) for sum_{i>=1} e^{-a i^2}.

    lower = sqrt(pi/4a) * e^{-a}, upper = sqrt(pi/2a); the partial sum
    is truncated once the geometric bound on the dropped tail is below
    1e-12. Caution from calibration: the lower bound genuinely fails
    for a below ~0.5267 (the sum is ~ sqrt(pi/4a) - 1/2 there, which
    drops under sqrt(pi/4a)*e^{-a} for small a); the bracket is reliable
    only from a ~ 0.53 up, and tests pin it on [0.6, 100].
    """
    if a <= 0:
        raise ValueError("need a > 0")
    lower = sqrt(pi / (4 * a)) * exp(-a)
    upper = sqrt(pi / (2 * a))
    s = 0.0
    i = 1
    while True:
        t = exp(-a * i * i)
        s += t
        # terms shrink at least geometrically with ratio e^{-a(2i+1)}
        ratio = exp(-a * (2 * i + 1))
        if t * ratio / (1 - ratio) < 1e-12:
            return lower, upper, s
        i += 1


def quad_exp_sum_bound(a0: float, a1: float, a2: float) -> tuple[float, float]:
    """(bound, sum) for sum over all integers i of e^{-(a2 i^2 + a1 i + a0)}.

    Completing the square gives the uniform bound
        e^{a1^2/(4 a2) - a0} * (3 + 2*sqrt(pi/(2 a2))),
    valid for every a2 > 0 (the 3 covers the at-most-three integers
    nearest the vertex, the rest is two one-sided gaussian sums).
    The returned sum is truncated at relative tail < 1e-12.
    """
    if a2 <= 0:
        raise ValueError("need a2 > 0")
    bound = exp(a1 * a1 / (4 * a2) - a0) * (3 + 2 * sqrt(pi / (2 * a2)))
    center = -round(a1 / (2 * a2))
    s = 0.0
    for direction in (1, -1):
        i = center if direction == 1 else center - 1
        while True:
            t = exp(-(a2 * i * i + a1 * i + a0))
            s += t
            if t < 1e-12 * max(s, 1e-300):
                break
            i += direction
    return bound, s


def _log_big(v: BigCount) -> float:
    """log of a huge positive int without overflow (top 60 bits + shift)."""
    shift = max(0, v.bit_length() - 60)
    return log(v >> shift) + shift * log(2)


def qrdstar_ratio(n: int, r: int) -> float:
    """sqrt(n) * q(n, r, d_star) / q(n, r) for layers near the widest one.

    Stays inside a fixed bracket across n (calibration: 1.94 at n=100
    rising to ~1.99 by n=10^4; tests use the generous bracket (0.1, 10)).
    Precondition: |r - r_star| <= sqrt(n log n).
    """
    rs = r_star(n)
    if min(abs(r - v) for v in rs.values) > sqrt(n * log(n)):
        raise ValueError("r is too far from the widest layer")
    num = outdeg_count_pn(n, r, d_star(n, r).values[0])
    den = layer_size_pn(n, r)
    return exp(_log_big(num) - _log_big(den)) * sqrt(n)
