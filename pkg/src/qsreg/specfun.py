"""Numerical kernels for the cost model: Lambert W and incomplete gamma.

Both real branches of Lambert W solve w*exp(w) = x: the principal branch W0
(w >= -1, defined for x >= -1/e) and the lower branch W-1 (w <= -1, defined
for -1/e <= x < 0).  The generalized upper incomplete gamma restricted to a
finite window is the integral of t^(a-1)*exp(-t) over [x0, x1].
"""
from __future__ import annotations

import math

__all__ = ["lambert_w0", "lambert_wm1", "gen_upper_incomplete_gamma"]

_INV_E = math.exp(-1.0)
_STEP_TOL = 1e-14
_MAX_ITER = 50


def _halley(w: float, x: float) -> float:
    """Halley refinement of w*exp(w) = x from a branch-appropriate start."""
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        if f == 0.0:
            return w
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        step = f / denom
        w -= step
        if abs(step) <= _STEP_TOL * max(1.0, abs(w)):
            break
    return w


def _branch_offset(x: float) -> float:
    """e*x + 1, clamped against rounding just below the branch point."""
    t = math.e * x + 1.0
    if -1e-12 < t < 0.0:
        return 0.0
    return t


def lambert_w0(x: float) -> float:
    """Principal branch W0(x) for x >= -1/e; residual <= 1e-12*max(1, |x|)."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    t = _branch_offset(x)
    if t < 0.0:
        raise ValueError(f"lambert_w0 requires x >= -1/e, got {x}")
    if t == 0.0:
        return -1.0
    p = math.sqrt(2.0 * t)
    if t < 1e-12:
        # so close to the branch point that the series is already exact
        return -1.0 + p - p * p / 3.0
    if t <= 0.7:
        w = -1.0 + p - p * p / 3.0 + 11.0 * p**3 / 72.0
    elif x < math.e:
        w = math.log1p(x)
    else:
        l1 = math.log(x)
        l2 = math.log(l1)
        w = l1 - l2 + l2 / l1
    return _halley(w, x)


def lambert_wm1(x: float) -> float:
    """Lower branch W-1(x) for -1/e <= x < 0; residual <= 1e-12*max(1, |x|)."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    if x >= 0.0:
        raise ValueError(f"lambert_wm1 requires x < 0, got {x}")
    t = _branch_offset(x)
    if t < 0.0:
        raise ValueError(f"lambert_wm1 requires x >= -1/e, got {x}")
    if t == 0.0:
        return -1.0
    p = math.sqrt(2.0 * t)
    if t < 1e-12:
        return -1.0 - p - p * p / 3.0
    if t <= 0.7:
        w = -1.0 - p - p * p / 3.0 - 11.0 * p**3 / 72.0
    else:
        l1 = math.log(-x)
        l2 = math.log(-l1)
        w = l1 - l2 + l2 / l1
    return _halley(w, x)


def _integrand(a: float, t: float) -> float:
    if t == 0.0:
        return 1.0 if a == 1.0 else (0.0 if a > 1.0 else math.inf)
    return t ** (a - 1.0) * math.exp(-t)


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, depth) -> float:
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = _simpson(fa, flm, fm, m - a)
    right = _simpson(fm, frm, fb, b - m)
    if depth <= 0:
        return left + right
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    return _adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + _adaptive_simpson(
        f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1
    )


def _integrate(f, a: float, b: float, rel_tol: float = 1e-13) -> float:
    if a == b:
        return 0.0
    # coarse composite pass to set the absolute tolerance scale
    grid = [a + (b - a) * i / 16.0 for i in range(17)]
    fvals = [f(t) for t in grid]
    coarse = 0.0
    for i in range(0, 16, 2):
        coarse += _simpson(fvals[i], fvals[i + 1], fvals[i + 2], grid[i + 2] - grid[i])
    tol = max(rel_tol * abs(coarse), 5e-324)
    total = 0.0
    for i in range(0, 16, 2):
        x0, xm, x1 = grid[i], grid[i + 1], grid[i + 2]
        whole = _simpson(fvals[i], fvals[i + 1], fvals[i + 2], x1 - x0)
        total += _adaptive_simpson(
            f, x0, x1, fvals[i], fvals[i + 1], fvals[i + 2], whole, tol / 8.0, 48
        )
    return total


def _series_head(a: float, delta: float) -> float:
    """Integral over [0, delta] via the alternating power series; needs delta <= 0.2."""
    total = 0.0
    term_sign = 1.0
    factorial = 1.0
    for k in range(0, 40):
        if k > 0:
            factorial *= k
            term_sign = -term_sign
        term = term_sign * delta ** (a + k) / (factorial * (a + k))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            break
    return total


def gen_upper_incomplete_gamma(a: float, x0: float, x1: float) -> float:
    """Integral of t^(a-1)*exp(-t) over [x0, x1] to ~1e-10 relative accuracy.

    Requires a > 0, 0 <= x0 <= x1.  An infinite x1 is truncated where the
    integrand underflows.  The integrable endpoint singularity at t = 0 for
    a < 1 is handled with a series head before the adaptive quadrature.
    """
    a = float(a)
    x0 = float(x0)
    x1 = float(x1)
    if not a > 0.0:
        raise ValueError("a must be positive")
    if x0 < 0.0 or math.isnan(x0) or math.isnan(x1):
        raise ValueError("need 0 <= x0 <= x1")
    if x1 < x0:
        raise ValueError("need x1 >= x0")
    if math.isinf(x1):
        # beyond this point the integrand has decayed to irrelevance
        x1 = max(x0, 64.0 * (1.0 + a) + 700.0)
    if x0 == x1:
        return 0.0

    f = lambda t: _integrand(a, t)
    head = 0.0
    if x0 == 0.0 and a < 1.0:
        delta = min(0.1, x1)
        head = _series_head(a, delta)
        x0 = delta
        if x0 == x1:
            return head
    return head + _integrate(f, x0, x1)
