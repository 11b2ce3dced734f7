"""Principal-branch Lambert W function.

The closed-form slot durations and the interior partition fixed points all
reduce to evaluating W0, the inverse of w -> w*exp(w) on [-1/e, inf). This is
the only special function the solver needs, so it is implemented here rather
than pulled from scipy: a series / asymptotic initial guess followed by
Halley iteration, as in Corless et al., "On the Lambert W Function" (1996).

Accuracy target: |W(x)*exp(W(x)) - x| <= 1e-12 * max(1, |x|) over the whole
domain; in practice the iteration converges to ~1e-15 relative.
"""

import math

from numba import njit

# Negative inverse of e, the branch point of W0.
_NEG_INV_E = -math.exp(-1.0)
# Absolute slack below -1/e tolerated (rounding in upstream arguments).
_DOMAIN_SLACK = 1e-15


@njit(cache=True)
def _w0(x):
    """Core iteration. Returns NaN for x below the branch point (minus slack)."""
    if x != x:  # NaN in
        return math.nan
    if x < _NEG_INV_E:
        if x < _NEG_INV_E - _DOMAIN_SLACK:
            return math.nan
        x = _NEG_INV_E
    if x == _NEG_INV_E:
        return -1.0
    if x == 0.0:
        return 0.0

    # Initial guess: branch-point series, rational stopgap, or asymptotic log form.
    if x < -0.3235:
        p = math.sqrt(2.0 * (1.0 + math.e * x))
        w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)))
    elif x < math.e:
        w = x / (1.0 + x)
    else:
        l1 = math.log(x)
        l2 = math.log(l1)
        w = l1 - l2 + l2 / l1

    # Halley iteration, cubic convergence from any of the guesses above.
    for _ in range(50):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= 1e-14 * (abs(w) + 0.01):
            break
    if w < -1.0:  # never leave the principal branch
        w = -1.0
    return w


def lambert_w0(x: float) -> float:
    """Principal branch W0(x) for real x >= -1/e.

    Arguments within 1e-15 below -1/e are clamped to the branch point, where
    W0 = -1; anything lower raises ValueError.
    """
    w = _w0(float(x))
    if math.isnan(w):
        raise ValueError(f"lambert_w0: argument {x!r} below branch point -1/e")
    return w
