"""Gamma-function utilities and Pochhammer (rising factorial) symbols.

All routines are double precision and total unless documented otherwise;
nonpositive-integer bases are detected with an absolute tolerance of 1e-12
because parameters normally arrive from user input where exact integers
are intended.
"""

from __future__ import annotations

import math

from .errors import PoleError

_INT_TOL = 1e-12
_DIRECT_ORDER = 32


def _as_nonpositive_int(x: float) -> int | None:
    """Round x to a nonpositive integer if it is within tolerance, else None."""
    r = round(x)
    if r <= 0 and abs(x - r) < _INT_TOL:
        return int(r)
    return None


def is_nonpositive_int(x: float) -> bool:
    return _as_nonpositive_int(x) is not None


def _signed_loggamma(x: float) -> tuple[float, int]:
    """(log|Gamma(x)|, sign of Gamma(x)); sign 0 at poles."""
    if x > 0.0:
        return math.lgamma(x), 1
    if is_nonpositive_int(x):
        return math.inf, 0
    # reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x)) for x < 0
    s = math.sin(math.pi * x)
    logabs = math.log(math.pi) - math.log(abs(s)) - math.lgamma(1.0 - x)
    return logabs, (1 if s > 0 else -1)


def pochhammer(base: float, order: int) -> float:
    """Rising factorial (base)_order = base (base+1) ... (base+order-1).

    (base)_0 = 1; the product is exactly 0 when base is a nonpositive
    integer with |base| < order.  Total: never raises.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if order == 0:
        return 1.0
    nb = _as_nonpositive_int(base)
    if nb is not None:
        if -nb < order:
            return 0.0
        base = float(nb)  # snap to the intended integer
    if order <= _DIRECT_ORDER:
        p = 1.0
        for j in range(order):
            p *= base + j
        return p
    logmag, sign = log_pochhammer(base, order)
    if sign == 0:
        return 0.0
    return sign * math.exp(logmag)


def log_pochhammer(base: float, order: int) -> tuple[float, int]:
    """Overflow-safe rising factorial: (log|(base)_order|, sign).

    sign is 0 exactly when the product vanishes (terminating case),
    with log magnitude -inf.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if order == 0:
        return 0.0, 1
    nb = _as_nonpositive_int(base)
    if nb is not None:
        if -nb < order:
            return -math.inf, 0
        base = float(nb)
    if order <= _DIRECT_ORDER:
        logmag = 0.0
        sign = 1
        for j in range(order):
            f = base + j
            if f < 0.0:
                sign = -sign
            logmag += math.log(abs(f))
        return logmag, sign
    ln, sn = _signed_loggamma(base + order)
    ld, sd = _signed_loggamma(base)
    return ln - ld, sn * sd


def gamma_ratio(num: float, den: float) -> float:
    """Gamma(num) / Gamma(den) via log-gamma differences.

    Raises PoleError when either argument is a nonpositive integer.
    """
    if is_nonpositive_int(num):
        raise PoleError(f"Gamma pole in numerator at {num}")
    if is_nonpositive_int(den):
        raise PoleError(f"Gamma pole in denominator at {den}")
    ln, sn = _signed_loggamma(num)
    ld, sd = _signed_loggamma(den)
    return sn * sd * math.exp(ln - ld)
