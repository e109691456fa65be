"""Hypotenuse kernels free of avoidable overflow and underflow.

Three variants with increasing cost and accuracy:

``weak``
    the ratio device ``max * sqrt(1 + (min/max)**2)``;
``naive``
    ``sqrt(f*f + g*g)`` guarded by LAPACK-style thresholds and rescaled by
    a power of two outside them;
``correct``
    the naive estimate followed by one Newton correction whose residual
    ``f*f + g*g - h*h`` is formed from exact products. Observed correctly
    rounded against the high-precision oracle; not proven.

None of them handles ``f == g == 0``; callers deal with ``g == 0`` first.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from rotg_lab.eft import two_mult_fma

__all__ = [
    "HypotVariant",
    "LapackConstants",
    "LAPACK",
    "weak_hypot",
    "naive_scaled_hypot",
    "correct_hypot",
    "hypot",
    "hypot_function",
]


class HypotVariant(str, enum.Enum):
    WEAK = "weak"
    NAIVE = "naive"
    CORRECT = "correct"

    @property
    def title(self) -> str:
        return self.value.capitalize()


@dataclass(frozen=True)
class LapackConstants:
    """Scaling thresholds for binary64, all exact powers of two.

    ``safmin`` is the smallest number whose reciprocal does not overflow and
    ``safmax = 1/safmin``. Squaring any ``x`` with ``rtmin < |x| < rtmax``
    stays in the normal range, and so does the sum of two such squares.
    """

    safmin: float
    safmax: float
    rtmin: float
    rtmax: float

    @classmethod
    def binary64(cls) -> LapackConstants:
        safmin = 2.0**-1022
        return cls(
            safmin=safmin,
            safmax=1.0 / safmin,
            rtmin=2.0**-511,  # sqrt(smallest normal)
            rtmax=2.0**511,  # sqrt(largest finite) / 2, snapped down
        )


LAPACK = LapackConstants.binary64()

_MIN_SCALE_EXP = -1022
_MAX_SCALE_EXP = 1022


def _scale_exponent(x: float) -> int:
    # exponent of the power of two at or just above x, clamped to [safmin, safmax]
    e = math.frexp(x)[1]
    if e < _MIN_SCALE_EXP:
        return _MIN_SCALE_EXP
    if e > _MAX_SCALE_EXP:
        return _MAX_SCALE_EXP
    return e


def weak_hypot(f: float, g: float) -> float:
    af = abs(f)
    ag = abs(g)
    if ag > af:
        af, ag = ag, af
    try:
        r = ag / af
    except ZeroDivisionError:
        # af == 0 forces ag == 0 or NaN; IEEE gives NaN where Python raises
        return math.nan
    return af * math.sqrt(1 + r * r)


def naive_scaled_hypot(f: float, g: float) -> float:
    """``sqrt(f*f + g*g)``, rescaled by a power of two when outside the guard.

    The rescale is exact, so the result is bit-identical to the unscaled
    naive formula whenever that formula neither overflows nor underflows.
    """
    f1 = abs(f)
    g1 = abs(g)
    if LAPACK.rtmin < f1 < LAPACK.rtmax and LAPACK.rtmin < g1 < LAPACK.rtmax:
        return math.sqrt(f * f + g * g)
    e = _scale_exponent(max(f1, g1))
    down = 2.0**-e
    fs = f * down
    gs = g * down
    return math.sqrt(fs * fs + gs * gs) * 2.0**e


def correct_hypot(f: float, g: float) -> float:
    af = abs(f)
    ag = abs(g)
    if ag > af:
        af, ag = ag, af
    e = _scale_exponent(af)
    down = 2.0**-e
    x = af * down
    y = ag * down
    h = math.sqrt(x * x + y * y)
    xh, xl = two_mult_fma(x, x)
    yh, yl = two_mult_fma(y, y)
    hh, hl = two_mult_fma(h, h)
    # xh - hh is exact (Sterbenz); the low parts are three orders smaller.
    residual = ((xh - hh) + yh) + ((xl - hl) + yl)
    try:
        h = h + residual / (2.0 * h)
    except ZeroDivisionError:
        return 0.0
    return h * 2.0**e


_BY_VARIANT: dict[HypotVariant, Callable[[float, float], float]] = {
    HypotVariant.WEAK: weak_hypot,
    HypotVariant.NAIVE: naive_scaled_hypot,
    HypotVariant.CORRECT: correct_hypot,
}


def hypot_function(variant: HypotVariant | str) -> Callable[[float, float], float]:
    return _BY_VARIANT[HypotVariant(variant)]


def hypot(f: float, g: float, variant: HypotVariant | str = HypotVariant.CORRECT) -> float:
    return _BY_VARIANT[HypotVariant(variant)](f, g)
