"""Error-free product transformations for binary64.

Every routine returns a :class:`TwinFloat` ``(hi, lo)`` with ``hi = fl(a*b)``
and ``hi + lo == a*b`` exactly, provided the product neither overflows nor
lands in the subnormal range. Out-of-range inputs are not guarded; the
exactness contract is simply void there.
"""

from __future__ import annotations

import ctypes
import ctypes.util
import math
from typing import Callable, NamedTuple

__all__ = [
    "SPLITTER",
    "TwinFloat",
    "fma",
    "two_mult_fma",
    "dekker_split",
    "two_mult_dekker",
    "two_square_dekker",
]

# 2**27 + 1, binary64 only.
SPLITTER = 134217729.0


class TwinFloat(NamedTuple):
    hi: float
    lo: float


def _load_fma() -> Callable[[float, float, float], float]:
    native = getattr(math, "fma", None)
    if native is not None:
        return native
    name = ctypes.util.find_library("m")
    if name is not None:
        try:
            libm = ctypes.CDLL(name)
            c_fma = libm.fma
        except (OSError, AttributeError):
            pass
        else:
            c_fma.restype = ctypes.c_double
            c_fma.argtypes = (ctypes.c_double, ctypes.c_double, ctypes.c_double)
            return c_fma

    import gmpy2

    ctx = gmpy2.ieee(64)

    def gmpy2_fma(a: float, b: float, c: float) -> float:
        return float(ctx.fma(a, b, c))

    return gmpy2_fma


# Correctly rounded a*b + c with a single rounding.
fma: Callable[[float, float, float], float] = _load_fma()


def two_mult_fma(a: float, b: float) -> TwinFloat:
    p = a * b
    return TwinFloat(p, fma(a, b, -p))


def dekker_split(a: float) -> tuple[float, float]:
    """Veltkamp split of ``a`` into a 26-bit head and a 26-bit signed tail.

    ``head + tail == a`` exactly and each half has few enough significand
    bits that any pairwise product of halves is exact. Requires
    ``|a| * SPLITTER`` not to overflow.
    """
    p = SPLITTER * a
    q = a - p
    head = q + p
    return head, a - head


def two_mult_dekker(a: float, b: float) -> TwinFloat:
    """Exact product without fma; bitwise equal to :func:`two_mult_fma` in range."""
    a_head, a_tail = dekker_split(a)
    b_head, b_tail = dekker_split(b)
    p = a * b
    pp = (a_head * b_head - p) + a_head * b_tail + b_head * a_tail + a_tail * b_tail
    return TwinFloat(p, pp)


def two_square_dekker(a: float) -> TwinFloat:
    a_head, a_tail = dekker_split(a)
    p = a * a
    pp = (a_head * a_head - p) + 2 * a_head * a_tail + a_tail * a_tail
    return TwinFloat(p, pp)
