"""High-precision reference values and ulp distances.

Reference quantities are evaluated with MPFR (through gmpy2) at 256
significand bits and rounded once to binary64. A result is treated as
ambiguous when perturbing the high-precision value by ``2**-(prec-16)``
relative changes its binary64 rounding; ambiguous values are recomputed at
doubled precision and the escalation is logged.
"""

from __future__ import annotations

import functools
import logging
import math
import struct
from typing import NamedTuple

import gmpy2
import numpy as np

__all__ = [
    "DEFAULT_PRECISION",
    "ReferenceRotation",
    "reference_rotation",
    "checked_reference_rotation",
    "reference_rotation_direct",
    "reference_hypot",
    "round_binary64",
    "ulp_rank",
    "ulp_distance",
    "ulp_distances",
]

logger = logging.getLogger(__name__)

DEFAULT_PRECISION = 256
MAX_PRECISION = 4096

_IEEE64 = gmpy2.ieee(64)
_SIGN_MASK = 0x7FFF_FFFF_FFFF_FFFF


class ReferenceRotation(NamedTuple):
    c_ref: float
    s_ref: float
    r_ref: float


@functools.lru_cache(maxsize=None)
def _context(precision: int) -> gmpy2.context:
    return gmpy2.context(precision=precision)


def round_binary64(x: gmpy2.mpfr) -> float:
    """Round-to-nearest-even binary64 value of ``x`` (subnormals and overflow included)."""
    return float(_IEEE64.plus(x))


@functools.lru_cache(maxsize=None)
def _slack_factors(precision: int) -> tuple[gmpy2.mpfr, gmpy2.mpfr]:
    ctx = _context(precision)
    slack = ctx.mul_2exp(gmpy2.mpfr(1), 16 - precision)
    return ctx.sub(1, slack), ctx.add(1, slack)


def _rounds_unambiguously(ctx: gmpy2.context, x: gmpy2.mpfr, rounded: float) -> bool:
    if not math.isfinite(rounded) or x == 0:
        return True
    below, above = _slack_factors(ctx.precision)
    return round_binary64(ctx.mul(x, below)) == rounded == round_binary64(ctx.mul(x, above))


def _rotation_at(f: float, g: float, precision: int) -> tuple[ReferenceRotation, bool]:
    ctx = _context(precision)
    F = gmpy2.mpfr(f)
    G = gmpy2.mpfr(g)
    norm2 = ctx.add(ctx.square(F), ctx.square(G))
    inv = ctx.rec_sqrt(norm2)
    c = ctx.mul(abs(F), inv)
    s = ctx.mul(G, inv)
    r = ctx.sqrt(norm2)
    if math.copysign(1.0, f) < 0:
        s = ctx.minus(s)
        r = ctx.minus(r)
    out = ReferenceRotation(round_binary64(c), round_binary64(s), round_binary64(r))
    clear = (
        _rounds_unambiguously(ctx, c, out.c_ref)
        and _rounds_unambiguously(ctx, s, out.s_ref)
        and _rounds_unambiguously(ctx, r, out.r_ref)
    )
    return out, clear


def checked_reference_rotation(
    f: float, g: float, precision: int = DEFAULT_PRECISION
) -> tuple[ReferenceRotation, int]:
    """Reference rotation plus the number of precision doublings it needed."""
    if g == 0:
        return ReferenceRotation(1.0, 0.0, f), 0
    escalations = 0
    out, clear = _rotation_at(f, g, precision)
    while not clear and precision < MAX_PRECISION:
        precision *= 2
        escalations += 1
        logger.warning("ambiguous rounding for (%r, %r); escalating to %d bits", f, g, precision)
        out, clear = _rotation_at(f, g, precision)
    if not clear:
        logger.error("rounding still ambiguous at %d bits for (%r, %r)", precision, f, g)
    return out, escalations


def reference_rotation(f: float, g: float, precision: int = DEFAULT_PRECISION) -> ReferenceRotation:
    """Correctly rounded ``(c, s, r)`` of the DLARTG-convention rotation.

    ``c = |f|/sqrt(f^2+g^2)``, ``r = copysign(sqrt(f^2+g^2), f)``,
    ``s = g/r``, each rounded independently from unrounded intermediates.
    ``g == 0`` gives ``(1, 0, f)``.
    """
    return checked_reference_rotation(f, g, precision)[0]


def reference_rotation_direct(
    f: float, g: float, precision: int = DEFAULT_PRECISION
) -> ReferenceRotation:
    """Second route: run the simplified DLARTG steps in extended precision.

    Uses ``sqrt`` and divisions where :func:`reference_rotation` uses a
    reciprocal square root and multiplications; only the final values are
    rounded to binary64.
    """
    if g == 0:
        return ReferenceRotation(1.0, 0.0, f)
    ctx = _context(precision)
    F = gmpy2.mpfr(f)
    G = gmpy2.mpfr(g)
    d = ctx.sqrt(ctx.add(ctx.square(F), ctx.square(G)))
    c = ctx.div(abs(F), d)
    r = ctx.minus(d) if math.copysign(1.0, f) < 0 else d
    s = ctx.div(G, r)
    return ReferenceRotation(round_binary64(c), round_binary64(s), round_binary64(r))


def reference_hypot(f: float, g: float, precision: int = DEFAULT_PRECISION) -> float:
    ctx = _context(precision)
    F = gmpy2.mpfr(f)
    G = gmpy2.mpfr(g)
    return round_binary64(ctx.sqrt(ctx.add(ctx.square(F), ctx.square(G))))


def ulp_rank(x: float) -> int:
    """Monotone integer index of a finite binary64; ``+0.0`` and ``-0.0`` share 0."""
    bits = struct.unpack("<q", struct.pack("<d", x))[0]
    return bits if bits >= 0 else -(bits & _SIGN_MASK)


def ulp_distance(x: float, y: float) -> int:
    """Number of binary64 steps between ``x`` and ``y``.

    Raises ``ValueError`` for non-finite values or for two nonzero values of
    opposite sign, which the scoring treats as a measurement failure.
    """
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"ulp distance undefined for {x!r}, {y!r}")
    if x != 0 and y != 0 and (x < 0) != (y < 0):
        raise ValueError(f"ulp distance across sign change: {x!r}, {y!r}")
    return abs(ulp_rank(x) - ulp_rank(y))


def _ranks(x: np.ndarray) -> np.ndarray:
    bits = np.ascontiguousarray(x, dtype=np.float64).view(np.int64)
    return np.where(bits < 0, -(bits & _SIGN_MASK), bits)


def ulp_distances(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`ulp_distance`.

    Returns ``(distance, valid)``; entries where ``valid`` is false hold -1.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    valid = np.isfinite(x) & np.isfinite(y)
    valid &= ~((x != 0) & (y != 0) & (np.signbit(x) != np.signbit(y)))
    dist = np.abs(_ranks(np.where(valid, x, 0.0)) - _ranks(np.where(valid, y, 0.0)))
    return np.where(valid, dist, -1), valid
