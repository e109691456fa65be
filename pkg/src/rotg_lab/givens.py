"""Givens rotation constructors and their residual diagnostics.

All constructors follow the DLARTG convention: ``c = |f|/d >= 0``,
``r = copysign(d, f)`` and ``s = g/r``, with ``(c, s, r) = (1, 0, f)``
whenever ``g == 0``.

The compensated constructors start from the plainly computed rotation
``(cb, sb)``, evaluate the two defects

    eps_norm = (1 - cb**2 - sb**2) / 2
    eps_orth = (cb*g - sb*f) / r

with exact products, and then apply the transposed rotation to them to get
additive corrections for ``cb`` and ``sb``. ``r`` is never corrected.
"""

from __future__ import annotations

import enum
import math
from typing import Callable, NamedTuple

from rotg_lab.eft import fma, two_mult_dekker, two_mult_fma, two_square_dekker
from rotg_lab.hypot import LAPACK, HypotVariant, hypot_function

__all__ = [
    "Algorithm",
    "Rotation",
    "ResidualPair",
    "CorrectionPair",
    "simplified_lartg",
    "lapack_lartg",
    "residuals",
    "residuals_nofma",
    "corrections",
    "compensated_lartg",
    "compensated_lartg_nofma",
    "apply_rotation",
    "constructor",
]


class Algorithm(str, enum.Enum):
    SIMPLIFIED = "simplified"
    LAPACK = "lapack"
    COMPENSATED = "compensated"
    COMPENSATED_NOFMA = "compensated-nofma"


class Rotation(NamedTuple):
    c: float
    s: float
    r: float


class ResidualPair(NamedTuple):
    eps_norm: float
    eps_orth: float


class CorrectionPair(NamedTuple):
    delta_c: float
    delta_s: float


def simplified_lartg(f: float, g: float, variant: HypotVariant | str) -> Rotation:
    if g == 0:
        return Rotation(1.0, 0.0, f)
    d = hypot_function(variant)(f, g)
    r = math.copysign(d, f)
    return Rotation(abs(f) / d, g / r, r)


def _fortran_sign(a: float, b: float, signed_zero: bool) -> float:
    if signed_zero:
        return math.copysign(a, b)
    return abs(a) if b >= 0 else -abs(a)


def lapack_lartg(
    f: float,
    g: float,
    include_f_zero_branch: bool = True,
    *,
    signed_zero: bool = False,
) -> Rotation:
    """Line-by-line port of the DLARTG core from LAPACK 3.12.0.

    ``include_f_zero_branch=False`` drops the dedicated ``f == 0`` branch,
    which then falls through to the scaled branch. ``signed_zero`` selects
    how Fortran's ``SIGN(a, b)`` treats ``b = -0.0``: by default as
    non-negative (what makes the two branch settings agree bitwise); with
    ``signed_zero=True`` the IEEE sign bit of ``b`` is honoured.
    """
    rtmin, rtmax = LAPACK.rtmin, LAPACK.rtmax
    safmin, safmax = LAPACK.safmin, LAPACK.safmax
    f1 = abs(f)
    g1 = abs(g)
    if g == 0:
        c = 1.0
        s = 0.0
        r = f
    elif include_f_zero_branch and f == 0:
        c = 0.0
        s = _fortran_sign(1.0, g, signed_zero)
        r = g1
    elif f1 > rtmin and f1 < rtmax and g1 > rtmin and g1 < rtmax:
        d = math.sqrt(f * f + g * g)
        c = f1 / d
        r = _fortran_sign(d, f, signed_zero)
        s = g / r
    else:
        u = min(safmax, max(safmin, f1, g1))
        fs = f / u
        gs = g / u
        d = math.sqrt(fs * fs + gs * gs)
        c = abs(fs) / d
        r = _fortran_sign(d, f, signed_zero)
        s = gs / r
        r = r * u
    return Rotation(c, s, r)


def _eps_norm(c1: float, c2: float, s1: float, s2: float, c_larger: bool) -> float:
    # descending magnitude: leading parts first, larger quantity first
    if c_larger:
        return (1 - c1 - s1 - c2 - s2) / 2
    return (1 - s1 - c1 - s2 - c2) / 2


def residuals(rot: Rotation, f: float, g: float) -> ResidualPair:
    """Normality and orthogonality defects of ``rot`` using fma products."""
    c, s, r = rot
    if r == 0:
        raise ValueError("residuals need a rotation with r != 0")
    c1, c2 = two_mult_fma(c, c)
    s1, s2 = two_mult_fma(s, s)
    eps_norm = _eps_norm(c1, c2, s1, s2, abs(c) >= abs(s))
    p, pp = two_mult_fma(c, g)
    eps_orth = (fma(-s, f, p) + pp) / r
    return ResidualPair(eps_norm, eps_orth)


def residuals_nofma(rot: Rotation, f: float, g: float) -> ResidualPair:
    """Same defects as :func:`residuals` built from Dekker products only."""
    c, s, r = rot
    if r == 0:
        raise ValueError("residuals need a rotation with r != 0")
    c1, c2 = two_square_dekker(c)
    s1, s2 = two_square_dekker(s)
    eps_norm = _eps_norm(c1, c2, s1, s2, abs(c) >= abs(s))
    p, pp = two_mult_dekker(c, g)
    q, qq = two_mult_dekker(-s, f)
    eps_orth = (p + q + pp + qq) / r
    return ResidualPair(eps_norm, eps_orth)


def corrections(rot: Rotation, eps: ResidualPair) -> CorrectionPair:
    # transpose of the computed rotation applied to the defect vector;
    # the second-order terms delta_c**2 and delta_s**2 are dropped
    c, s = rot.c, rot.s
    eps_norm, eps_orth = eps
    return CorrectionPair(c * eps_norm - s * eps_orth, s * eps_norm + c * eps_orth)


def _compensate(
    f: float,
    g: float,
    variant: HypotVariant | str,
    measure: Callable[[Rotation, float, float], ResidualPair],
) -> Rotation:
    rot = simplified_lartg(f, g, variant)
    if g == 0:
        return rot
    delta_c, delta_s = corrections(rot, measure(rot, f, g))
    return Rotation(rot.c + delta_c, rot.s + delta_s, rot.r)


def compensated_lartg(f: float, g: float, variant: HypotVariant | str) -> Rotation:
    return _compensate(f, g, variant, residuals)


def compensated_lartg_nofma(f: float, g: float, variant: HypotVariant | str) -> Rotation:
    return _compensate(f, g, variant, residuals_nofma)


def apply_rotation(rot: Rotation, x: float, y: float) -> tuple[float, float]:
    c, s = rot.c, rot.s
    return c * x + s * y, -s * x + c * y


def constructor(
    algorithm: Algorithm | str, variant: HypotVariant | str
) -> Callable[[float, float], Rotation]:
    """Bind an algorithm tag and hypot variant into a ``(f, g) -> Rotation`` callable.

    The LAPACK port carries its own scaling and ignores ``variant``.
    """
    algorithm = Algorithm(algorithm)
    variant = HypotVariant(variant)
    if algorithm is Algorithm.LAPACK:
        return lapack_lartg
    build = {
        Algorithm.SIMPLIFIED: simplified_lartg,
        Algorithm.COMPENSATED: compensated_lartg,
        Algorithm.COMPENSATED_NOFMA: compensated_lartg_nofma,
    }[algorithm]

    def construct(f: float, g: float) -> Rotation:
        return build(f, g, variant)

    return construct
