"""Compensated Givens rotations, hypot variants and an ulp-scoring harness."""

__version__ = "0.1.0"

from rotg_lab.eft import TwinFloat, dekker_split, two_mult_dekker, two_mult_fma, two_square_dekker
from rotg_lab.givens import (
    Algorithm,
    CorrectionPair,
    ResidualPair,
    Rotation,
    apply_rotation,
    compensated_lartg,
    compensated_lartg_nofma,
    lapack_lartg,
    residuals,
    simplified_lartg,
)
from rotg_lab.hypot import HypotVariant, correct_hypot, naive_scaled_hypot, weak_hypot
from rotg_lab.oracle import reference_hypot, reference_rotation, ulp_distance

__all__ = [
    "Algorithm",
    "CorrectionPair",
    "HypotVariant",
    "ResidualPair",
    "Rotation",
    "TwinFloat",
    "apply_rotation",
    "compensated_lartg",
    "compensated_lartg_nofma",
    "correct_hypot",
    "dekker_split",
    "lapack_lartg",
    "naive_scaled_hypot",
    "reference_hypot",
    "reference_rotation",
    "residuals",
    "simplified_lartg",
    "two_mult_dekker",
    "two_mult_fma",
    "two_square_dekker",
    "ulp_distance",
    "weak_hypot",
]
