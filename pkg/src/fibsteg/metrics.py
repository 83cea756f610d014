"""Stego quality: MSE and PSNR against an 8-bit peak."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pgm import as_gray_image

PEAK = 255


class ShapeMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr_db: float  # math.inf when the images are identical

    def as_row(self) -> tuple[str, str]:
        return format_float(self.mse), format_float(self.psnr_db)


def format_float(x: float) -> str:
    """CSV form used across reports; infinities print as ``inf``."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return f"{x:.10g}"


def mse(a, b) -> float:
    a, b = as_gray_image(a), as_gray_image(b)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"shape mismatch: {a.shape} vs {b.shape}")
    diff = a.astype(np.int64) - b.astype(np.int64)
    return float(np.mean(diff * diff, dtype=np.float64))


def psnr(a, b) -> QualityReport:
    err = mse(a, b)
    if err == 0:
        return QualityReport(0.0, math.inf)
    return QualityReport(err, 10.0 * math.log10(PEAK * PEAK / err))
