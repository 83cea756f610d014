import math

import numpy as np
import pytest

from fibsteg.metrics import QualityReport, ShapeMismatchError, format_float, mse, psnr


def test_identical_images_are_infinite():
    img = np.arange(64, dtype=np.uint8).reshape(8, 8)
    q = psnr(img, img)
    assert q == QualityReport(0.0, math.inf)
    assert q.as_row() == ("0", "inf")


def test_constant_offset():
    a = np.full((16, 16), 100, np.uint8)
    q = psnr(a, a + 5)
    assert q.mse == 25.0
    assert q.psnr_db == pytest.approx(10 * math.log10(255 ** 2 / 25))
    assert q.psnr_db == pytest.approx(34.151, abs=1e-3)


def test_symmetric_and_no_wraparound(rng):
    a = rng.integers(0, 256, (20, 20), dtype=np.uint8)
    b = rng.integers(0, 256, (20, 20), dtype=np.uint8)
    assert psnr(a, b) == psnr(b, a)
    expected = np.mean((a.astype(float) - b.astype(float)) ** 2)
    assert mse(a, b) == pytest.approx(expected)


def test_single_lsb_flip_everywhere():
    a = np.full((4, 4), 10, np.uint8)
    assert psnr(a, a ^ 1).psnr_db == pytest.approx(48.1308, abs=1e-4)


def test_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        psnr(np.zeros((4, 4), np.uint8), np.zeros((4, 5), np.uint8))


@pytest.mark.parametrize("x, text", [
    (math.inf, "inf"), (-math.inf, "-inf"), (math.nan, "nan"), (0.5, "0.5"), (51.14213, "51.14213"),
])
def test_format_float(x, text):
    assert format_float(x) == text
