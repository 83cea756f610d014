"""Standard 512x512 grayscale covers.

The acceptance and demo cover set is the three natural photographs that ship
with scikit-image at 512x512: ``camera``, ``astronaut`` (converted to luma) and
``moon``. scikit-image is an optional dependency used only here.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .pgm import save_pgm

COVER_NAMES = ("astronaut", "camera", "moon")


def _to_uint8_luma(rgb) -> np.ndarray:
    from skimage.color import rgb2gray

    return np.round(rgb2gray(rgb) * 255.0).astype(np.uint8)


def standard_covers() -> dict[str, np.ndarray]:
    try:
        from skimage import data
    except ImportError as exc:  # pragma: no cover - depends on the environment
        raise ImportError("standard_covers() needs scikit-image (pip install scikit-image)") from exc
    return {
        "astronaut": _to_uint8_luma(data.astronaut()),
        "camera": np.asarray(data.camera(), dtype=np.uint8),
        "moon": np.asarray(data.moon(), dtype=np.uint8),
    }


def write_covers(directory, covers: dict[str, np.ndarray] | None = None) -> list[Path]:
    """Write covers as ``<name>.pgm`` into ``directory`` (created if needed)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    covers = standard_covers() if covers is None else covers
    paths = []
    for name, img in sorted(covers.items()):
        path = directory / f"{name}.pgm"
        save_pgm(path, img)
        paths.append(path)
    return paths
