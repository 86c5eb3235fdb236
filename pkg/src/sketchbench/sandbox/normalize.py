"""Image normalization: every render is compared and scored on the same footing."""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image


def normalize_image(image: Image.Image, canvas_size: int = 384) -> Image.Image:
    """White-composited, center-padded-to-square, resampled 8-bit RGB.

    An image that is already square RGB at the target size passes through
    bitwise-identical.
    """
    if image.mode in ("RGBA", "LA", "PA") or (image.mode == "P" and "transparency" in image.info):
        rgba = image.convert("RGBA")
        background = Image.new("RGBA", rgba.size, (255, 255, 255, 255))
        image = Image.alpha_composite(background, rgba).convert("RGB")
    elif image.mode != "RGB":
        image = image.convert("RGB")

    w, h = image.size
    if w != h:
        side = max(w, h)
        padded = Image.new("RGB", (side, side), (255, 255, 255))
        padded.paste(image, ((side - w) // 2, (side - h) // 2))
        image = padded

    if image.size != (canvas_size, canvas_size):
        image = image.resize((canvas_size, canvas_size), Image.LANCZOS)
    return image


def pixel_std(image: Image.Image) -> float:
    """Standard deviation of grayscale pixel values on a 0..1 scale."""
    arr = np.asarray(image.convert("L"), dtype=np.float64) / 255.0
    return float(arr.std())


def is_blank(image: Image.Image, threshold: float = 1.0 / 255) -> bool:
    return pixel_std(image) < threshold


def load_image(path: Path | str, max_pixels: int | None = None) -> Image.Image:
    with Image.open(path) as img:
        if max_pixels is not None and img.width * img.height > max_pixels:
            raise ValueError(
                f"image {img.width}x{img.height} exceeds the {max_pixels}-pixel output limit"
            )
        return img.convert(img.mode).copy()
