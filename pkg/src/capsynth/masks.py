"""Semantic segmentation maps for capsule-frame imagery.

A semantic map labels every pixel of a frame with one of four classes:
blank (outside the circular field of view), clean mucosa, dark, or
floats/bubbles. Maps travel between tools in two lossless raster formats:

* color masks: RGB rasters using one exact legend color per class,
* label masks: single-channel 8-bit rasters holding the ids 0..3.

The label raster is the canonical in-pipeline format; color rasters are an
interchange format only. All functions here are pure and safe to call from
any number of workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import DecodeError, InfeasibleSpec, UnknownColor

BLANK, CLEAN, DARK, FLOATS = 0, 1, 2, 3
N_CLASSES = 4
CLASS_NAMES = {BLANK: "blank", CLEAN: "clean", DARK: "dark", FLOATS: "floats"}

# Interchange palette. Exact triples; decoding never does nearest-color
# matching, an off-legend pixel is an error.
LEGEND = {
    BLANK: (222, 184, 135),
    CLEAN: (255, 0, 0),
    DARK: (0, 255, 0),
    FLOATS: (0, 0, 255),
}

MIN_SIDE = 8


@dataclass(frozen=True, eq=False)
class SemanticMap:
    """Per-pixel class labels on an H x W grid.

    `labels` is a read-only uint8 array with values in 0..3. Both sides of
    the grid must be at least 8 pixels.
    """

    labels: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.labels, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError(f"labels must be 2-D, got shape {arr.shape}")
        if arr.shape[0] < MIN_SIDE or arr.shape[1] < MIN_SIDE:
            raise ValueError(f"map must be at least {MIN_SIDE}x{MIN_SIDE}, got {arr.shape}")
        if arr.max(initial=0) >= N_CLASSES:
            raise ValueError(f"labels contain ids >= {N_CLASSES}")
        arr.setflags(write=False)
        object.__setattr__(self, "labels", arr)

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    def class_counts(self) -> np.ndarray:
        """Pixel count per class id, length 4."""
        return np.bincount(self.labels.ravel(), minlength=N_CLASSES)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SemanticMap):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)


@dataclass(frozen=True)
class FOVSpec:
    """Circular field of view: pixels with centers outside it are blank.

    The disk must intersect the image rectangle it is applied to; that is
    checked where an image is available (`reassign_corners`).
    """

    center_x: float
    center_y: float
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be > 0, got {self.radius}")


def default_fov(width: int, height: int) -> FOVSpec:
    """Inscribed circle of the image rectangle."""
    return FOVSpec(width / 2.0, height / 2.0, min(width, height) / 2.0)


def _outside_fov(fov: FOVSpec, height: int, width: int) -> np.ndarray:
    # Pixel (i, j) has center (j + 0.5, i + 0.5); strictly outside means
    # distance > radius, so boundary pixels stay inside.
    ys = np.arange(height)[:, None] + 0.5
    xs = np.arange(width)[None, :] + 0.5
    d2 = (xs - fov.center_x) ** 2 + (ys - fov.center_y) ** 2
    return d2 > fov.radius**2


def _fov_intersects(fov: FOVSpec, height: int, width: int) -> bool:
    nx = min(max(fov.center_x, 0.0), float(width))
    ny = min(max(fov.center_y, 0.0), float(height))
    return (nx - fov.center_x) ** 2 + (ny - fov.center_y) ** 2 <= fov.radius**2


@dataclass(frozen=True, eq=False)
class MaskBundle:
    """Per-class binary masks plus the full map they were split from.

    `dark`, `clean`, `floats` are pairwise-disjoint H x W binary masks that
    together cover exactly the non-blank pixels of `full`.
    """

    dark: np.ndarray
    clean: np.ndarray
    floats: np.ndarray
    full: SemanticMap

    def __post_init__(self):
        shape = self.full.labels.shape
        masks = {}
        for name in ("dark", "clean", "floats"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.uint8)
            if arr.shape != shape:
                raise ValueError(f"{name} mask shape {arr.shape} != map shape {shape}")
            if arr.max(initial=0) > 1:
                raise ValueError(f"{name} mask is not binary")
            arr.setflags(write=False)
            masks[name] = arr
        total = masks["dark"].astype(np.int32) + masks["clean"] + masks["floats"]
        if total.max(initial=0) > 1:
            raise ValueError("class masks overlap")
        nonblank = self.full.labels != BLANK
        if not np.array_equal(total.astype(bool), nonblank):
            raise ValueError("class masks do not partition the non-blank region")
        for name, arr in masks.items():
            object.__setattr__(self, name, arr)

    @property
    def height(self) -> int:
        return self.full.height

    @property
    def width(self) -> int:
        return self.full.width

    def __eq__(self, other) -> bool:
        if not isinstance(other, MaskBundle):
            return NotImplemented
        return (
            self.full == other.full
            and np.array_equal(self.dark, other.dark)
            and np.array_equal(self.clean, other.clean)
            and np.array_equal(self.floats, other.floats)
        )


def load_color_mask(path) -> SemanticMap:
    """Decode a color-coded RGB raster into a semantic map.

    Every pixel must match one legend color exactly; the first off-legend
    pixel raises UnknownColor. Malformed files raise DecodeError.
    """
    try:
        with Image.open(path) as img:
            rgb = np.asarray(img.convert("RGB"))
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise DecodeError(f"cannot decode color mask {path}: {exc}") from exc
    labels = np.full(rgb.shape[:2], 255, dtype=np.uint8)
    for cid, color in LEGEND.items():
        labels[np.all(rgb == np.array(color, dtype=np.uint8), axis=-1)] = cid
    bad = np.argwhere(labels == 255)
    if bad.size:
        i, j = bad[0]
        raise UnknownColor(x=int(j), y=int(i), rgb=tuple(rgb[i, j]))
    try:
        return SemanticMap(labels)
    except ValueError as exc:
        raise DecodeError(f"invalid map in {path}: {exc}") from exc


def encode_color_mask(m: SemanticMap, path) -> None:
    """Write a map as a color-coded RGB png. Round-trips bit-exactly."""
    palette = np.array([LEGEND[c] for c in range(N_CLASSES)], dtype=np.uint8)
    Image.fromarray(palette[m.labels], mode="RGB").save(path, format="PNG")


def load_label_mask(path) -> SemanticMap:
    """Decode a canonical single-channel label raster (ids 0..3)."""
    try:
        with Image.open(path) as img:
            arr = np.asarray(img)
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise DecodeError(f"cannot decode label mask {path}: {exc}") from exc
    if arr.ndim != 2:
        raise DecodeError(f"label mask {path} is not single-channel (shape {arr.shape})")
    if arr.max(initial=0) >= N_CLASSES:
        raise DecodeError(f"label mask {path} holds values >= {N_CLASSES}")
    try:
        return SemanticMap(arr.astype(np.uint8))
    except ValueError as exc:
        raise DecodeError(f"invalid map in {path}: {exc}") from exc


def encode_label_mask(m: SemanticMap, path) -> None:
    """Write a map in the canonical single-channel label format."""
    Image.fromarray(m.labels, mode="L").save(path, format="PNG")


def reassign_corners(m: SemanticMap, fov: FOVSpec) -> SemanticMap:
    """Set every pixel whose center lies strictly outside the FOV disk to blank.

    Pixels inside (or on) the disk boundary are unchanged. Idempotent.
    """
    if not _fov_intersects(fov, m.height, m.width):
        raise ValueError("FOV disk does not intersect the image rectangle")
    outside = _outside_fov(fov, m.height, m.width)
    labels = m.labels.copy()
    labels[outside] = BLANK
    return SemanticMap(labels)


def split_channels(m: SemanticMap) -> MaskBundle:
    """Split a map into the three per-class binary masks plus the full map."""
    return MaskBundle(
        dark=(m.labels == DARK).astype(np.uint8),
        clean=(m.labels == CLEAN).astype(np.uint8),
        floats=(m.labels == FLOATS).astype(np.uint8),
        full=m,
    )


@dataclass(frozen=True)
class SynthSpec:
    """Composition request for a procedurally generated map.

    `clean`, `dark`, `floats` are target area fractions measured over the
    non-blank pixels. Fractions must each lie in [0, 1] and sum to at most 1;
    if they sum to less than 1 the remainder is assigned to clean, so specs
    that sum to 1 hit their targets exactly (up to rounding). Blob counts
    are drawn uniformly from the inclusive ranges.
    """

    width: int = 64
    height: int = 64
    clean: float = 0.6
    dark: float = 0.2
    floats: float = 0.2
    dark_blobs: tuple[int, int] = (1, 3)
    float_blobs: tuple[int, int] = (2, 6)

    def __post_init__(self):
        for name in ("clean", "dark", "floats"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise InfeasibleSpec(f"{name} fraction {v} outside [0, 1]")
        total = self.clean + self.dark + self.floats
        if total > 1.0 + 1e-9:
            raise InfeasibleSpec(f"requested fractions sum to {total} > 1")
        if self.width < MIN_SIDE or self.height < MIN_SIDE:
            raise InfeasibleSpec(f"map must be at least {MIN_SIDE}x{MIN_SIDE}")


def _blob_field(rng: np.random.Generator, height: int, width: int, n_blobs: int) -> np.ndarray:
    """Sum of random isotropic Gaussian bumps, plus a tiny tie-breaker."""
    ys = np.arange(height)[:, None] + 0.5
    xs = np.arange(width)[None, :] + 0.5
    field = np.zeros((height, width))
    scale = min(width, height)
    for _ in range(n_blobs):
        cx = rng.uniform(0.15, 0.85) * width
        cy = rng.uniform(0.15, 0.85) * height
        sigma = rng.uniform(0.08, 0.22) * scale
        amp = rng.uniform(0.5, 1.5)
        field += amp * np.exp(-((xs - cx) ** 2 + (ys - cy) ** 2) / (2 * sigma**2))
    field += 1e-9 * rng.random((height, width))
    return field


def synth_mask(spec: SynthSpec, seed) -> SemanticMap:
    """Generate a deterministic map matching the requested composition.

    Blank lies exactly outside a generated FOV disk. Dark and floats regions
    are blobby level sets of random Gaussian fields, thresholded at the
    quantile that realizes the requested pixel counts; clean takes the rest.
    """
    rng = np.random.default_rng(seed)
    h, w = spec.height, spec.width
    radius = 0.5 * min(w, h) * rng.uniform(0.92, 1.0)
    cx = w / 2.0 + rng.uniform(-0.02, 0.02) * w
    cy = h / 2.0 + rng.uniform(-0.02, 0.02) * h
    fov = FOVSpec(cx, cy, radius)

    inside = ~_outside_fov(fov, h, w)
    n_in = int(inside.sum())
    labels = np.full((h, w), BLANK, dtype=np.uint8)
    labels[inside] = CLEAN

    target_dark = int(round(spec.dark * n_in))
    target_floats = min(int(round(spec.floats * n_in)), n_in - target_dark)

    n_dark_blobs = int(rng.integers(spec.dark_blobs[0], spec.dark_blobs[1] + 1))
    dark_field = _blob_field(rng, h, w, n_dark_blobs)
    n_float_blobs = int(rng.integers(spec.float_blobs[0], spec.float_blobs[1] + 1))
    float_field = _blob_field(rng, h, w, n_float_blobs)

    if target_dark > 0:
        vals = np.where(inside, dark_field, -np.inf).ravel()
        pick = np.argsort(vals, kind="stable")[-target_dark:]
        labels.ravel()[pick] = DARK
    if target_floats > 0:
        free = inside & (labels != DARK)
        vals = np.where(free, float_field, -np.inf).ravel()
        pick = np.argsort(vals, kind="stable")[-target_floats:]
        labels.ravel()[pick] = FLOATS
    return SemanticMap(labels)
