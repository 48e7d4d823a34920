"""Exception types shared across the package."""


class CapsynthError(Exception):
    """Base class for all package-specific errors."""


class DecodeError(CapsynthError):
    """A raster file could not be decoded into a semantic map."""


class UnknownColor(DecodeError):
    """A color mask contains a pixel that is not in the legend palette."""

    def __init__(self, x: int, y: int, rgb: tuple):
        self.x = x
        self.y = y
        self.rgb = tuple(int(v) for v in rgb)
        super().__init__(f"pixel (x={x}, y={y}) has off-legend color {self.rgb}")


class InfeasibleSpec(CapsynthError, ValueError):
    """Requested mask composition cannot be realized."""


class MissingMask(CapsynthError):
    """An image in a paired dataset has no matching mask file."""

    def __init__(self, stem: str):
        self.stem = stem
        super().__init__(f"no mask found for image '{stem}'")


class ShapeMismatch(CapsynthError):
    """Two rasters that must share a resolution do not."""


class EmptyDataset(CapsynthError):
    """A dataset folder yielded no samples."""


class ShapeError(CapsynthError):
    """A tensor does not have the shape a model or op requires."""


class BadRange(CapsynthError, ValueError):
    """Noise-schedule parameters are out of their valid range."""


class TimestepOutOfRange(CapsynthError, IndexError):
    """A diffusion timestep lies outside 1..T."""


class ConfigError(CapsynthError, ValueError):
    """A model or run configuration violates its invariants."""


class NaNLoss(CapsynthError):
    """Training produced a non-finite loss."""

    def __init__(self, step: int, value: float):
        self.step = step
        self.value = value
        super().__init__(f"non-finite loss {value!r} at step {step}")


class MissingAE(CapsynthError):
    """Latent-space training requires a pretrained autoencoder checkpoint."""


class FormatError(CapsynthError):
    """A checkpoint file is truncated or carries an unknown format tag."""


class VersionError(CapsynthError):
    """A checkpoint's configuration does not match the requested one."""


class NotEnoughImages(CapsynthError):
    """A directory holds fewer images than a rating session needs."""


class IncompleteResponses(CapsynthError):
    """A rater did not answer every item of a session."""

    def __init__(self, rater: str, missing: int):
        self.rater = rater
        self.missing = missing
        super().__init__(f"rater '{rater}' left {missing} item(s) unanswered")


class ResolutionMismatch(CapsynthError):
    """A mask's resolution differs from the model's and resampling is off."""
