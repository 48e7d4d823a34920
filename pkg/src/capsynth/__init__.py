"""Mask-conditioned latent diffusion for capsule-endoscopy-style imagery.

The pipeline: semantic maps (blank / clean / dark / floats) are repaired and
split into per-class masks, a small variational autoencoder learns a latent
space, and a denoising U-Net is trained to invert a Gaussian noising process
in that space while per-class mask embeddings are injected at prescribed
stages of the network. Generation, mask-adherence reporting, and a blinded
real-vs-fake rating harness round out the toolkit.
"""

__version__ = "0.1.0"

from .masks import (
    BLANK,
    CLEAN,
    DARK,
    FLOATS,
    FOVSpec,
    MaskBundle,
    SemanticMap,
    SynthSpec,
    default_fov,
    encode_color_mask,
    encode_label_mask,
    load_color_mask,
    load_label_mask,
    reassign_corners,
    split_channels,
    synth_mask,
)

__all__ = [
    "__version__",
    "BLANK",
    "CLEAN",
    "DARK",
    "FLOATS",
    "FOVSpec",
    "MaskBundle",
    "SemanticMap",
    "SynthSpec",
    "default_fov",
    "encode_color_mask",
    "encode_label_mask",
    "load_color_mask",
    "load_label_mask",
    "reassign_corners",
    "split_channels",
    "synth_mask",
]
