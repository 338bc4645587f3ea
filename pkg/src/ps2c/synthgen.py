"""Synthetic two-class dataset with planted, localized motifs.

Class "1" carries a rectangular bump, class "2" a V-shaped dip, both at
a random offset per instance on top of Gaussian noise. The shapes are
deliberately easy to separate so the dataset works as a correctness
probe for the full pipeline and as a size-controlled timing workload.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import LabeledDataset

__all__ = ["SynthSpec", "generate"]


@dataclass(frozen=True)
class SynthSpec:
    n_per_class: int = 50
    length: int = 128
    noise_sigma: float = 0.1
    motif_length: int = 16
    amplitude: float = 3.0
    seed: int = 0

    def __post_init__(self):
        if self.n_per_class < 1:
            raise ValueError(f"n_per_class must be >= 1, got {self.n_per_class}")
        if self.motif_length < 2:
            raise ValueError(f"motif_length must be >= 2, got {self.motif_length}")
        if self.length < self.motif_length:
            raise ValueError(
                f"length {self.length} is shorter than motif_length {self.motif_length}"
            )
        if self.noise_sigma < 0:
            raise ValueError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.amplitude <= 0:
            raise ValueError(f"amplitude must be > 0, got {self.amplitude}")


def _motifs(spec: SynthSpec) -> tuple[np.ndarray, np.ndarray]:
    m = spec.motif_length
    bump = np.full(m, spec.amplitude)
    vee = spec.amplitude * (np.abs(np.linspace(-1.0, 1.0, m)) - 1.0)
    return bump, vee


def generate(spec: SynthSpec) -> LabeledDataset:
    rng = np.random.default_rng(spec.seed)
    bump, vee = _motifs(spec)
    max_offset = spec.length - spec.motif_length

    series = []
    labels = []
    for label, motif in (("1", bump), ("2", vee)):
        for _ in range(spec.n_per_class):
            x = rng.normal(0.0, spec.noise_sigma, size=spec.length)
            start = int(rng.integers(0, max_offset + 1))
            x[start : start + spec.motif_length] += motif
            series.append(x)
            labels.append(label)
    return LabeledDataset(tuple(series), tuple(labels))
