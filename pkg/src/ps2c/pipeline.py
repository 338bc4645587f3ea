"""Grid orchestration: discretize, fit samplers, transform, classify.

Runs the (alpha, omega) grid, with one sampler and one K-column feature
block per cell, concatenates blocks in ascending (alpha, omega) order,
then trains and scores the built-in forest. Every random draw is tied
to (seed, alpha, omega) streams so thread count and completion order
cannot change any output value.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dataset import LabeledDataset, resample_split, znormalize_dataset
from .discretizer import SaxParams, discretize
from .forest import RandomForest
from .pattern_index import PatternIndex
from .sampler_trie import fit_sampler
from .shapelet_transform import FeatureMatrix, create_feature_sets

__all__ = [
    "PipelineConfig",
    "SkippedCell",
    "MergedFeatureSet",
    "ExperimentResult",
    "NoPatternsError",
    "fit_transform",
    "merge",
    "train_classifier",
    "evaluate",
    "run_experiment",
    "build_report",
    "PHASES",
]

logger = logging.getLogger(__name__)

PHASES = ("discretize", "fit_sampler", "transform", "train")


class NoPatternsError(RuntimeError):
    """Raised when every grid cell yields an empty sampler."""


@dataclass(frozen=True)
class PipelineConfig:
    """Grid and sampler settings; defaults follow the reference setup."""

    alphas: tuple[int, ...] = (2, 3, 4, 5, 6, 7, 8)
    omegas: tuple[int, ...] = (2, 3, 4, 5, 6)
    l_max: int = 20
    s_min: float = 0.05
    tau: float = 0.5
    k: int = 4
    seed: int = 0

    def __post_init__(self):
        alphas = tuple(sorted({int(a) for a in self.alphas}))
        omegas = tuple(sorted({int(w) for w in self.omegas}))
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "omegas", omegas)
        if not alphas:
            raise ValueError("alphas must not be empty")
        if not omegas:
            raise ValueError("omegas must not be empty")
        for a in alphas:
            if not 2 <= a <= 26:
                raise ValueError(f"alphabet size must be in [2, 26], got {a}")
        for w in omegas:
            if w < 1:
                raise ValueError(f"window size must be >= 1, got {w}")
        if self.l_max < 2:
            raise ValueError(f"l_max must be >= 2, got {self.l_max}")
        if self.s_min < 0:
            raise ValueError(f"s_min must be >= 0, got {self.s_min}")
        if self.tau <= 0:
            raise ValueError(f"tau must be > 0, got {self.tau}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if not 0 <= self.seed < 2**63:
            raise ValueError(f"seed must be a non-negative 63-bit integer, got {self.seed}")

    def to_dict(self) -> dict:
        return {
            "alphas": list(self.alphas),
            "omegas": list(self.omegas),
            "l_max": self.l_max,
            "s_min": self.s_min,
            "tau": self.tau,
            "k": self.k,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class SkippedCell:
    alpha: int
    omega: int
    reason: str


@dataclass(frozen=True)
class MergedFeatureSet:
    """Concatenated per-cell feature blocks plus bookkeeping."""

    train: FeatureMatrix
    test: FeatureMatrix
    skipped: tuple[SkippedCell, ...]
    timings: dict[str, float]


@dataclass(frozen=True)
class _CellOutcome:
    alpha: int
    omega: int
    train: FeatureMatrix | None
    test: FeatureMatrix | None
    timings: dict[str, float]
    reason: str = ""


def _run_cell(
    alpha: int,
    omega: int,
    ztrain: LabeledDataset,
    ztest: LabeledDataset,
    config: PipelineConfig,
    master_seed: int,
) -> _CellOutcome:
    timings = {phase: 0.0 for phase in PHASES}
    t0 = time.perf_counter()
    dtrain = discretize(ztrain, SaxParams(alpha, omega))
    t1 = time.perf_counter()
    timings["discretize"] = t1 - t0

    index = PatternIndex.build(dtrain, config.l_max)
    trie = fit_sampler(dtrain, index, ztrain.labels, config.l_max, config.s_min, config.tau)
    t2 = time.perf_counter()
    timings["fit_sampler"] = t2 - t1
    if trie.is_empty:
        return _CellOutcome(alpha, omega, None, None, timings, "no pattern reached s_min")

    # Stream keyed on (seed, alpha, omega): independent of scheduling order.
    rng = np.random.default_rng([master_seed, alpha, omega])
    train_fm, test_fm = create_feature_sets(
        ztrain, ztest, dtrain, index, trie, config.k, rng
    )
    timings["transform"] = time.perf_counter() - t2
    return _CellOutcome(alpha, omega, train_fm, test_fm, timings)


def merge(matrices) -> FeatureMatrix:
    """Column-wise concatenation of feature blocks in the given order."""
    mats = list(matrices)
    if not mats:
        raise ValueError("nothing to merge")
    rows = {m.values.shape[0] for m in mats}
    if len(rows) != 1:
        raise ValueError(f"feature blocks disagree on row count: {sorted(rows)}")
    values = np.concatenate([m.values for m in mats], axis=1)
    shapelets = [s for m in mats for s in m.shapelets]
    return FeatureMatrix(values, shapelets)


def fit_transform(
    train: LabeledDataset,
    test: LabeledDataset,
    config: PipelineConfig,
    *,
    n_threads: int = 1,
    master_seed: int | None = None,
) -> MergedFeatureSet:
    """Run every grid cell and concatenate the resulting feature blocks.

    Cells whose window cannot fit the shortest training series, or whose
    sampler accepts no pattern, are skipped. Test labels are never read:
    the transform touches test series values only.
    """
    if len(train.classes) < 2:
        raise ValueError("training split must contain at least two classes")
    if n_threads < 1:
        raise ValueError(f"n_threads must be >= 1, got {n_threads}")
    if master_seed is None:
        master_seed = config.seed

    t0 = time.perf_counter()
    ztrain = znormalize_dataset(train)
    ztest = znormalize_dataset(test)
    znorm_seconds = time.perf_counter() - t0

    min_len = ztrain.min_length
    skipped: list[SkippedCell] = []
    runnable: list[tuple[int, int]] = []
    for alpha in config.alphas:
        for omega in config.omegas:
            if omega >= min_len:
                reason = f"omega {omega} >= shortest training series length {min_len}"
                logger.warning("skipping cell alpha=%d omega=%d: %s", alpha, omega, reason)
                skipped.append(SkippedCell(alpha, omega, reason))
            else:
                runnable.append((alpha, omega))

    outcomes: dict[tuple[int, int], _CellOutcome] = {}
    if n_threads > 1 and len(runnable) > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            futures = {
                cell: pool.submit(_run_cell, cell[0], cell[1], ztrain, ztest, config, master_seed)
                for cell in runnable
            }
            outcomes = {cell: fut.result() for cell, fut in futures.items()}
    else:
        for alpha, omega in runnable:
            outcomes[(alpha, omega)] = _run_cell(alpha, omega, ztrain, ztest, config, master_seed)

    timings = {phase: 0.0 for phase in PHASES}
    timings["discretize"] = znorm_seconds
    train_blocks: list[FeatureMatrix] = []
    test_blocks: list[FeatureMatrix] = []
    for cell in runnable:  # already ascending (alpha, omega)
        outcome = outcomes[cell]
        for phase in PHASES:
            timings[phase] += outcome.timings[phase]
        if outcome.train is None:
            logger.warning(
                "skipping cell alpha=%d omega=%d: %s", outcome.alpha, outcome.omega, outcome.reason
            )
            skipped.append(SkippedCell(outcome.alpha, outcome.omega, outcome.reason))
        else:
            train_blocks.append(outcome.train)
            test_blocks.append(outcome.test)

    if not train_blocks:
        raise NoPatternsError("no discriminative patterns found")
    skipped.sort(key=lambda c: (c.alpha, c.omega))
    return MergedFeatureSet(merge(train_blocks), merge(test_blocks), tuple(skipped), timings)


def train_classifier(features, labels, seed=0) -> RandomForest:
    """Fit the built-in seeded forest on a feature matrix."""
    values = getattr(features, "values", features)
    return RandomForest(seed=seed).fit(values, labels)


def evaluate(model, features, labels) -> float:
    """Fraction of correct predictions on a feature matrix."""
    values = getattr(features, "values", features)
    labels = np.array([str(c) for c in labels])
    if labels.size != values.shape[0]:
        raise ValueError("labels must align with the matrix rows")
    return float(np.mean(model.predict(values) == labels))


@dataclass(frozen=True)
class ExperimentResult:
    accuracies: tuple[float, ...]
    timings: dict[str, float]
    skipped: tuple[SkippedCell, ...]
    n_columns: tuple[int, ...]
    total_seconds: float

    @property
    def mean_accuracy(self) -> float:
        return float(np.mean(self.accuracies))

    @property
    def std_accuracy(self) -> float:
        return float(np.std(self.accuracies))


def run_experiment(
    train: LabeledDataset,
    test: LabeledDataset,
    config: PipelineConfig,
    n_resamples: int = 1,
    *,
    n_threads: int = 1,
    on_resample=None,
) -> ExperimentResult:
    """Repeat split -> transform -> train -> score over shuffled resamples.

    Resample 0 keeps the original split; resample i >= 1 re-partitions
    the pooled data with seed config.seed + i. The same per-resample
    seed drives pattern sampling and the classifier, so the accuracy
    vector is reproducible byte for byte.
    """
    if n_resamples < 1:
        raise ValueError(f"n_resamples must be >= 1, got {n_resamples}")
    t_start = time.perf_counter()
    timings = {phase: 0.0 for phase in PHASES}
    accuracies: list[float] = []
    widths: list[int] = []
    skipped_union: dict[tuple[int, int], SkippedCell] = {}

    for i in range(n_resamples):
        master = config.seed + i
        split = resample_split(train, test, 0 if i == 0 else master)
        merged = fit_transform(
            split.train, split.test, config, n_threads=n_threads, master_seed=master
        )
        t_fit = time.perf_counter()
        model = train_classifier(merged.train, split.train.labels, seed=master)
        accuracy = evaluate(model, merged.test, split.test.labels)
        timings["train"] += time.perf_counter() - t_fit

        for phase in ("discretize", "fit_sampler", "transform"):
            timings[phase] += merged.timings[phase]
        accuracies.append(accuracy)
        widths.append(merged.train.n_columns)
        for cell in merged.skipped:
            skipped_union.setdefault((cell.alpha, cell.omega), cell)
        if on_resample is not None:
            on_resample(i, split, merged)

    skipped = tuple(skipped_union[key] for key in sorted(skipped_union))
    return ExperimentResult(
        tuple(accuracies), timings, skipped, tuple(widths), time.perf_counter() - t_start
    )


def build_report(config: PipelineConfig, result: ExperimentResult, n_resamples: int) -> dict:
    """Deterministic run summary: no wall times, byte-stable across runs."""
    return {
        "config": config.to_dict(),
        "n_resamples": n_resamples,
        "accuracies": list(result.accuracies),
        "mean_accuracy": result.mean_accuracy,
        "std_accuracy": result.std_accuracy,
        "n_feature_columns": list(result.n_columns),
        "skipped_cells": [
            {"alpha": c.alpha, "omega": c.omega, "reason": c.reason} for c in result.skipped
        ],
    }
