"""Labeled time series datasets in the UCR text format.

Loading and saving UCR text files, z-normalisation, and seeded shuffled
resampling of train/test splits.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "LabeledDataset",
    "SplitPair",
    "UcrFormatError",
    "load_ucr",
    "save_ucr",
    "znormalize",
    "znormalize_dataset",
    "resample_split",
]

# Series with population std below this are treated as constant.
DEGENERATE_SIGMA = 1e-8


class UcrFormatError(ValueError):
    """A UCR text file could not be parsed."""


def _as_series(values) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError("a time series must be one-dimensional")
    if arr.size < 2:
        raise ValueError("a time series needs at least 2 observations")
    if not np.all(np.isfinite(arr)):
        raise ValueError("time series values must be finite")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class LabeledDataset:
    """Immutable collection of labeled time series.

    Instances may have different lengths; each series is consumed at its
    own length downstream. Safe for concurrent read access.
    """

    series: tuple[np.ndarray, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "series", tuple(_as_series(s) for s in self.series))
        object.__setattr__(self, "labels", tuple(str(c) for c in self.labels))
        if len(self.series) != len(self.labels):
            raise ValueError("series and labels must be index-aligned")
        if not self.series:
            raise ValueError("dataset is empty")

    @property
    def n_instances(self) -> int:
        return len(self.series)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(s.size for s in self.series)

    @property
    def min_length(self) -> int:
        return min(self.lengths)

    @property
    def max_length(self) -> int:
        return max(self.lengths)

    @property
    def classes(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.labels)))

    def class_counts(self) -> dict[str, int]:
        return dict(Counter(self.labels))

    def subset(self, indices) -> "LabeledDataset":
        return LabeledDataset(
            tuple(self.series[i] for i in indices),
            tuple(self.labels[i] for i in indices),
        )


@dataclass(frozen=True)
class SplitPair:
    """A train/test partition of a pooled dataset.

    ``stratified`` is False when per-class resampling was infeasible and
    an unstratified shuffle was used instead.
    """

    train: LabeledDataset
    test: LabeledDataset
    seed: int
    stratified: bool = True


def load_ucr(path) -> LabeledDataset:
    """Load a dataset from a UCR text file.

    One instance per line: class label first, then the observations.
    The delimiter is auto-detected per file (tab if the first line
    contains one, comma otherwise). Line lengths may differ.

    Raises
    ------
    UcrFormatError
        Empty file, a line with fewer than three fields, a non-numeric
        token, or fewer than two instances/classes.
    OSError
        The file cannot be read.
    """
    path = Path(path)
    text = path.read_text()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise UcrFormatError(f"{path}: empty file")
    delimiter = "\t" if "\t" in lines[0] else ","
    series: list[np.ndarray] = []
    labels: list[str] = []
    for lineno, line in enumerate(lines, 1):
        fields = [f.strip() for f in line.strip().split(delimiter)]
        fields = [f for f in fields if f]
        if len(fields) < 3:
            raise UcrFormatError(
                f"{path}:{lineno}: expected a label and at least two values, "
                f"got {len(fields)} field(s)"
            )
        labels.append(fields[0])
        try:
            values = np.array([float(tok) for tok in fields[1:]])
        except ValueError:
            bad = next(tok for tok in fields[1:] if not _is_number(tok))
            raise UcrFormatError(f"{path}:{lineno}: non-numeric token {bad!r}") from None
        if not np.all(np.isfinite(values)):
            raise UcrFormatError(f"{path}:{lineno}: non-finite value")
        series.append(values)
    if len(series) < 2:
        raise UcrFormatError(f"{path}: a dataset needs at least 2 instances")
    if len(set(labels)) < 2:
        raise UcrFormatError(f"{path}: a dataset needs at least 2 distinct labels")
    try:
        return LabeledDataset(tuple(series), tuple(labels))
    except ValueError as exc:
        raise UcrFormatError(f"{path}: {exc}") from None


def _is_number(tok: str) -> bool:
    try:
        float(tok)
    except ValueError:
        return False
    return True


def save_ucr(dataset: LabeledDataset, path, delimiter: str = ",") -> None:
    """Write ``dataset`` in UCR text format with six decimal places."""
    if delimiter not in (",", "\t"):
        raise ValueError("delimiter must be comma or tab")
    lines = []
    for values, label in zip(dataset.series, dataset.labels):
        fields = [label] + [f"{v:.6f}" for v in values]
        lines.append(delimiter.join(fields))
    Path(path).write_text("\n".join(lines) + "\n")


def znormalize(series) -> np.ndarray:
    """Standardise a series to mean 0 and population std 1.

    A series whose population std is below 1e-8 maps to all zeros
    instead of raising, so flat segments never abort the pipeline.
    """
    values = np.asarray(series, dtype=np.float64)
    sigma = values.std()
    if sigma < DEGENERATE_SIGMA:
        return np.zeros_like(values)
    return (values - values.mean()) / sigma


def znormalize_dataset(dataset: LabeledDataset) -> LabeledDataset:
    """Apply :func:`znormalize` to every instance."""
    return LabeledDataset(
        tuple(znormalize(s) for s in dataset.series), dataset.labels
    )


def resample_split(train: LabeledDataset, test: LabeledDataset, seed: int) -> SplitPair:
    """Reshuffle the pooled instances into a new train/test split.

    Seed 0 is reserved and returns the original split unchanged. Other
    seeds shuffle the pool with a seeded generator and re-partition it,
    preserving the original split sizes and, where feasible, the
    original per-class counts of the train split. Stratification falls
    back to a plain shuffle (flagged on the result) when some class has
    a single pooled instance or is absent from the original train
    split.
    """
    if train.n_instances + test.n_instances < 4:
        raise ValueError("pooled split needs at least 4 instances")
    if seed == 0:
        return SplitPair(train, test, 0, stratified=True)

    pool_series = train.series + test.series
    pool_labels = train.labels + test.labels
    pool = LabeledDataset(pool_series, pool_labels)
    n_train = train.n_instances

    pool_counts = Counter(pool_labels)
    train_counts = Counter(train.labels)
    stratifiable = all(c >= 2 for c in pool_counts.values()) and set(
        pool_counts
    ) == set(train_counts)

    rng = np.random.default_rng(seed)
    perm = rng.permutation(pool.n_instances)
    if stratifiable:
        quota = dict(train_counts)
        train_idx: list[int] = []
        test_idx: list[int] = []
        for i in perm:
            label = pool_labels[i]
            if quota.get(label, 0) > 0:
                quota[label] -= 1
                train_idx.append(int(i))
            else:
                test_idx.append(int(i))
    else:
        train_idx = [int(i) for i in perm[:n_train]]
        test_idx = [int(i) for i in perm[n_train:]]

    return SplitPair(
        pool.subset(train_idx), pool.subset(test_idx), seed, stratified=stratifiable
    )
