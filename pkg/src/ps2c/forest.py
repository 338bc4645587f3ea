"""Seeded random-forest classifier for the merged feature matrices.

Self-contained (no learning-library dependency) so pipeline results are
fully reproducible from the seed alone: per-tree bootstrap, Gini
splits over sqrt(k) feature subsets, unlimited depth, majority vote.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["RandomForest"]


class _Node:
    __slots__ = ("feature", "threshold", "left", "right", "value")

    def __init__(self, value: int):
        self.feature = -1
        self.threshold = 0.0
        self.left = None
        self.right = None
        self.value = value


def _grow(X: np.ndarray, y: np.ndarray, rng: np.random.Generator, m: int, n_classes: int) -> _Node:
    counts = np.bincount(y, minlength=n_classes)
    node = _Node(int(counts.argmax()))
    n = y.size
    if counts.max() == n or n < 2:
        return node

    k = X.shape[1]
    features = rng.choice(k, size=min(m, k), replace=False)
    best_score = np.inf
    best_feature = -1
    best_threshold = 0.0
    onehot = np.eye(n_classes)[y]
    totals = counts.astype(np.float64)
    for f in features:
        col = X[:, f]
        order = np.argsort(col, kind="stable")
        xs = col[order]
        if xs[0] == xs[-1]:
            continue
        cum = np.cumsum(onehot[order], axis=0)
        cuts = np.nonzero(xs[1:] > xs[:-1])[0] + 1  # left-side sizes
        left = cum[cuts - 1]
        right = totals - left
        nl = cuts.astype(np.float64)
        nr = n - nl
        gini_left = 1.0 - ((left / nl[:, None]) ** 2).sum(axis=1)
        gini_right = 1.0 - ((right / nr[:, None]) ** 2).sum(axis=1)
        weighted = (nl * gini_left + nr * gini_right) / n
        j = int(np.argmin(weighted))
        if weighted[j] < best_score:
            best_score = float(weighted[j])
            best_feature = int(f)
            lo, hi = xs[cuts[j] - 1], xs[cuts[j]]
            threshold = 0.5 * (lo + hi)
            if threshold >= hi:  # midpoint collapsed onto the upper value
                threshold = lo
            best_threshold = float(threshold)
    if best_feature < 0:
        return node

    node.feature = best_feature
    node.threshold = best_threshold
    mask = X[:, best_feature] <= best_threshold
    node.left = _grow(X[mask], y[mask], rng, m, n_classes)
    node.right = _grow(X[~mask], y[~mask], rng, m, n_classes)
    return node


def _predict_tree(node: _Node, X: np.ndarray, idx: np.ndarray, out: np.ndarray) -> None:
    if node.left is None:
        out[idx] = node.value
        return
    mask = X[idx, node.feature] <= node.threshold
    _predict_tree(node.left, X, idx[mask], out)
    _predict_tree(node.right, X, idx[~mask], out)


class RandomForest:
    """Bootstrap ensemble of Gini decision trees with seeded randomness.

    ``seed`` may be an int or a sequence of ints (fed to numpy's
    SeedSequence); identical seeds give identical predictions.
    """

    def __init__(self, n_trees: int = 100, max_features: str = "sqrt", seed=0):
        if n_trees < 1:
            raise ValueError(f"n_trees must be >= 1, got {n_trees}")
        if max_features != "sqrt":
            raise ValueError("only sqrt feature subsampling is supported")
        self.n_trees = n_trees
        self.max_features = max_features
        self.seed = seed
        self.trees: list[_Node] = []
        self.classes_: tuple[str, ...] = ()
        self.n_features_ = 0

    def fit(self, X, labels) -> "RandomForest":
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] < 1:
            raise ValueError("X must be a 2-D matrix with at least one column")
        labels = [str(c) for c in labels]
        if len(labels) != X.shape[0]:
            raise ValueError("labels must align with the matrix rows")
        self.classes_ = tuple(sorted(set(labels)))
        if len(self.classes_) < 2:
            raise ValueError("training labels contain a single class")
        ids = {c: i for i, c in enumerate(self.classes_)}
        y = np.array([ids[c] for c in labels], dtype=np.int64)

        n, k = X.shape
        m = max(1, int(math.sqrt(k)))
        seeds = np.random.SeedSequence(self.seed).spawn(self.n_trees)
        self.trees = []
        for tree_seed in seeds:
            rng = np.random.default_rng(tree_seed)
            boot = rng.integers(0, n, size=n)
            self.trees.append(_grow(X[boot], y[boot], rng, m, len(self.classes_)))
        self.n_features_ = k
        return self

    def predict(self, X) -> np.ndarray:
        if not self.trees:
            raise ValueError("model is not fitted")
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.n_features_:
            raise ValueError(
                f"expected {self.n_features_} feature columns, got "
                f"{X.shape[1] if X.ndim == 2 else 'non-matrix input'}"
            )
        n = X.shape[0]
        votes = np.zeros((n, len(self.classes_)), dtype=np.int64)
        idx = np.arange(n)
        out = np.empty(n, dtype=np.int64)
        for tree in self.trees:
            _predict_tree(tree, X, idx, out)
            votes[idx, out] += 1
        winners = votes.argmax(axis=1)  # ties break toward the lowest class id
        return np.array([self.classes_[i] for i in winners])
