"""Weighted-trie pattern sampler.

Accepted patterns are inserted into a trie whose edge weights aggregate
the temperature-scaled qualities of every pattern routed through them.
Sampling walks the trie root-down by roulette-wheel selection; the
decision to stop at an internal terminal node competes as a pseudo-edge
weighted by that pattern's own scaled quality, which makes each stored
pattern's selection probability proportional to its weight mass and
keeps the path probabilities summing to one.
"""

from __future__ import annotations

import numpy as np

from .pattern_index import PatternIndex
from .quality import chi2_normalized_many, scale

__all__ = ["TrieNode", "SamplerTrie", "fit_sampler"]


class TrieNode:
    """One trie node: symbol-keyed weighted edges plus a terminal weight."""

    __slots__ = ("children", "terminal_weight", "node_weight", "_wheel")

    def __init__(self):
        self.children: dict[str, list] = {}  # symbol -> [edge weight, child]
        self.terminal_weight = 0.0
        self.node_weight = 0.0
        self._wheel = None

    def wheel(self):
        # sorted edges and their cumulative weights, built lazily;
        # lexical symbol order keeps selection deterministic
        if self._wheel is None:
            symbols = sorted(self.children)
            children = [self.children[s][1] for s in symbols]
            cum = np.cumsum([self.children[s][0] for s in symbols])
            self._wheel = (symbols, children, cum)
        return self._wheel


class SamplerTrie:
    """The fitted pattern sampler for one (alpha, omega) cell."""

    def __init__(self, tau: float, s_min: float):
        if tau <= 0:
            raise ValueError(f"tau must be positive, got {tau}")
        self.root = TrieNode()
        self.tau = tau
        self.s_min = s_min
        self.pattern_count = 0

    @property
    def is_empty(self) -> bool:
        return self.pattern_count == 0

    def insert(self, pattern: str, normalized_q: float) -> None:
        """Add a pattern, aggregating its scaled weight along the path.

        Every edge on the path gains w = q**(1/tau); missing edges are
        created with weight w, and the final node's terminal weight is
        set to w. Patterns are enumerated deduplicated upstream, so a
        second insert of the same pattern is a programming error.
        """
        if len(pattern) < 2:
            raise ValueError(f"patterns must have length >= 2, got {pattern!r}")
        if normalized_q <= 0.0 or normalized_q < self.s_min:
            raise ValueError(
                f"quality {normalized_q} below acceptance threshold "
                f"(s_min={self.s_min}, must also be > 0)"
            )
        w = scale(normalized_q, self.tau)
        node = self.root
        for symbol in pattern:
            edge = node.children.get(symbol)
            if edge is None:
                edge = [w, TrieNode()]
                node.children[symbol] = edge
            else:
                edge[0] += w
            node.node_weight += w
            node._wheel = None
            node = edge[1]
        if node.terminal_weight > 0.0:
            raise ValueError(f"pattern {pattern!r} inserted twice")
        node.terminal_weight = w
        node.node_weight += w
        node._wheel = None
        self.pattern_count += 1

    def sample(self, rng: np.random.Generator) -> str:
        """Draw one pattern by fitness-proportionate trie descent."""
        if self.is_empty:
            raise ValueError("cannot sample from an empty trie")
        node = self.root
        out: list[str] = []
        while True:
            if not node.children:
                return "".join(out)
            r = rng.random() * node.node_weight
            if r < node.terminal_weight:
                return "".join(out)
            r -= node.terminal_weight
            symbols, children, cum = node.wheel()
            i = int(np.searchsorted(cum, r, side="right"))
            if i >= len(symbols):  # float edge of the last interval
                i = len(symbols) - 1
            out.append(symbols[i])
            node = children[i]

    def path_probability(self, pattern: str) -> float:
        """Probability that :meth:`sample` returns ``pattern``."""
        node = self.root
        prob = 1.0
        for symbol in pattern:
            edge = node.children.get(symbol)
            if edge is None:
                raise KeyError(f"pattern {pattern!r} is not in the trie")
            prob *= edge[0] / node.node_weight
            node = edge[1]
        if node.terminal_weight == 0.0:
            raise KeyError(f"pattern {pattern!r} is not in the trie")
        return prob * (node.terminal_weight / node.node_weight)

    def iter_patterns(self):
        """Yield (pattern, terminal weight) pairs in lexicographic order."""

        def walk(node: TrieNode, prefix: str):
            if node.terminal_weight > 0.0:
                yield prefix, node.terminal_weight
            for symbol in sorted(node.children):
                yield from walk(node.children[symbol][1], prefix + symbol)

        yield from walk(self.root, "")

    def to_text(self) -> str:
        """Indented dump of edges, weights, and terminal markers."""
        lines = [
            f"trie tau={self.tau:g} s_min={self.s_min:g} "
            f"patterns={self.pattern_count} root_weight={self.root.node_weight:.6g}"
        ]

        def walk(node: TrieNode, depth: int):
            for symbol in sorted(node.children):
                weight, child = node.children[symbol]
                marker = (
                    f" *{child.terminal_weight:.6g}"
                    if child.terminal_weight > 0.0
                    else ""
                )
                lines.append(f"{'  ' * depth}{symbol} {weight:.6g}{marker}")
                walk(child, depth + 1)

        walk(self.root, 1)
        return "\n".join(lines)


def fit_sampler(
    discretized,
    index: PatternIndex,
    labels,
    l_max: int,
    s_min: float,
    tau: float,
) -> SamplerTrie:
    """Score every distinct pattern and insert the accepted ones.

    For each length 2..l_max, every distinct pattern is scored by
    normalised chi-square; patterns reaching s_min (and strictly above
    0) are inserted, the rest discarded. The returned trie may be empty,
    in which case the caller skips this (alpha, omega) cell.
    """
    if index.l_max != l_max:
        raise ValueError(
            f"index was built with l_max={index.l_max}, expected {l_max}"
        )
    labels = [str(c) for c in labels]
    if len(labels) != index.n_instances:
        raise ValueError("labels must align with the indexed instances")
    classes = sorted(set(labels))
    class_ids = {c: i for i, c in enumerate(classes)}
    class_of = np.array([class_ids[c] for c in labels], dtype=np.int64)
    class_sizes = np.bincount(class_of, minlength=len(classes))

    trie = SamplerTrie(tau=tau, s_min=s_min)
    for length in index.lengths():
        counts = index.presence_counts(length, class_of, len(classes))
        q = chi2_normalized_many(counts, class_sizes)
        accepted = np.nonzero((q >= s_min) & (q > 0.0))[0]
        for row in accepted:
            trie.insert(index.row_text(length, int(row)), float(q[row]))
    return trie
