"""Seeded randomness, index partitions, and norm-weighted block sampling.

Block indices are sampled with probability proportional to the squared
Frobenius norm of the block, via inverse CDF on a prefix-sum array.  All
randomness flows through :class:`Rng`, a counter-based generator whose
streams are reproducible across platforms and splittable into independent
per-trial child streams.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Literal, Sequence

import numpy as np

if TYPE_CHECKING:
    from .matrix import Matrix

Axis = Literal["row", "col"]


class Rng:
    """Deterministic random stream (Philox, counter based).

    Identical seeds give identical streams on every platform: the generator
    core and the uint64 -> binary64 conversion are pure integer arithmetic.
    Child streams for trial ``k`` are derived by hashing ``(seed, k)``
    through numpy's SeedSequence spawn mechanism, which is collision
    resistant over any practical trial range.
    """

    def __init__(self, seed: int, spawn_key: tuple[int, ...] = ()):
        self.seed = int(seed)
        self.spawn_key = tuple(int(k) for k in spawn_key)
        seq = np.random.SeedSequence(self.seed, spawn_key=self.spawn_key)
        self._gen = np.random.Generator(np.random.Philox(seq))

    def child(self, k: int) -> "Rng":
        """Independent stream keyed by (this stream's identity, k)."""
        return Rng(self.seed, self.spawn_key + (int(k),))

    def uniform(self) -> float:
        """One double in [0, 1), consuming one draw."""
        return float(self._gen.random())

    def uniforms(self, size: int) -> np.ndarray:
        return self._gen.random(size)

    def standard_normal(self, size) -> np.ndarray:
        return self._gen.standard_normal(size)

    def __repr__(self) -> str:  # pragma: no cover
        return f"Rng(seed={self.seed}, spawn_key={self.spawn_key})"


def _normalize_indices(indices) -> range | np.ndarray:
    """Keep contiguous blocks as ranges (sliceable), everything else as int arrays."""
    if isinstance(indices, range):
        if indices.step != 1:
            return np.asarray(list(indices), dtype=np.int64)
        return indices
    arr = np.asarray(indices, dtype=np.int64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("a block needs a nonempty 1-D index list")
    if arr.size > 1 and np.all(np.diff(arr) == 1):
        return range(int(arr[0]), int(arr[-1]) + 1)
    return arr


@dataclass(frozen=True)
class Partition:
    """Disjoint ordered index blocks covering ``range(axis_len)``."""

    axis: Axis
    axis_len: int
    blocks: tuple[range | np.ndarray, ...]

    def __post_init__(self):
        if self.axis not in ("row", "col"):
            raise ValueError(f"axis must be 'row' or 'col', got {self.axis!r}")
        blocks = tuple(_normalize_indices(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen = np.zeros(self.axis_len, dtype=bool)
        for b in blocks:
            idx = np.asarray(b, dtype=np.int64)
            if idx.size == 0:
                raise ValueError("empty block in partition")
            if idx.min() < 0 or idx.max() >= self.axis_len:
                raise ValueError("block index out of range")
            if seen[idx].any():
                raise ValueError("blocks overlap")
            seen[idx] = True
        if not seen.all():
            raise ValueError("blocks do not cover the axis")

    def __len__(self) -> int:
        return len(self.blocks)

    def block_sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def is_singleton(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)


def contiguous_partition(axis_len: int, tau: int, axis: Axis = "row") -> Partition:
    """Blocks of size tau in order; the last block holds the remainder."""
    if not 1 <= tau <= axis_len:
        raise ValueError(f"tau must be in [1, {axis_len}], got {tau}")
    blocks = [range(start, min(start + tau, axis_len)) for start in range(0, axis_len, tau)]
    return Partition(axis, axis_len, tuple(blocks))


def singleton_partition(axis_len: int, axis: Axis = "row") -> Partition:
    return contiguous_partition(axis_len, 1, axis)


class WeightedSampler:
    """Inverse-CDF sampler over a fixed positive weight vector."""

    def __init__(self, weights: Sequence[float] | np.ndarray):
        w = np.asarray(weights, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a nonempty 1-D array")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if np.any(w <= 0.0):
            raise ValueError("zero-weight entry: it could never be selected")
        self.weights = w
        self.cumulative = np.cumsum(w)
        self.total = float(self.cumulative[-1])

    def probabilities(self) -> np.ndarray:
        return self.weights / self.total

    def sample(self, rng: Rng) -> int:
        """One index, P(i) = weights[i] / total.

        The draw is u * total searched in the prefix array; the final bucket
        absorbs any rounding at the top end so the draw always lands.
        """
        u = rng.uniform() * self.total
        i = int(np.searchsorted(self.cumulative, u, side="right"))
        return min(i, self.weights.size - 1)

    def sample_many(self, rng: Rng, count: int) -> np.ndarray:
        """Vectorized sampling; consumes one uniform per draw, like sample()."""
        u = rng.uniforms(count) * self.total
        idx = np.searchsorted(self.cumulative, u, side="right")
        return np.minimum(idx, self.weights.size - 1)


class BlockSampler(WeightedSampler):
    """Samples partition blocks with probability ||block||_F^2 / ||A||_F^2."""

    def __init__(self, partition: Partition, weights: Sequence[float] | np.ndarray):
        try:
            super().__init__(weights)
        except ValueError as exc:
            raise ValueError(f"invalid block weights: {exc}") from exc
        if self.weights.size != len(partition):
            raise ValueError("one weight per block required")
        self.partition = partition


def build_sampler(a: "Matrix", p: Partition) -> BlockSampler:
    """Sampler over p's blocks weighted by squared block Frobenius norms of a.

    Raises ValueError if any block of a has zero norm: such a block has
    selection probability zero and could never be updated.
    """
    axis_len = a.rows if p.axis == "row" else a.cols
    if p.axis_len != axis_len:
        raise ValueError(
            f"partition covers {p.axis_len} {p.axis}s but the matrix has {axis_len}"
        )
    weights = [a.block_frobenius_sq(a.block(p.axis, idx)) for idx in p.blocks]
    return BlockSampler(p, weights)
