"""Canonical ultrametric block model and finite metric spaces of asymptotic
dimension zero.

A tower truncated at depth N gives the point set {0, ..., k_N - 1} with
d(x, y) = min{n >= 0 : floor(x/k_n) == floor(y/k_n)}; the n-components are the
consecutive intervals of length k_n.  Arbitrary finite integer metric spaces
are supported alongside, with R-components computed by union-find, and any
such space embeds into the nonnegative integers so that components are
preserved at every scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .supernatural import Tower


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:  # path compression
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks covering a space, ordered by least element, each
    annotated with its diameter and cardinality."""

    blocks: tuple[tuple[int, ...], ...]
    diameters: tuple[int, ...]

    @property
    def cardinalities(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)


def _partition_from_labels(n: int, label_of, dist) -> Partition:
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(label_of(x), []).append(x)
    blocks = tuple(tuple(g) for g in sorted(groups.values(), key=lambda g: g[0]))
    diams = tuple(
        max((dist(a, b) for i, a in enumerate(blk) for b in blk[i + 1 :]), default=0)
        for blk in blocks
    )
    return Partition(blocks, diams)


@dataclass(frozen=True)
class BlockSpace:
    """Truncation {0, ..., k_depth - 1} of the canonical tower model."""

    tower: Tower
    depth: int
    _orders: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (isinstance(self.depth, int) and self.depth >= 0):
            raise ValueError("depth must be an integer >= 0")
        object.__setattr__(self, "_orders", self.tower.orders(self.depth))

    @property
    def size(self) -> int:
        return self._orders[self.depth]

    def order(self, n: int) -> int:
        if not 0 <= n <= self.depth:
            raise ValueError(f"level {n} outside 0..{self.depth}")
        return self._orders[n]

    def _check_point(self, x: int):
        if not (isinstance(x, int) and 0 <= x < self.size):
            raise ValueError(f"point {x!r} outside 0..{self.size - 1}")

    def distance(self, x: int, y: int) -> int:
        """Least level whose blocks contain both points."""
        self._check_point(x)
        self._check_point(y)
        for n in range(self.depth + 1):
            if x // self._orders[n] == y // self._orders[n]:
                return n
        raise AssertionError("unreachable: whole truncation is one block")

    def metric_matrix(self) -> list[list[int]]:
        pts = np.arange(self.size)
        d = np.zeros((self.size, self.size), dtype=np.int64)
        for n in range(self.depth):
            labels = pts // self._orders[n]
            d += labels[:, None] != labels[None, :]
        return d.tolist()

    def to_metric_space(self) -> "FiniteMetricSpace":
        return FiniteMetricSpace(self.size, tuple(map(tuple, self.metric_matrix())))


def distance(s: BlockSpace, x: int, y: int) -> int:
    return s.distance(x, y)


def components(s: BlockSpace, n: int) -> Partition:
    """Level-n components: k_depth/k_n consecutive intervals of length k_n."""
    k = s.order(n)
    blocks = tuple(tuple(range(j * k, (j + 1) * k)) for j in range(s.size // k))
    # diameter of a k_n-interval is the first level already of order k_n
    # (saturating finite towers repeat orders, so it can be below n)
    diam = next(m for m in range(n + 1) if s.order(m) == k)
    return Partition(blocks, tuple(diam for _ in blocks))


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Finite metric space with integer distances, given by full matrix."""

    size: int
    distances: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not (isinstance(self.size, int) and self.size >= 1):
            raise ValueError("size must be >= 1")
        rows = tuple(tuple(row) for row in self.distances)
        if len(rows) != self.size or any(len(r) != self.size for r in rows):
            raise ValueError("distance matrix shape does not match size")
        for row in rows:
            for v in row:
                if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                    raise ValueError(f"distance {v!r} is not a nonnegative integer")
                if v >= 2**62:
                    raise ValueError("distances this large are not supported")
        d = np.array(rows, dtype=np.int64)
        if (np.diag(d) != 0).any():
            raise ValueError("d(x, x) must be 0")
        if (d == 0).sum() != self.size:
            raise ValueError("d(x, y) = 0 requires x = y")
        if (d != d.T).any():
            raise ValueError("distance matrix must be symmetric")
        for k in range(self.size):
            if (d > d[:, [k]] + d[[k], :]).any():
                raise ValueError("triangle inequality fails")
        object.__setattr__(self, "distances", rows)

    def distance(self, x: int, y: int) -> int:
        return self.distances[x][y]

    @property
    def max_distance(self) -> int:
        return max(max(row) for row in self.distances)


def r_components(m: FiniteMetricSpace, R: int) -> Partition:
    """Components of the graph joining points at distance <= R."""
    if R < 0:
        raise ValueError("R must be >= 0")
    uf = UnionFind(m.size)
    for x in range(m.size):
        row = m.distances[x]
        for y in range(x + 1, m.size):
            if row[y] <= R:
                uf.union(x, y)
    return _partition_from_labels(m.size, uf.find, m.distance)


def asdim_zero_profile(m: FiniteMetricSpace) -> dict[int, tuple[int, int]]:
    """R -> (max component diameter, max component cardinality), R = 0..max."""
    profile = {}
    for R in range(m.max_distance + 1):
        part = r_components(m, R)
        profile[R] = (max(part.diameters), max(part.cardinalities))
    return profile


def embed_into_nonneg_integers(m: FiniteMetricSpace) -> list[int]:
    """Component-preserving embedding into the nonnegative integers.

    Recursively lays out the level-(R-1) components of each level-R component
    from the least-indexed one, separating successive images by a gap of
    exactly R, so that for every scale the image of each component is exactly
    a component of the image.  The base point (least index) goes to 0.
    """
    max_d = m.max_distance
    parts = [r_components(m, R) for R in range(max_d + 1)]
    # point -> block index, per level
    block_of = [
        {x: i for i, blk in enumerate(parts[R].blocks) for x in blk}
        for R in range(max_d + 1)
    ]

    def place(points: tuple[int, ...], level: int) -> dict[int, int]:
        while level > 0:
            child_ids = sorted({block_of[level - 1][x] for x in points})
            if len(child_ids) > 1:
                out: dict[int, int] = {}
                offset = 0
                for cid in child_ids:  # already ordered by least element
                    child = parts[level - 1].blocks[cid]
                    rel = place(child, level - 1)
                    for x, v in rel.items():
                        out[x] = offset + v
                    offset += max(rel.values()) + level  # gap of exactly `level`
                return out
            level -= 1
        return {points[0]: 0}

    images = place(parts[max_d].blocks[0], max_d)
    return [images[x] for x in range(m.size)]
