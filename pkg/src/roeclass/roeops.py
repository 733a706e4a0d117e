"""Finite-propagation operators on truncated block spaces, exactly.

Operators are sparse matrices with rational entries indexed by the points of
a BlockSpace; propagation is the largest distance on the support.  An
operator of propagation <= n is block diagonal for the level-n intervals, and
grouping consecutive blocks realizes the connecting maps of the inductive
limit, with the (non-normalized) block trace vector tracking K0 data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .blockspace import BlockSpace
from .equivalence import TowerBijection
from .errors import (
    DepthExhausted,
    NotBlockDiagonal,
    NotProjection,
    PreconditionViolation,
    UnsupportedEntries,
)
from .ktheory import K0Class

Entries = dict[tuple[int, int], Fraction]


def _coerce_scalar(v) -> Fraction:
    if isinstance(v, bool):
        raise ValueError("entries must be rational numbers")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    raise ValueError(f"entries must be rational numbers, got {v!r}")


def _mat_mul(a: Entries, b: Entries) -> Entries:
    by_row: dict[int, list[tuple[int, Fraction]]] = {}
    for (r, c), v in b.items():
        by_row.setdefault(r, []).append((c, v))
    out: Entries = {}
    for (r, k), u in a.items():
        for c, v in by_row.get(k, ()):
            key = (r, c)
            w = out.get(key, Fraction(0)) + u * v
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return out


def _mat_add(a: Entries, b: Entries) -> Entries:
    out = dict(a)
    for key, v in b.items():
        w = out.get(key, Fraction(0)) + v
        if w:
            out[key] = w
        else:
            out.pop(key, None)
    return out


def _mat_adjoint(a: Entries) -> Entries:
    # rational scalars: the adjoint is the transpose
    return {(c, r): v for (r, c), v in a.items()}


def _is_projection(a: Entries) -> bool:
    return _mat_mul(a, a) == a and _mat_adjoint(a) == a


@dataclass(frozen=True)
class PropagationOperator:
    """Sparse exact-rational matrix over the points of a block space."""

    space: BlockSpace
    entries: Entries

    def __post_init__(self):
        clean: Entries = {}
        for (r, c), v in self.entries.items():
            if not (isinstance(r, int) and isinstance(c, int)):
                raise ValueError("entry positions must be integers")
            if not (0 <= r < self.space.size and 0 <= c < self.space.size):
                raise ValueError(f"entry ({r}, {c}) outside the truncation")
            v = _coerce_scalar(v)
            if v:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def zero(cls, space: BlockSpace) -> "PropagationOperator":
        return cls(space, {})

    @classmethod
    def identity(cls, space: BlockSpace) -> "PropagationOperator":
        return cls(space, {(x, x): Fraction(1) for x in range(space.size)})

    @classmethod
    def matrix_unit(cls, space: BlockSpace, x: int, y: int, value=1) -> "PropagationOperator":
        return cls(space, {(x, y): _coerce_scalar(value)})

    def propagation(self) -> int:
        return propagation(self)

    def compose(self, other: "PropagationOperator") -> "PropagationOperator":
        return compose(self, other)

    def add(self, other: "PropagationOperator") -> "PropagationOperator":
        return add(self, other)

    def adjoint(self) -> "PropagationOperator":
        return adjoint(self)


def _same_space(a: PropagationOperator, b: PropagationOperator) -> BlockSpace:
    if a.space != b.space:
        raise PreconditionViolation("operators live on different spaces")
    return a.space


def propagation(t: PropagationOperator) -> int:
    return max((t.space.distance(r, c) for r, c in t.entries), default=0)


def compose(a: PropagationOperator, b: PropagationOperator) -> PropagationOperator:
    return PropagationOperator(_same_space(a, b), _mat_mul(a.entries, b.entries))


def add(a: PropagationOperator, b: PropagationOperator) -> PropagationOperator:
    return PropagationOperator(_same_space(a, b), _mat_add(a.entries, b.entries))


def adjoint(a: PropagationOperator) -> PropagationOperator:
    return PropagationOperator(a.space, _mat_adjoint(a.entries))


@dataclass(frozen=True)
class BlockTuple:
    """Level-n block decomposition: k_depth/k_n square blocks of size k_n."""

    space: BlockSpace
    level: int
    blocks: tuple[Entries, ...]

    def __post_init__(self):
        k = self.space.order(self.level)
        if len(self.blocks) != self.space.size // k:
            raise ValueError("wrong number of blocks for the level")
        for blk in self.blocks:
            for (r, c), v in blk.items():
                if not (0 <= r < k and 0 <= c < k):
                    raise ValueError("block entry outside the block")

    @property
    def block_size(self) -> int:
        return self.space.order(self.level)


def block_decompose(t: PropagationOperator, n: int) -> BlockTuple:
    """Split into level-n diagonal blocks; propagation above n is an error."""
    k = t.space.order(n)
    blocks: list[Entries] = [{} for _ in range(t.space.size // k)]
    for (r, c), v in t.entries.items():
        if r // k != c // k:
            raise NotBlockDiagonal(
                f"entry ({r}, {c}) at distance {t.space.distance(r, c)} crosses level-{n} blocks"
            )
        i = r // k
        blocks[i][(r - i * k, c - i * k)] = v
    return BlockTuple(t.space, n, tuple(blocks))


def recompose(bt: BlockTuple) -> PropagationOperator:
    k = bt.block_size
    entries: Entries = {}
    for i, blk in enumerate(bt.blocks):
        for (r, c), v in blk.items():
            entries[(i * k + r, i * k + c)] = v
    return PropagationOperator(bt.space, entries)


def connecting_map(bt: BlockTuple) -> BlockTuple:
    """Group consecutive level-n blocks into level-(n+1) diagonal blocks."""
    n = bt.level
    if n + 1 > bt.space.depth:
        raise PreconditionViolation(f"level {n + 1} exceeds the truncation depth")
    k = bt.block_size
    r_n = bt.space.order(n + 1) // k
    grouped: list[Entries] = []
    for i in range(len(bt.blocks) // r_n):
        blk: Entries = {}
        for j in range(r_n):
            off = j * k
            for (r, c), v in bt.blocks[i * r_n + j].items():
                blk[(off + r, off + c)] = v
        grouped.append(blk)
    return BlockTuple(bt.space, n + 1, tuple(grouped))


def trace_vector(bt: BlockTuple, require_projection: bool = False) -> tuple:
    """Non-normalized block traces; integer ranks for projections."""
    out = []
    for blk in bt.blocks:
        if require_projection and not _is_projection(blk):
            raise NotProjection("block fails p*p = p = p*")
        tr = sum((v for (r, c), v in blk.items() if r == c), Fraction(0))
        out.append(int(tr) if tr.denominator == 1 else tr)
    return tuple(out)


def _diagonal_support(blk: Entries) -> list[int]:
    """Support of a diagonal 0/1 block; UnsupportedEntries otherwise."""
    for (r, c), v in blk.items():
        if r != c or v != 1:
            raise UnsupportedEntries("only projections diagonal in the standard basis are supported")
    return sorted(r for (r, c) in blk)


def mvn_partial_isometry(p: BlockTuple, q: BlockTuple) -> BlockTuple | None:
    """Partial isometry v with v*v = p and vv* = q, for diagonal 0/1
    projections of equal trace vector; None when the traces differ."""
    if p.space != q.space or p.level != q.level:
        raise PreconditionViolation("projections must share a space and level")
    for blk in tuple(p.blocks) + tuple(q.blocks):
        if not _is_projection(blk):
            raise NotProjection("block fails p*p = p = p*")
    supports = []
    for pb, qb in zip(p.blocks, q.blocks):
        sp, sq = _diagonal_support(pb), _diagonal_support(qb)
        if len(sp) != len(sq):
            return None
        supports.append((sp, sq))
    blocks = tuple(
        {(y, x): Fraction(1) for x, y in zip(sp, sq)} for sp, sq in supports
    )
    return BlockTuple(p.space, p.level, blocks)


def conjugate_by_bijection(b: TowerBijection, t: PropagationOperator) -> PropagationOperator:
    """Relocate entries along the bijection: (x1, x2) -> (f(x1), f(x2))."""
    if t.space.tower != b.source:
        raise PreconditionViolation("operator space does not match the map source")
    entries: Entries = {}
    for (r, c), v in t.entries.items():
        if r >= b.domain_size or c >= b.domain_size:
            raise DepthExhausted("operator support escapes the truncated domain")
        key = (b.mapping[r], b.mapping[c])
        if key in entries:
            raise PreconditionViolation("map is not injective on the support")
        entries[key] = v
    m_d = b.final_levels[1]
    return PropagationOperator(BlockSpace(b.target, m_d), entries)


def k0_class_of_projection(bt: BlockTuple) -> K0Class:
    """Finitely supported K0 class of a level-n projection: each block
    contributes (rank, 0, ..., 0)."""
    ranks = trace_vector(bt, require_projection=True)
    k = bt.block_size
    prefix: list[int] = []
    for rank in ranks:
        prefix += [int(rank)] + [0] * (k - 1)
    return K0Class(bt.space.tower, tuple(prefix), (0,))
