"""Ordered K0 invariant of the uniform Roe algebra of an infinite tower.

K0 is the quotient of bounded integer sequences by the subgroup H of
sequences that, at some level n, have every aligned k_n-block summing to
zero.  Eventually periodic integer sequences (finite prefix plus repeating
period) are closed under the group operations and suffice for every
invariant computed here; the order unit is the constant-1 sequence.

Membership in H is decidable exactly: with d eventually periodic of period
sum sigma and cumulative sums S, membership at level n means S vanishes at
all multiples of k_n, which forces sigma = 0; then S is eventually periodic
and only finitely many residues (the multiples of g* = lim_n gcd(k_n, |period|))
are ever hit by large multiples of k_n, so one window check at the first
gcd-stable level decides the infinite search.  Positivity reduces the same
way: beyond the stable level the block sums along the residue cycle add up
to zero, so they are all nonnegative only if they all vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm

from sympy import factorint

from .equivalence import TowerBijection
from .errors import DepthExhausted, PreconditionViolation
from .supernatural import (
    Tower,
    bijectively_coarsely_equivalent,
    coarsely_equivalent,
    sn_divides,
    supernatural_of_tower,
)


def _checked_entry(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"sequence entry must be an integer, got {v!r}")
    return v


def _minimal_period(items: tuple[int, ...]) -> tuple[int, ...]:
    n = len(items)
    for d in range(1, n + 1):
        if n % d == 0 and all(items[i] == items[i % d] for i in range(n)):
            return items[:d]
    return items


@dataclass(frozen=True)
class K0Class:
    """Eventually periodic integer sequence representing a K0 element.

    Canonical form: minimal period, shortest prefix.  Structural equality is
    equality of sequences; use k0_equal for equality modulo H.
    """

    context: Tower
    prefix: tuple[int, ...]
    period: tuple[int, ...]
    _prefix_sums: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _period_sums: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.context.is_infinite:
            raise PreconditionViolation("K0 sequence classes need an infinite tower")
        prefix = tuple(map(_checked_entry, self.prefix))
        period = tuple(map(_checked_entry, self.period))
        if not period:
            raise ValueError("period must be nonempty")
        period = _minimal_period(period)
        q = len(period)

        def at(i: int) -> int:
            return prefix[i] if i < len(prefix) else period[(i - len(prefix)) % q]

        s = len(prefix)
        while s > 0 and at(s - 1) == at(s - 1 + q):
            s -= 1
        new_prefix = tuple(at(i) for i in range(s))
        new_period = tuple(at(s + j) for j in range(q))
        prefix, period = new_prefix, new_period
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)
        sums = [0]
        for v in prefix:
            sums.append(sums[-1] + v)
        object.__setattr__(self, "_prefix_sums", tuple(sums))
        sums = [0]
        for v in period:
            sums.append(sums[-1] + v)
        object.__setattr__(self, "_period_sums", tuple(sums))

    @property
    def period_sum(self) -> int:
        return self._period_sums[-1]

    def value(self, i: int) -> int:
        if i < 0:
            raise ValueError("index must be >= 0")
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def partial_sum(self, i: int) -> int:
        """Sum of the first i entries."""
        s, q = len(self.prefix), len(self.period)
        if i <= s:
            return self._prefix_sums[i]
        whole, rest = divmod(i - s, q)
        return self._prefix_sums[s] + whole * self.period_sum + self._period_sums[rest]

    def block_sum(self, start: int, length: int) -> int:
        return self.partial_sum(start + length) - self.partial_sum(start)

    def is_zero(self) -> bool:
        return self.prefix == () and self.period == (0,)


@dataclass(frozen=True)
class FiniteK0:
    """Element of K0 = (Z, order unit k) for a finite tower of full order k."""

    rank: int
    unit_rank: int

    def __post_init__(self):
        if not (isinstance(self.rank, int) and isinstance(self.unit_rank, int)):
            raise ValueError("ranks must be integers")
        if self.unit_rank < 1:
            raise ValueError("unit rank must be >= 1")


def k0_unit(t: Tower) -> K0Class | FiniteK0:
    """Class of the identity: constant 1s, or (k, k) for a finite tower."""
    if not t.is_infinite:
        k = t.order(len(t.prefix))
        return FiniteK0(k, k)
    return K0Class(t, (), (1,))


def k0_zero(t: Tower) -> K0Class:
    return K0Class(t, (), (0,))


def _same_context(a: K0Class, b: K0Class) -> Tower:
    if a.context != b.context:
        raise PreconditionViolation("classes live over different towers")
    return a.context


def k0_add(a: K0Class, b: K0Class) -> K0Class:
    t = _same_context(a, b)
    s = max(len(a.prefix), len(b.prefix))
    q = lcm(len(a.period), len(b.period))
    prefix = tuple(a.value(i) + b.value(i) for i in range(s))
    period = tuple(a.value(s + j) + b.value(s + j) for j in range(q))
    return K0Class(t, prefix, period)


def k0_neg(a: K0Class) -> K0Class:
    return K0Class(a.context, tuple(-v for v in a.prefix), tuple(-v for v in a.period))


def k0_scale(c: int, a: K0Class) -> K0Class:
    c = _checked_entry(c)
    return K0Class(a.context, tuple(c * v for v in a.prefix), tuple(c * v for v in a.period))


def k0_sub(a: K0Class, b: K0Class) -> K0Class:
    return k0_add(a, k0_neg(b))


def _window_blocks(d: K0Class, k: int) -> int:
    """Blocks of size k covering the prefix plus one lcm stretch of the tail."""
    s, q = len(d.prefix), len(d.period)
    return -(-s // k) + lcm(k, q) // k


def h_membership(t: Tower, d: K0Class, n: int) -> bool:
    """Whether every aligned k_n-block of d sums to zero.

    The block sums are eventually periodic, so the window covering the prefix
    and one full lcm(k_n, |period|) stretch is exact.
    """
    if d.context != t:
        raise PreconditionViolation("sequence context does not match the tower")
    if not (isinstance(n, int) and n >= 0):
        raise PreconditionViolation("level must be an integer >= 0")
    k = t.order(n)
    return all(d.block_sum(j * k, k) == 0 for j in range(_window_blocks(d, k)))


def _blocks_nonneg(d: K0Class, n: int) -> bool:
    k = d.context.order(n)
    return all(d.block_sum(j * k, k) >= 0 for j in range(_window_blocks(d, k)))


def _stable_level(d: K0Class) -> int:
    """Least n with gcd(k_n, |period|) at its limit g* and k_n >= |prefix| + |period|.

    Beyond this level the multiples of k_n land exactly on the residues of
    the subgroup generated by g* modulo the period length, so an existential
    search over all levels collapses to this single one.
    """
    s, q = len(d.prefix), len(d.period)
    sn = supernatural_of_tower(d.context)
    g_star = 1
    for p, e in factorint(q).items():
        g_star *= p ** min(e, sn.exponent_of(p))
    n, k = 0, 1
    while gcd(k, q) != g_star or k < s + q:
        k *= d.context.ratio(n)
        n += 1
    return n


def k0_equal(a: K0Class, b: K0Class) -> bool:
    """Equality in K0, decided exactly.

    The difference must have period sum zero (nonzero sums survive every
    block aggregation); then one window check at the gcd-stable level is
    equivalent to the existential search over all levels.
    """
    d = k0_sub(a, b)
    if d.period_sum != 0:
        return False
    return h_membership(d.context, d, _stable_level(d))


def _block_collapse(a: K0Class, n: int) -> K0Class:
    """Replace every aligned k_n-block by (block sum, 0, ..., 0)."""
    k = a.context.order(n)
    s, q = len(a.prefix), len(a.period)
    nb = -(-s // k)
    pb = lcm(k, q) // k
    prefix = []
    for j in range(nb):
        prefix += [a.block_sum(j * k, k)] + [0] * (k - 1)
    period = []
    for j in range(nb, nb + pb):
        period += [a.block_sum(j * k, k)] + [0] * (k - 1)
    return K0Class(a.context, tuple(prefix), tuple(period))


def k0_positive(a: K0Class) -> tuple[bool, K0Class | None]:
    """Membership in the positive cone, with a pointwise-nonnegative witness.

    Positive period sum dominates boundary effects once
    floor(k_n/q)*sigma > (|prefix| + 2|period|)*max|entry|; negative period
    sum makes deep blocks negative at every level; zero period sum reduces to
    the stable-level window exactly like k0_equal.
    """
    sigma = a.period_sum
    if sigma < 0:
        return False, None
    if sigma == 0:
        n = _stable_level(a)
        if not _blocks_nonneg(a, n):
            return False, None
        return True, _block_collapse(a, n)
    s, q = len(a.prefix), len(a.period)
    bound = (s + 2 * q) * max(abs(v) for v in a.prefix + a.period)
    n, k = 0, 1
    while (k // q) * sigma <= bound or not _blocks_nonneg(a, n):
        k *= a.context.ratio(n)
        n += 1
    return True, _block_collapse(a, n)


def unit_divide(t: Tower, p: int, r: int) -> K0Class | None:
    """Witness w with p^r * w = [1] in K0, when p^r divides the supernatural
    number; None otherwise (the main obstruction to equivalence)."""
    if not t.is_infinite:
        raise PreconditionViolation("unit division needs an infinite tower")
    if not (isinstance(r, int) and r >= 0):
        raise PreconditionViolation("exponent must be an integer >= 0")
    if r == 0:
        return K0Class(t, (), (1,))
    if not sn_divides(p, r, supernatural_of_tower(t)):
        return None
    # any block of size k_n with p^r | k_n holds whole periods, so this is
    # the shortest representative; p^r copies sum blockwise to the unit
    target = p**r
    return K0Class(t, (), (1,) + (0,) * (target - 1))


def alpha_iterate(t: Tower, n: int, v: K0Class) -> K0Class:
    """Level-n connecting map on sequences: aligned k_n-block sums."""
    if v.context != t:
        raise PreconditionViolation("sequence context does not match the tower")
    if not (isinstance(n, int) and n >= 0):
        raise PreconditionViolation("level must be an integer >= 0")
    k = t.order(n)
    s, q = len(v.prefix), len(v.period)
    nb = -(-s // k)
    pb = lcm(k, q) // k
    prefix = tuple(v.block_sum(j * k, k) for j in range(nb))
    period = tuple(v.block_sum(j * k, k) for j in range(nb, nb + pb))
    return K0Class(t, prefix, period)


def k0_iso_exists(t1: Tower, t2: Tower) -> bool:
    """Ordered unital isomorphism of the K0 invariants.

    Same-finiteness pairs reduce to supernatural-number equality (for finite
    towers that is equality of the full orders); a finite and an infinite
    tower never match (Z with a single generator against a non-cyclic group).
    """
    if t1.is_infinite != t2.is_infinite:
        return False
    return bijectively_coarsely_equivalent(t1, t2)


def k0_groups_abstractly_iso(t1: Tower, t2: Tower) -> bool:
    """Group isomorphism ignoring order and unit: only finiteness matters."""
    return coarsely_equivalent(t1, t2)


def transport_class(b: TowerBijection, a: K0Class) -> K0Class:
    """Push a finitely supported class through a truncated bijection."""
    if a.context != b.source:
        raise PreconditionViolation("class context does not match the map source")
    if a.period != (0,):
        raise PreconditionViolation("only finitely supported classes (period [0]) transport")
    support = [i for i, v in enumerate(a.prefix) if v != 0]
    if any(i >= b.domain_size for i in support):
        raise DepthExhausted("support escapes the truncated domain")
    out: dict[int, int] = {}
    for i in support:
        y = b.mapping[i]
        if y in out:
            raise PreconditionViolation("map is not injective on the support")
        out[y] = a.prefix[i]
    length = max(out, default=-1) + 1
    return K0Class(b.target, tuple(out.get(i, 0) for i in range(length)), (0,))
