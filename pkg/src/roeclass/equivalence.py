"""Back-and-forth witnesses for bijective coarse equivalence of towers.

Two infinite towers with equal supernatural numbers admit interleaved level
subsequences n_1 < n_2 < ... and m_1 < m_2 < ... with

    k1_{n_1} | k2_{m_1} | k1_{n_2} | k2_{m_2} | ...

(forward divisibility may be an equality, the return step is a proper
multiple).  Along such a chain a bijective coarse equivalence is built level
by level; with all choices made deterministically (block containing 0 first,
then lowest-index blocks, order-preserving within the smallest blocks) the
truncated witness is the inclusion of {0..k1_{n_D}-1} into {0..k2_{m_D}-1}.
The verifier re-measures every claim on an arbitrary candidate map and
reports rather than raises.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DepthExhausted, MalformedInput, NotEquivalent, PreconditionViolation
from .supernatural import Tower, bijectively_coarsely_equivalent


def interleave_towers(t1: Tower, t2: Tower, depth: int) -> tuple[tuple[int, int], ...]:
    """Greedy interleaved level pairs ((n_1, m_1), ..., (n_D, m_D)).

    Each index is the smallest admissible one: n_j is the least level above
    n_{j-1} whose order is a proper multiple of k2_{m_{j-1}}, and m_j the
    least level above m_{j-1} whose order k1_{n_j} divides (equality allowed).
    """
    if not (isinstance(depth, int) and depth >= 0):
        raise PreconditionViolation("depth must be an integer >= 0")
    if not (t1.is_infinite and t2.is_infinite):
        raise PreconditionViolation("interleaving requires two infinite towers")
    if not bijectively_coarsely_equivalent(t1, t2):
        raise NotEquivalent("towers have different supernatural numbers")

    def scan_cap(t: Tower, level: int, divisor: int) -> int:
        # every tail prime gains a valuation per period and the divisor's
        # valuations are at most its bit length, so this level always works
        return max(level + 1,
                   len(t.prefix) + len(t.tail) * (divisor.bit_length() + 1) + 2)

    pairs = []
    n, m = 0, 0
    k1, k2 = 1, 1  # orders at levels n and m
    for _ in range(depth):
        kn, nn, cap = k1, n, scan_cap(t1, n, k2)
        while True:
            nn += 1
            if nn > cap:
                raise DepthExhausted(f"no source level above {n} found by level {cap}")
            kn *= t1.ratio(nn - 1)
            if kn % k2 == 0 and kn != k2:
                break
        km, mm, cap = k2, m, scan_cap(t2, m, kn)
        while True:
            mm += 1
            if mm > cap:
                raise DepthExhausted(f"no target level above {m} found by level {cap}")
            km *= t2.ratio(mm - 1)
            if km % kn == 0:
                break
        n, m, k1, k2 = nn, mm, kn, km
        pairs.append((n, m))
    return tuple(pairs)


@dataclass(frozen=True)
class TowerBijection:
    """Truncated bijective coarse equivalence between two towers.

    ``mapping[x]`` is the image of source point x; the domain is the full
    source truncation {0..k1_{n_D}-1} and images lie in {0..k2_{m_D}-1}.
    ``modulus`` is measured from the map: modulus[l] is the least target
    level whose components absorb the image of every source l-component.
    """

    source: Tower
    target: Tower
    depth: int
    levels: tuple[tuple[int, int], ...]
    mapping: tuple[int, ...]
    modulus: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        levels = tuple((int(n), int(m)) for n, m in self.levels)
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if len(levels) != self.depth:
            raise MalformedInput("levels length must equal depth")
        prev_n, prev_m = 0, 0
        for n, m in levels:
            if n <= prev_n or m <= prev_m:
                raise MalformedInput("level indices must be strictly increasing")
            prev_n, prev_m = n, m
        n_d, m_d = self.final_levels
        dom = self.source.order(n_d)
        cod = self.target.order(m_d)
        if len(self.mapping) != dom:
            raise MalformedInput(f"map must cover the full source truncation ({dom} points)")
        for y in self.mapping:
            if not (isinstance(y, int) and 0 <= y < cod):
                raise MalformedInput(f"image {y!r} outside the target truncation")
        object.__setattr__(self, "modulus", _measure_modulus(self))

    @property
    def final_levels(self) -> tuple[int, int]:
        return self.levels[-1] if self.levels else (0, 0)

    @property
    def domain_size(self) -> int:
        return len(self.mapping)


def _measure_modulus(b: TowerBijection) -> tuple[int, ...]:
    n_d, m_d = b.final_levels
    src_orders = b.source.orders(n_d)
    tgt_orders = b.target.orders(m_d)
    out = []
    for level in range(n_d + 1):
        k = src_orders[level]
        # span of each source block's image: containment in one aligned
        # target interval only depends on min and max
        spans = []
        for j in range(b.domain_size // k):
            img = b.mapping[j * k : (j + 1) * k]
            spans.append((min(img), max(img)))
        for s in range(m_d + 1):
            w = tgt_orders[s]
            if all(lo // w == hi // w for lo, hi in spans):
                out.append(s)
                break
        else:  # whole truncation is one m_d-component, cannot happen
            raise AssertionError("modulus measurement failed")
    return tuple(out)


def build_back_and_forth(t1: Tower, t2: Tower, depth: int) -> TowerBijection:
    """Deterministic back-and-forth witness truncated at interleave depth."""
    levels = interleave_towers(t1, t2, depth)
    n_d = levels[-1][0] if levels else 0
    return TowerBijection(
        source=t1,
        target=t2,
        depth=depth,
        levels=levels,
        mapping=tuple(range(t1.order(n_d))),
    )


@dataclass(frozen=True)
class LevelCheck:
    level: int
    modulus: int
    bound: int
    within_bound: bool
    decomposition_ok: bool
    order_divides: bool

    @property
    def passed(self) -> bool:
        return self.within_bound and self.decomposition_ok and self.order_divides


@dataclass(frozen=True)
class VerificationReport:
    injective: bool
    levels: tuple[LevelCheck, ...]

    @property
    def passed(self) -> bool:
        return self.injective and all(c.passed for c in self.levels)


def verify_bijective_coarse_equivalence(b: TowerBijection) -> VerificationReport:
    """Measure every claimed property of a candidate truncated witness.

    For each source level l the image of every l-component must fit in a
    single target component at the interleave-promised level m_{j(l)}
    (j(l) = least j with n_j >= l); the covered part of each such target
    component must decompose into complete source-component images; and the
    source component order must divide the promised target component order.
    """
    n_d, m_d = b.final_levels
    src_orders = b.source.orders(n_d)
    tgt_orders = b.target.orders(m_d)
    injective = len(set(b.mapping)) == len(b.mapping)

    checks = []
    for level in range(n_d + 1):
        if level == 0:
            bound = 0
        else:
            bound = next(m for n, m in b.levels if n >= level)
        rho = b.modulus[level]
        within = rho <= bound

        k = src_orders[level]
        w = tgt_orders[bound]
        decomposition = within and injective
        if decomposition:
            # every covered target `bound`-component must be a disjoint union
            # of whole source level-`level` component images
            covered: dict[int, int] = {}
            for j in range(b.domain_size // k):
                img = b.mapping[j * k : (j + 1) * k]
                tgt_block = img[0] // w
                if any(y // w != tgt_block for y in img):
                    decomposition = False
                    break
                covered[tgt_block] = covered.get(tgt_block, 0) + k
            if decomposition:
                seen: dict[int, int] = {}
                for y in b.mapping:
                    seen[y // w] = seen.get(y // w, 0) + 1
                decomposition = covered == seen
        divides = tgt_orders[bound] % k == 0
        checks.append(LevelCheck(level, rho, bound, within, decomposition, divides))
    return VerificationReport(injective, tuple(checks))
