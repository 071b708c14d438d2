"""Concrete lattices: subsets, products of subsets, and set partitions.

Subsets of {1..N} are encoded as bitmasks (bit i-1 set iff element i is
in the subset), indexed by (popcount, mask value).  Partitions are
canonicalized as restricted-growth strings (RGS) and indexed by
(number of atoms descending, RGS lexicographic); skeletons are the
descending multisets of atom sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidSkeleton, NotComparable, SizeOverflow
from .poset import FinitePoset, ZetaPair, build_poset, moebius_matrix

__all__ = [
    "SubsetLattice",
    "ProductSetLattice",
    "Partition",
    "PartitionLattice",
    "Skeleton",
    "subset_lattice",
    "product_set_lattice",
    "partition_lattice",
    "partition_moebius_closed_form",
    "skeleton",
    "skeleton_count",
    "skeleton_order",
    "skeletons_of",
    "bell_number",
    "MAX_SUBSET_GROUND",
    "MAX_PARTITION_GROUND",
]

MAX_SUBSET_GROUND = 20
MAX_PARTITION_GROUND = 8


def _popcount(x: int) -> int:
    return bin(x).count("1")


# ---------------------------------------------------------------------------
# Subset lattice
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubsetLattice:
    """All subsets of {1..N} ordered by inclusion, as bitmasks."""

    ground_size: int
    pair: ZetaPair

    @property
    def poset(self) -> FinitePoset:
        return self.pair.poset

    def mu_closed_form(self, j_mask: int, k_mask: int) -> int:
        if j_mask & ~k_mask:
            raise NotComparable(f"{j_mask:b} is not a subset of {k_mask:b}")
        return (-1) ** (_popcount(k_mask) - _popcount(j_mask))

    def mask_of(self, items) -> int:
        m = 0
        for i in items:
            if not 1 <= i <= self.ground_size:
                raise ValueError(f"element {i} outside ground set")
            m |= 1 << (i - 1)
        return m

    def label(self, mask: int) -> str:
        items = [str(i + 1) for i in range(self.ground_size) if mask >> i & 1]
        return "{" + " ".join(items) + "}"


def subset_lattice(n: int, *, cap: int = MAX_SUBSET_GROUND) -> SubsetLattice:
    """Subset lattice of {1..n}, with the closed-form mu verified by type."""
    if not 0 <= n <= cap:
        raise SizeOverflow(f"subset lattice needs 0 <= N <= {cap}, got {n}")
    masks = sorted(range(1 << n), key=lambda m: (_popcount(m), m))
    poset = build_poset(masks, lambda a, b: a & ~b == 0, validate=n <= 8)
    return SubsetLattice(ground_size=n, pair=moebius_matrix(poset, verify=n <= 8))


# ---------------------------------------------------------------------------
# Product-of-sets lattice
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductSetLattice:
    """T-fold product of the subset lattice of {1..N}, componentwise order."""

    ground_size: int
    copies: int
    pair: ZetaPair

    @property
    def poset(self) -> FinitePoset:
        return self.pair.poset

    def mu_closed_form(self, jvec, kvec) -> int:
        total = 0
        for j, k in zip(jvec, kvec):
            if j & ~k:
                raise NotComparable("componentwise inclusion fails")
            total += _popcount(k) - _popcount(j)
        return (-1) ** total

    def flatten(self, jvec) -> int:
        """The order isomorphism onto the subset lattice of {1..N*T}."""
        m = 0
        for t, j in enumerate(jvec):
            m |= j << (t * self.ground_size)
        return m


def product_set_lattice(n: int, t: int, *, cap: int = 4096) -> ProductSetLattice:
    if (1 << (n * t)) > cap:
        raise SizeOverflow(f"product-of-sets lattice has 2^{n * t} elements, cap {cap}")
    labels = [()]
    for _ in range(t):
        labels = [vec + (m,) for vec in labels for m in range(1 << n)]
    labels.sort(key=lambda v: (sum(_popcount(m) for m in v), v))
    poset = build_poset(
        labels, lambda a, b: all(x & ~y == 0 for x, y in zip(a, b)), validate=False
    )
    return ProductSetLattice(ground_size=n, copies=t, pair=moebius_matrix(poset))


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """A set partition of {1..n}, canonically encoded as an RGS tuple.

    ``rgs[i]`` is the atom label of element i+1; labels appear in first-use
    order starting from 0, which makes the encoding unique.
    """

    rgs: tuple

    def __post_init__(self):
        seen = -1
        for v in self.rgs:
            if v > seen + 1 or v < 0:
                raise ValueError(f"not a restricted-growth string: {self.rgs}")
            seen = max(seen, v)

    @classmethod
    def from_atoms(cls, atoms, n: int | None = None) -> "Partition":
        atoms = [frozenset(a) for a in atoms]
        ground = set().union(*atoms) if atoms else set()
        if n is None:
            n = len(ground)
        if ground != set(range(1, n + 1)) or sum(len(a) for a in atoms) != n:
            raise ValueError("atoms must be disjoint, nonempty and cover {1..n}")
        if any(not a for a in atoms):
            raise ValueError("empty atom")
        owner = {}
        for a in atoms:
            for i in a:
                owner[i] = a
        relabel, rgs, nxt = {}, [], 0
        for i in range(1, n + 1):
            a = owner[i]
            if a not in relabel:
                relabel[a] = nxt
                nxt += 1
            rgs.append(relabel[a])
        return cls(tuple(rgs))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def one_block(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Accepts RGS digits ("0,0,1") or atom notation ("{1 2}{3}")."""
        text = text.strip()
        if text.startswith("{"):
            atoms = []
            for chunk in text.replace("}", "}|").split("|"):
                chunk = chunk.strip()
                if not chunk:
                    continue
                inner = chunk.strip("{}").replace(",", " ").split()
                atoms.append({int(x) for x in inner})
            return cls.from_atoms(atoms)
        return cls(tuple(int(x) for x in text.replace(",", " ").split()))

    @property
    def n(self) -> int:
        return len(self.rgs)

    @property
    def num_atoms(self) -> int:
        return max(self.rgs) + 1 if self.rgs else 0

    def atoms(self):
        out = [set() for _ in range(self.num_atoms)]
        for i, v in enumerate(self.rgs):
            out[v].add(i + 1)
        return [frozenset(a) for a in out]

    def refines(self, other: "Partition") -> bool:
        """True iff every atom of self is contained in an atom of other."""
        if self.n != other.n:
            raise ValueError("ground sets differ")
        block_of = {}
        for a, b in zip(self.rgs, other.rgs):
            if a in block_of:
                if block_of[a] != b:
                    return False
            else:
                block_of[a] = b
        return True

    def __str__(self):
        return "".join(
            "{" + " ".join(map(str, sorted(a))) + "}"
            for a in sorted(self.atoms(), key=min)
        )


@dataclass(frozen=True)
class PartitionLattice:
    """All partitions of {1..n} under refinement; bottom is all-singletons."""

    ground_size: int
    pair: ZetaPair

    @property
    def poset(self) -> FinitePoset:
        return self.pair.poset


def enumerate_partitions(n: int):
    """All partitions of {1..n} in canonical order: atoms descending, RGS lex."""
    if n == 0:
        return [Partition(())]
    out = []

    def grow(rgs, mx):
        if len(rgs) == n:
            out.append(Partition(tuple(rgs)))
            return
        for v in range(mx + 2):
            rgs.append(v)
            grow(rgs, max(mx, v))
            rgs.pop()

    grow([0], 0)
    out.sort(key=lambda p: (-p.num_atoms, p.rgs))
    return out


@lru_cache(maxsize=None)
def bell_number(n: int) -> int:
    if n == 0:
        return 1
    return sum(math.comb(n - 1, k) * bell_number(k) for k in range(n))


def partition_lattice(n: int, *, cap: int = MAX_PARTITION_GROUND) -> PartitionLattice:
    if not 1 <= n <= cap:
        raise SizeOverflow(f"partition lattice needs 1 <= n <= {cap}, got {n}")
    parts = enumerate_partitions(n)
    poset = build_poset(parts, lambda a, b: a.refines(b), validate=n <= 5)
    return PartitionLattice(ground_size=n, pair=moebius_matrix(poset, verify=n <= 6))


def partition_moebius_closed_form(alpha: Partition, beta: Partition) -> int:
    """mu(alpha, beta) = (-1)^([alpha]+[beta]) * prod over atoms B of beta of
    (number of alpha-atoms inside B - 1)!."""
    if not alpha.refines(beta):
        raise NotComparable(f"{alpha} does not refine {beta}")
    counts = {}
    seen = set()
    for a, b in zip(alpha.rgs, beta.rgs):
        if a not in seen:
            seen.add(a)
            counts[b] = counts.get(b, 0) + 1
    sign = (-1) ** (alpha.num_atoms + beta.num_atoms)
    prod = 1
    for c in counts.values():
        prod *= math.factorial(c - 1)
    return sign * prod


# ---------------------------------------------------------------------------
# Skeletons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Skeleton:
    """Multiset of atom sizes, stored sorted descending."""

    parts: tuple

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise InvalidSkeleton(f"parts must be >= 1: {self.parts}")
        if tuple(sorted(self.parts, reverse=True)) != self.parts:
            raise InvalidSkeleton(f"parts must be sorted descending: {self.parts}")

    @classmethod
    def of(cls, parts) -> "Skeleton":
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "Skeleton":
        return cls.of(int(x) for x in text.strip().split("+"))

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def part_count(self) -> int:
        return len(self.parts)

    def __str__(self):
        return "+".join(map(str, self.parts))


def skeleton(alpha: Partition) -> Skeleton:
    return Skeleton.of(len(a) for a in alpha.atoms())


def skeletons_of(n: int):
    """All skeletons in E_N, ordered by (part count descending, parts lex)."""
    out = []

    def gen(remaining, mx, acc):
        if remaining == 0:
            out.append(Skeleton(tuple(acc)))
            return
        for p in range(min(mx, remaining), 0, -1):
            acc.append(p)
            gen(remaining - p, p, acc)
            acc.pop()

    gen(n, n, [])
    out.sort(key=lambda s: (-s.part_count, s.parts))
    return out


def skeleton_count(eta: Skeleton, n: int) -> int:
    """Number of partitions of {1..n} with skeleton eta:
    n! / prod(e!) divided by the factorials of part-size multiplicities."""
    if eta.total != n:
        raise InvalidSkeleton(f"{eta} does not sum to {n}")
    count = math.factorial(n)
    for e in eta.parts:
        count //= math.factorial(e)
    mult = {}
    for e in eta.parts:
        mult[e] = mult.get(e, 0) + 1
    for m in mult.values():
        count //= math.factorial(m)
    return count


def skeleton_order(eta: Skeleton, kappa: Skeleton) -> bool:
    """The merge order on E_N: kappa is obtainable by grouping-and-summing
    eta's parts.  Decided by exact backtracking over assignments of eta's
    parts to kappa's parts."""
    if eta.total != kappa.total:
        raise InvalidSkeleton("skeletons of different totals are never comparable")
    if eta.part_count < kappa.part_count:
        return False

    targets = list(kappa.parts)

    def assign(i, remaining):
        if i == len(eta.parts):
            return all(r == 0 for r in remaining)
        seen = set()
        for r in range(len(remaining)):
            if remaining[r] >= eta.parts[i] and remaining[r] not in seen:
                seen.add(remaining[r])
                remaining[r] -= eta.parts[i]
                if assign(i + 1, remaining):
                    remaining[r] += eta.parts[i]
                    return True
                remaining[r] += eta.parts[i]
        return False

    return assign(0, targets)
