"""Set-valued haploid and multi-allelic exchangeable population models.

An offspring law assigns to each parent i the set nu_i of its children;
the nu_i are disjoint and cover the population.  The forward chain tracks
the carrier set of an allele, the backward chain tracks ancestors, and the
two are dual through the transpose of the subset-lattice zeta matrix.
Coarse-graining by cardinality recovers the classical frequency chain and
its hypergeometric dual.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .coarse_graining import (
    EquivalenceRelation,
    CoarseDualityResult,
    cardinality_relation,
    coarse_duality_pipeline,
)
from .duality import DualityVariant, Kernel
from .errors import NotExchangeable, SizeOverflow
from .lattices import SubsetLattice, subset_lattice
from .poset import ZetaPair, build_poset, moebius_matrix
from .rational import RationalMatrix

__all__ = [
    "OffspringLaw",
    "ForwardSetKernel",
    "BackwardSetKernel",
    "MultiAllelicKernels",
    "CanningsCoarse",
    "MultiAllelicCoarse",
    "MonteCarloResult",
    "wright_fisher_law",
    "moran_law",
    "forward_kernel",
    "backward_kernel",
    "verify_transpose_zeta_duality",
    "coarsen_to_cannings",
    "hypergeometric_matrix",
    "hypergeometric_inverse",
    "coarse_forward_direct",
    "coarse_backward_moment_formula",
    "multiallelic_kernels",
    "coarsen_multiallelic",
    "monte_carlo_duality",
    "exact_coarse_duality_value",
]


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class OffspringLaw:
    """Finite exact distribution over indexed partitions of {1..N}.

    Each support atom is a tuple of N disjoint bitmasks whose union is the
    full population; nu[i] is the set of children of parent i+1.
    """

    ground_size: int
    support: tuple  # of (nu: tuple of bitmasks, probability: Fraction)
    exchangeable: bool

    @classmethod
    def build(cls, n: int, atoms) -> "OffspringLaw":
        full = (1 << n) - 1
        support = []
        total = Fraction(0)
        for nu, p in atoms:
            nu = tuple(nu)
            p = Fraction(p)
            assert len(nu) == n
            union, overlap = 0, 0
            for m in nu:
                overlap |= union & m
                union |= m
            assert overlap == 0 and union == full, "nu must partition the population"
            assert p > 0
            support.append((nu, p))
            total += p
        assert total == 1
        law = cls(ground_size=n, support=tuple(support), exchangeable=False)
        object.__setattr__(law, "exchangeable", law._check_exchangeable())
        return law

    def _check_exchangeable(self) -> bool:
        """Invariance of the law under relabelling the population.

        A permutation pi acts on an indexed partition by permuting both the
        parent index and the children sets: nu -> (pi(nu_{pi^{-1}(i)}))_i.
        Adjacent transpositions generate the full symmetric group and
        invariance is closed under composition, so checking the N-1
        generators is an exact test.  This implies the exchangeability of
        the offspring-size vector used by every coarse-graining here.
        """
        table = {nu: p for nu, p in self.support}

        def swap_bits(mask, k):
            lo, hi = (mask >> k) & 1, (mask >> (k + 1)) & 1
            if lo != hi:
                mask ^= (1 << k) | (1 << (k + 1))
            return mask

        for k in range(self.ground_size - 1):
            for nu, p in self.support:
                relabeled = tuple(swap_bits(m, k) for m in nu)
                swapped = (
                    relabeled[:k]
                    + (relabeled[k + 1], relabeled[k])
                    + relabeled[k + 2:]
                )
                if table.get(swapped, Fraction(0)) != p:
                    return False
        return True

    def require_exchangeable(self):
        if not self.exchangeable:
            raise NotExchangeable("offspring law is not permutation invariant")


def wright_fisher_law(n: int) -> OffspringLaw:
    """Each child picks a uniform parent independently; N^N atoms."""
    if not 1 <= n <= 6:
        raise SizeOverflow(f"wright-fisher law needs 1 <= N <= 6, got {n}")
    p = Fraction(1, n ** n)
    atoms = []
    for choice in product(range(n), repeat=n):
        nu = [0] * n
        for child, parent in enumerate(choice):
            nu[parent] |= 1 << child
        atoms.append((tuple(nu), p))
    law = OffspringLaw.build(n, atoms)
    assert law.exchangeable
    return law


def moran_law(n: int) -> OffspringLaw:
    """A uniform pair (b, d), b != d: d dies, b keeps its slot and takes d's."""
    if not 2 <= n <= 8:
        raise SizeOverflow(f"moran law needs 2 <= N <= 8, got {n}")
    p = Fraction(1, n * (n - 1))
    atoms = []
    for b in range(n):
        for d in range(n):
            if b == d:
                continue
            nu = [1 << i for i in range(n)]
            nu[b] = (1 << b) | (1 << d)
            nu[d] = 0
            atoms.append((tuple(nu), p))
    law = OffspringLaw.build(n, atoms)
    assert law.exchangeable
    return law


# ---------------------------------------------------------------------------
# Haploid forward and backward kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ForwardSetKernel:
    law: OffspringLaw
    lattice: SubsetLattice
    kernel: Kernel  # rows/cols in the lattice index order


@dataclass(frozen=True)
class BackwardSetKernel:
    law: OffspringLaw
    lattice: SubsetLattice
    kernel: Kernel


def _forward_unions(nu, n):
    """union over i in J of nu_i, for every J, by peeling the lowest bit."""
    out = [0] * (1 << n)
    for j in range(1, 1 << n):
        low = j & -j
        out[j] = out[j ^ low] | nu[low.bit_length() - 1]
    return out


def forward_kernel(law: OffspringLaw, lattice: SubsetLattice | None = None) -> ForwardSetKernel:
    """P(J, K) = probability that the children of J are exactly K."""
    n = law.ground_size
    lat = lattice if lattice is not None else subset_lattice(n)
    idx = lat.poset.index
    size = len(lat.poset)
    rows = [dict() for _ in range(size)]
    for nu, p in law.support:
        unions = _forward_unions(nu, n)
        for j_mask in range(1 << n):
            r = rows[idx[j_mask]]
            k = idx[unions[j_mask]]
            r[k] = r.get(k, Fraction(0)) + p
    mat = RationalMatrix.from_function(
        size, size, lambda i, j: rows[i].get(j, Fraction(0))
    )
    kernel = Kernel.of(mat)
    assert kernel.is_stochastic
    return ForwardSetKernel(law=law, lattice=lat, kernel=kernel)


def _ancestors(nu, j_mask):
    """The unique minimal set of parents whose children cover j_mask.

    Because the nu_i are disjoint, each child has exactly one parent, so
    any covering set contains this one; minimality is therefore uniqueness.
    """
    k = 0
    cover = 0
    for i, m in enumerate(nu):
        if m & j_mask:
            k |= 1 << i
            cover |= m
    assert cover & j_mask == j_mask
    return k


def backward_kernel(law: OffspringLaw, lattice: SubsetLattice | None = None) -> BackwardSetKernel:
    """Q(J, K) = probability that K is the ancestor set of J one step back."""
    n = law.ground_size
    lat = lattice if lattice is not None else subset_lattice(n)
    idx = lat.poset.index
    size = len(lat.poset)
    rows = [dict() for _ in range(size)]
    for nu, p in law.support:
        for j_mask in range(1 << n):
            r = rows[idx[j_mask]]
            k = idx[_ancestors(nu, j_mask)]
            r[k] = r.get(k, Fraction(0)) + p
    mat = RationalMatrix.from_function(
        size, size, lambda i, j: rows[i].get(j, Fraction(0))
    )
    kernel = Kernel.of(mat)
    assert kernel.is_stochastic
    return BackwardSetKernel(law=law, lattice=lat, kernel=kernel)


def verify_transpose_zeta_duality(fk: ForwardSetKernel, bk: BackwardSetKernel) -> bool:
    """Two independent routes to Q from P.

    Route 1 is the matrix identity Z' Q' = P Z'.  Route 2 recomputes every
    entry by inclusion-exclusion over subsets of the target and supersets
    of the source, with no matrix algebra shared with route 1.
    """
    assert fk.law is bk.law
    lat = fk.lattice
    zp = lat.pair
    p, q = fk.kernel.matrix, bk.kernel.matrix
    if zp.zeta.T @ q.T != p @ zp.zeta.T:
        return False
    # route 2: Q(J,K) = sum over L subset of K of (-1)^{|K|-|L|}
    #                     sum over M superset of J of P(L, M)
    n = lat.ground_size
    idx = lat.poset.index
    pa = p.array()
    super_sums = {}
    for l_mask in range(1 << n):
        row = pa[idx[l_mask]]
        for j_mask in range(1 << n):
            s = Fraction(0)
            for m_mask in range(1 << n):
                if j_mask & ~m_mask == 0:
                    s += row[idx[m_mask]]
            super_sums[(l_mask, j_mask)] = s
    qa = q.array()
    for j_mask in range(1 << n):
        for k_mask in range(1 << n):
            total = Fraction(0)
            l_mask = k_mask
            while True:
                sign = (-1) ** (_popcount(k_mask) - _popcount(l_mask))
                total += sign * super_sums[(l_mask, j_mask)]
                if l_mask == 0:
                    break
                l_mask = (l_mask - 1) & k_mask
            if total != qa[idx[j_mask], idx[k_mask]]:
                return False
    return True


# ---------------------------------------------------------------------------
# Coarse-graining to the classical frequency chain
# ---------------------------------------------------------------------------


def hypergeometric_matrix(n: int) -> RationalMatrix:
    """H(i, j) = C(i,j)/C(N,j) for j <= i, on {0..N}."""
    return RationalMatrix.from_function(
        n + 1,
        n + 1,
        lambda i, j: Fraction(math.comb(i, j), math.comb(n, j)) if j <= i else Fraction(0),
    )


def hypergeometric_inverse(n: int) -> RationalMatrix:
    """Closed-form inverse: (-1)^{i-j} C(i,j) C(N,i) for j <= i."""
    return RationalMatrix.from_function(
        n + 1,
        n + 1,
        lambda i, j: Fraction((-1) ** (i - j) * math.comb(i, j) * math.comb(n, i))
        if j <= i
        else Fraction(0),
    )


def coarse_forward_direct(law: OffspringLaw) -> RationalMatrix:
    """P(i, j) = probability that the first i parents have j children in all."""
    law.require_exchangeable()
    n = law.ground_size
    rows = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for nu, p in law.support:
        sizes = [_popcount(m) for m in nu]
        tot = 0
        rows[0][0] += p
        for i in range(1, n + 1):
            tot += sizes[i - 1]
            rows[i][tot] += p
    return RationalMatrix(rows)


def coarse_backward_moment_formula(law: OffspringLaw) -> RationalMatrix:
    """Q(i, j) = [C(N,j)/C(N,i)] * sum over (l_1..l_j) >= 1 with sum i of
    E[prod_r C(|nu_r|, l_r)]."""
    law.require_exchangeable()
    n = law.ground_size

    def compositions(total, parts):
        if parts == 0:
            if total == 0:
                yield ()
            return
        for first in range(1, total - parts + 2):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    size_moments = {}  # (l_1..l_j) -> E[prod C(|nu_r|, l_r)]

    def moment(ls):
        if ls not in size_moments:
            s = Fraction(0)
            for nu, p in law.support:
                prod = 1
                for r, l in enumerate(ls):
                    prod *= math.comb(_popcount(nu[r]), l)
                    if prod == 0:
                        break
                s += p * prod
            size_moments[ls] = s
        return size_moments[ls]

    def entry(i, j):
        total = sum((moment(ls) for ls in compositions(i, j)), Fraction(0))
        return Fraction(math.comb(n, j), math.comb(n, i)) * total

    return RationalMatrix.from_function(n + 1, n + 1, entry)


@dataclass(frozen=True)
class CanningsCoarse:
    ground_size: int
    pipeline: CoarseDualityResult
    p_coarse: Kernel  # classical frequency chain on {0..N}
    h_coarse_hat: RationalMatrix  # the hypergeometric matrix
    q_coarse_hh: Kernel  # coarse ancestral chain, stochastic


def coarsen_to_cannings(fk: ForwardSetKernel, bk: BackwardSetKernel) -> CanningsCoarse:
    """Cardinality coarse-graining of the dual pair, with every closed form
    (direct forward formula, hypergeometric matrix and inverse, backward
    moment formula) verified against the pipeline output."""
    law = fk.law
    law.require_exchangeable()
    n = law.ground_size
    lat = fk.lattice
    rel = cardinality_relation(lat)
    res = coarse_duality_pipeline(fk.kernel, lat.pair, DualityVariant.ZETA_TRANSPOSE, rel)
    assert res.q == bk.kernel.matrix, "pipeline dual differs from the ancestral kernel"
    assert res.h_hat == tuple(Fraction(math.comb(n, j)) for j in range(n + 1))
    assert res.p_coarse.matrix == coarse_forward_direct(law)
    assert res.h_coarse_hat == hypergeometric_matrix(n)
    assert res.h_coarse_hat.inverse() == hypergeometric_inverse(n)
    assert res.q_coarse_hh.matrix == coarse_backward_moment_formula(law)
    assert res.p_coarse.is_stochastic and res.q_coarse_hh.is_stochastic
    return CanningsCoarse(
        ground_size=n,
        pipeline=res,
        p_coarse=res.p_coarse,
        h_coarse_hat=res.h_coarse_hat,
        q_coarse_hh=res.q_coarse_hh,
    )


# ---------------------------------------------------------------------------
# Multi-allelic kernels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiAllelicKernels:
    """Forward chain on covering type assignments, backward on partial ones.

    States are T-tuples of disjoint bitmasks.  The forward state space
    requires the masks to cover the population; the backward (ancestral)
    space does not, and the backward kernel may lose mass when one parent's
    children straddle two type classes.
    """

    law: OffspringLaw
    types: int
    pair: ZetaPair  # zeta/Moebius of the partial-assignment poset
    covering: tuple  # indices (into pair.poset.elements) of covering states
    p: Kernel  # forward kernel restricted to covering states, stochastic
    p_ext: Kernel  # forward kernel on the whole partial space, stochastic
    q: Kernel  # backward kernel on the partial space, substochastic
    defect: tuple  # per-state mass loss of q


def _partial_states(n: int, t: int):
    """All T-tuples of disjoint subsets of {1..N}: one type in 0..T per
    individual, type 0 meaning absent."""
    states = []
    for assign in product(range(t + 1), repeat=n):
        masks = [0] * t
        for i, a in enumerate(assign):
            if a:
                masks[a - 1] |= 1 << i
        states.append(tuple(masks))
    states = sorted(set(states), key=lambda s: (sum(_popcount(m) for m in s), s))
    return states


def multiallelic_kernels(law: OffspringLaw, t: int, *, cap: int = 4096) -> MultiAllelicKernels:
    """Exact forward and backward kernels for T allele types, with the
    transpose-zeta duality verified by matrix identity and, independently,
    by componentwise inclusion-exclusion."""
    if t < 2:
        raise ValueError("multi-allelic model needs T >= 2")
    n = law.ground_size
    if (t + 1) ** n > cap:
        raise SizeOverflow(f"(T+1)^N = {(t + 1) ** n} partial states, cap {cap}")
    states = _partial_states(n, t)
    poset = build_poset(
        states,
        lambda a, b: all(x & ~y == 0 for x, y in zip(a, b)),
        validate=False,
    )
    pair = moebius_matrix(poset, verify=len(states) <= 256)
    idx = poset.index
    size = len(states)
    full = (1 << n) - 1
    covering = tuple(
        i for i, s in enumerate(poset.elements)
        if sum(_popcount(m) for m in s) == n
    )

    p_rows = [dict() for _ in range(size)]
    q_rows = [dict() for _ in range(size)]
    for nu, prob in law.support:
        unions = _forward_unions(nu, n)
        for si, jvec in enumerate(poset.elements):
            kvec = tuple(unions[m] for m in jvec)
            r = p_rows[si]
            ki = idx[kvec]
            r[ki] = r.get(ki, Fraction(0)) + prob
            # ancestors per type; mass is lost when they are not disjoint
            avec = []
            seen = 0
            ok = True
            for m in jvec:
                a = 0
                for i in range(n):
                    if nu[i] & m:
                        a |= 1 << i
                if a & seen:
                    ok = False
                    break
                seen |= a
                avec.append(a)
            if ok:
                qi = idx[tuple(avec)]
                qr = q_rows[si]
                qr[qi] = qr.get(qi, Fraction(0)) + prob

    p_ext = RationalMatrix.from_function(
        size, size, lambda i, j: p_rows[i].get(j, Fraction(0))
    )
    q = RationalMatrix.from_function(
        size, size, lambda i, j: q_rows[i].get(j, Fraction(0))
    )
    p_ext_k = Kernel.of(p_ext)
    q_k = Kernel.of(q)
    assert p_ext_k.is_stochastic
    assert q_k.is_substochastic
    defect = tuple(Fraction(1) - s for s in q.row_sums())

    # forward kernel restricted to covering states is stochastic on them
    p_cov = RationalMatrix.from_function(
        len(covering),
        len(covering),
        lambda a, b: p_ext[covering[a], covering[b]],
    )
    p_k = Kernel.of(p_cov)
    assert p_k.is_stochastic

    assert _verify_multiallelic_duality(pair, p_ext, q, n, t)

    return MultiAllelicKernels(
        law=law,
        types=t,
        pair=pair,
        covering=covering,
        p=p_k,
        p_ext=p_ext_k,
        q=q_k,
        defect=defect,
    )


def _verify_multiallelic_duality(pair: ZetaPair, p_ext, q, n, t) -> bool:
    """Matrix route Z' Q' = P Z' plus the componentwise inclusion-exclusion
    route, sharing no linear algebra."""
    if pair.zeta.T @ q.T != p_ext @ pair.zeta.T:
        return False
    poset = pair.poset
    size = len(poset)
    pa, qa = p_ext.array(), q.array()
    # super_sums[l][j] = sum of P(L, M) over states M componentwise above J
    super_sums = [
        [sum((pa[l, m] for m in poset.up_idx(j)), Fraction(0)) for j in range(size)]
        for l in range(size)
    ]
    for j in range(size):
        for k in range(size):
            kcount = sum(_popcount(m) for m in poset.elements[k])
            total = Fraction(0)
            for l in poset.down_idx(k):
                lcount = sum(_popcount(m) for m in poset.elements[l])
                total += (-1) ** (kcount - lcount) * super_sums[l][j]
            if total != qa[j, k]:
                return False
    return True


@dataclass(frozen=True)
class MultiAllelicCoarse:
    types: int
    classes: tuple  # type-count vectors, in coarse index order
    pipeline: CoarseDualityResult
    p_coarse: Kernel
    h_coarse_hat: RationalMatrix
    q_coarse_hh: Kernel  # substochastic


def _multinomial_class_size(n: int, evec) -> int:
    rest = n - sum(evec)
    count = math.factorial(n) // math.factorial(rest)
    for e in evec:
        count //= math.factorial(e)
    return count


def coarsen_multiallelic(ma: MultiAllelicKernels) -> MultiAllelicCoarse:
    """Type-count coarse-graining of the multi-allelic dual pair.

    Verifies the multinomial class sizes, the product-binomial closed form
    of the transformed coarse H, and the direct forward formula
    P(dvec, evec) = prob(type-t parents have e_t children for every t).
    """
    law = ma.law
    law.require_exchangeable()
    n = law.ground_size
    poset = ma.pair.poset
    rel = EquivalenceRelation.from_function(
        poset.elements, lambda s: tuple(_popcount(m) for m in s)
    )
    res = coarse_duality_pipeline(ma.p_ext, ma.pair, DualityVariant.ZETA_TRANSPOSE, rel)
    assert res.q == ma.q.matrix

    classes = rel.class_labels
    m = len(classes)
    for k, evec in enumerate(classes):
        assert res.h_hat[k] == _multinomial_class_size(n, evec)

    # product-binomial closed form of the transformed coarse H
    for a, dvec in enumerate(classes):
        for b, evec in enumerate(classes):
            prod = 1
            for d, e in zip(dvec, evec):
                prod *= math.comb(d, e)
            expected = Fraction(prod, _multinomial_class_size(n, evec))
            assert res.h_coarse_hat[a, b] == expected

    # direct forward formula from a block representative of each class
    reps = {}
    for dvec in classes:
        masks, start = [], 0
        for d in dvec:
            masks.append(((1 << d) - 1) << start)
            start += d
        reps[dvec] = tuple(masks)
    direct = [[Fraction(0)] * m for _ in range(m)]
    pos = {c: i for i, c in enumerate(classes)}
    for nu, prob in law.support:
        sizes = [_popcount(x) for x in nu]
        for a, dvec in enumerate(classes):
            evec = []
            start = 0
            for d in dvec:
                evec.append(sum(sizes[start:start + d]))
                start += d
            key = tuple(evec)
            if key in pos:
                direct[a][pos[key]] += prob
    assert RationalMatrix(direct) == res.p_coarse.matrix

    assert res.p_coarse.is_stochastic
    assert res.q_coarse_hh.is_substochastic

    return MultiAllelicCoarse(
        types=ma.types,
        classes=classes,
        pipeline=res,
        p_coarse=res.p_coarse,
        h_coarse_hat=res.h_coarse_hat,
        q_coarse_hh=res.q_coarse_hh,
    )


# ---------------------------------------------------------------------------
# Monte Carlo duality estimator
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonteCarloResult:
    steps: int
    reps: int
    seed: int
    forward_mean: float
    forward_stderr: float
    backward_mean: float
    backward_stderr: float


class _AtomSampler:
    """Inverse-CDF sampling from the exact law by integer weights.

    All probabilities are scaled by their common denominator, so the draw
    is an exact integer comparison with no floating point involved.
    """

    def __init__(self, law: OffspringLaw):
        denom = math.lcm(*(p.denominator for _, p in law.support))
        self.atoms = [nu for nu, _ in law.support]
        cum = []
        acc = 0
        for _, p in law.support:
            acc += p.numerator * (denom // p.denominator)
            cum.append(acc)
        self.cum = cum
        self.total = acc

    def draw(self, rng: random.Random):
        return self.atoms[bisect_right(self.cum, rng.randrange(self.total))]


def _summary(counts, values, reps):
    """Exact mean and sample standard error from terminal-state tallies."""
    mean = sum((c * values[s] for s, c in counts.items()), Fraction(0)) / reps
    if reps > 1:
        var = sum(
            (c * (values[s] - mean) ** 2 for s, c in counts.items()), Fraction(0)
        ) / (reps - 1)
    else:
        var = Fraction(0)
    return float(mean), math.sqrt(float(var) / reps)


def monte_carlo_duality(
    law: OffspringLaw,
    a: int,
    b: int,
    steps: int,
    reps: int,
    seed: int,
) -> MonteCarloResult:
    """Simulate both sides of E[H(X_n, |b|)] = E[H(|a|, Y_n)] with H the
    hypergeometric matrix on cardinalities.

    The chains run at the set level (the backward side draws offspring
    atoms and takes ancestor sets, independent of the precomputed kernel);
    only the cardinality of the terminal state enters the estimate.  Each
    replica seeds its own generator from (seed, replica), so results do not
    depend on execution order.
    """
    law.require_exchangeable()
    n = law.ground_size
    h = hypergeometric_matrix(n)
    sampler = _AtomSampler(law)
    j_b = _popcount(b)
    i_a = _popcount(a)

    fwd_counts: dict = {}
    bwd_counts: dict = {}
    for rep in range(reps):
        rng = random.Random(seed * 1_000_003 + 2 * rep)
        x = a
        for _ in range(steps):
            nu = sampler.draw(rng)
            nxt = 0
            m = x
            while m:
                low = m & -m
                nxt |= nu[low.bit_length() - 1]
                m ^= low
            x = nxt
        i = _popcount(x)
        fwd_counts[i] = fwd_counts.get(i, 0) + 1

        rng = random.Random(seed * 1_000_003 + 2 * rep + 1)
        y = b
        for _ in range(steps):
            nu = sampler.draw(rng)
            y = _ancestors(nu, y)
        j = _popcount(y)
        bwd_counts[j] = bwd_counts.get(j, 0) + 1

    fwd_vals = {i: h[i, j_b] for i in fwd_counts}
    bwd_vals = {j: h[i_a, j] for j in bwd_counts}
    f_mean, f_se = _summary(fwd_counts, fwd_vals, reps)
    b_mean, b_se = _summary(bwd_counts, bwd_vals, reps)
    return MonteCarloResult(
        steps=steps,
        reps=reps,
        seed=seed,
        forward_mean=f_mean,
        forward_stderr=f_se,
        backward_mean=b_mean,
        backward_stderr=b_se,
    )


def exact_coarse_duality_value(law: OffspringLaw, i: int, j: int, steps: int) -> Fraction:
    """The exact common value E[H(X_n, j)] = E[H(i, Y_n)] by matrix powers
    of the direct coarse forward chain."""
    p_coarse = coarse_forward_direct(law)
    h = hypergeometric_matrix(law.ground_size)
    return (p_coarse.power(steps) @ h)[i, j]
