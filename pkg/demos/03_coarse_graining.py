"""Coarse-grain zeta/Moebius matrices and Markov kernels by symmetry classes,
and restore stochasticity of the coarse dual with the class-size transform."""

from fractions import Fraction

from moebius_dual import (
    DualityVariant,
    EquivalenceRelation,
    Kernel,
    RationalMatrix,
    cardinality_relation,
    check_compatibility,
    coarse_partition_matrices,
    coarse_set_matrices,
    subset_lattice,
    coarse_duality_pipeline,
)

F = Fraction


def main():
    print("=== Coarse subset matrices by cardinality (N = 4) ===")
    cm = coarse_set_matrices(4)
    print("coarse zeta rows (binomial closed form):")
    for r in range(5):
        print("  ", [str(x) for x in cm.zeta.row(r)])
    print("coarse Moebius inverts it:",
          cm.zeta @ cm.moebius == RationalMatrix.identity(5))
    print("transpose pitfall: coarse-of-transpose != transpose-of-coarse:",
          cm.zeta_transpose != cm.zeta.T)

    print("\n=== Coarse partition matrices by block-size skeleton (n = 4) ===")
    skels, z, mo = coarse_partition_matrices(4)
    print("skeletons:", [str(s) for s in skels])
    print("coarse zeta:")
    for r in range(len(skels)):
        print("  ", [str(x) for x in z.row(r)])

    print("\n=== Compatibility is a real constraint ===")
    lat = subset_lattice(2)
    rel = cardinality_relation(lat)
    lopsided = RationalMatrix.from_function(
        4, 4,
        lambda i, j: F(1 if (lat.poset.elements[i], lat.poset.elements[j]) == (1, 1) else 0),
    )
    res = check_compatibility(lopsided, rel)
    print("a kernel that singles out one singleton is incompatible; witness:",
          res.witness)

    print("\n=== Full pipeline: dualize, coarsen, restore stochasticity ===")
    p = Kernel.of(RationalMatrix.from_function(4, 4, lambda i, j: F(1, 4)))
    res = coarse_duality_pipeline(p, lat.pair, DualityVariant.ZETA_TRANSPOSE, rel)
    print("class sizes h_hat =", tuple(str(x) for x in res.h_hat))
    print("coarse dual before the transform (rows need not sum to 1):")
    for r in range(3):
        print("  ", [str(x) for x in res.q_coarse.row(r)])
    print("after conjugating by diag(h_hat) (stochastic again):")
    for r in range(3):
        print("  ", [str(x) for x in res.q_coarse_hh.matrix.row(r)])
    lhs = res.h_coarse_hat @ res.q_coarse_hh.matrix.T
    rhs = res.p_coarse.matrix @ res.h_coarse_hat
    print("coarse duality H Q' = P H holds exactly:", lhs == rhs)


if __name__ == "__main__":
    main()
