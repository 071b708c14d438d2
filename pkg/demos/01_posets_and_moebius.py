"""Build finite posets, compute zeta and Moebius matrices, and check the
closed forms on subset and partition lattices."""

from moebius_dual import (
    RationalMatrix,
    build_poset,
    moebius_matrix,
    partition_lattice,
    partition_moebius_closed_form,
    product_poset,
    subset_lattice,
)


def main():
    print("=== Divisibility poset on {1..12} ===")
    divs = build_poset(range(1, 13), lambda a, b: b % a == 0)
    zp = moebius_matrix(divs)
    print("mu(1, n) recovers the number-theoretic Moebius function:")
    print("  ", {n: int(zp.mu_value(1, n)) for n in divs.elements})

    print("\n=== Subset lattice on 3 points ===")
    lat = subset_lattice(3)
    print("elements in canonical order:", [lat.label(m) for m in lat.poset.elements])
    print("mu(J, K) = (-1)^{|K|-|J|} on comparable pairs; recursion agrees:")
    for i, j in lat.poset.comparable_pairs():
        a, b = lat.poset.elements[i], lat.poset.elements[j]
        assert lat.pair.moebius[i, j] == lat.mu_closed_form(a, b)
    print("  checked on all", len(lat.poset.comparable_pairs()), "pairs")
    size = len(lat.poset)
    assert lat.pair.zeta @ lat.pair.moebius == RationalMatrix.identity(size)
    print("  Z @ Z^-1 == I, exactly, in rational arithmetic")

    print("\n=== Partition lattice on 4 points ===")
    pl = partition_lattice(4)
    bottom = pl.poset.elements[0]
    top = pl.poset.elements[-1]
    print(f"mu({bottom}, {top}) =", pl.pair.mu_value(bottom, top))
    print("closed form (factorial product with alternating sign) =",
          partition_moebius_closed_form(bottom, top))

    print("\n=== Product posets multiply Moebius functions ===")
    chain = build_poset(range(4), lambda a, b: a <= b)
    prod = product_poset(chain, lat.poset)
    zpp = moebius_matrix(prod)
    zc = moebius_matrix(chain)
    a, b = (0, 0b000), (1, 0b011)
    lhs = zpp.mu_value(a, b)
    rhs = zc.mu_value(0, 1) * lat.pair.mu_value(0b000, 0b011)
    print(f"mu_product({a}, {b}) = {lhs} = {rhs} = mu_chain * mu_subsets")
    assert lhs == rhs


if __name__ == "__main__":
    main()
