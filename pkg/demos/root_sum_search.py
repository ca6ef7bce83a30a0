"""Find the primes where extra vanishing sums of roots of unity appear.

A sum of at most k d-th roots of unity has cyclotomic norm bounded by
k^phi(d), so only finitely many primes can support identities beyond
the full-orbit sum 1 + z + ... + z^(d-1) = 0.  This script runs the
search for d = 5, k = 5, prints the witnesses, and then exhibits the
identities inside the exceptional prime fields.
"""

from surfcensus.cyclotomic import (CycInt, cyc_norm, euler_phi,
                                   exceptional_primes,
                                   has_only_trivial_vanishing_sums,
                                   norm_witnesses, zero_sums_mod_p)
from surfcensus.ffield import primes_below


def main():
    d, k = 5, 5
    bound = k ** euler_phi(d)
    exc = sorted(exceptional_primes(d, k))
    print(f"sums of at most {k} {d}-th roots of unity, norm bound {bound}")
    print(f"exceptional primes: {exc}\n")

    for q, entries in norm_witnesses(d, k).items():
        for exps, norm in entries:
            terms = " + ".join(f"z^{e}" if e else "1" for e in exps)
            print(f"  p={q:<3d} divides N({terms}) = {norm}")

    print("\nidentities inside the exceptional fields (multisets of roots):")
    for q in exc:
        sums = zero_sums_mod_p(d, q, k)
        shortest = min(sums, key=len)
        print(f"  F_{q}: {len(sums)} vanishing multisets, e.g. "
              + " + ".join(map(str, shortest)) + f" = 0 (mod {q})")

    clean = [p for p in primes_below(bound + 1)
             if p % d == 1 and p not in exc]
    assert all(has_only_trivial_vanishing_sums(p, d, k) for p in clean)
    print(f"\nall {len(clean)} other primes = 1 (mod {d}) up to {bound} "
          "admit only the full-orbit sum")

    print("\nseptic variant (d = 7): the witness behind p = 29 is")
    alpha = CycInt.from_exponents(7, (0, 0, 1, 2))
    print(f"  N(2 + z + z^2) = {cyc_norm(alpha)}")


if __name__ == "__main__":
    main()
