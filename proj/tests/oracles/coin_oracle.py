"""Exact rational reference values for the coin-toss scenario and the grid
anchors. The constants frozen in the C++ tests come from this script.

    python3 tests/oracles/coin_oracle.py
"""
from fractions import Fraction as F
from math import comb

HALF, TENTH, ALPHA = F(1, 2), F(1, 10), F(1, 20)


def pmf(n, p, k):
    return comb(n, k) * p**k * (1 - p) ** (n - k)


def upper(n, p, k):
    return sum(pmf(n, p, i) for i in range(k, n + 1))


def lower(n, p, k):
    return sum(pmf(n, p, i) for i in range(0, k + 1))


def c_pvalue(k, convention, n2=13):
    lo, up = lower(n2, HALF, k), upper(n2, HALF, k)
    if convention == "doubled":
        return min(F(1), 2 * min(lo, up))
    if convention == "mintail":
        return min(lo, up)
    return lo


def main():
    n1, n2 = 17, 13
    print("upper_tail(17, 0.1, k), k = 17..5:")
    for k in range(17, 4, -1):
        print(f"  {k:2d} {float(upper(n1, TENTH, k)):.17g}")
    print(f"lower_tail(17, 0.5, 4) = {lower(n1, HALF, 4)} = {float(lower(n1, HALF, 4)):.17g}")
    print(f"lower_tail(13, 0.5, 2) = {lower(n2, HALF, 2)}")

    b_region = lower(n1, HALF, 4)
    stage2 = sum(pmf(n1, HALF, k) * (ALPHA - upper(n1, TENTH, k)) for k in range(5, n1 + 1))
    print(f"analytic stage2 = {float(stage2):.17g}")
    print(f"analytic total  = {float(b_region + stage2):.17g}")

    for convention in ("doubled", "lowertail", "mintail"):
        fwer = b_region + sum(
            pmf(n1, HALF, k1) * pmf(n2, HALF, k2)
            for k1 in range(5, n1 + 1)
            for k2 in range(n2 + 1)
            if c_pvalue(k2, convention) <= ALPHA - upper(n1, TENTH, k1)
        )
        print(f"exact_fwer[{convention}] = {float(fwer):.17g}")

    for m in (1, 10, 100, 1000):
        print(f"grid anchor m={m}: {1 - (1 - 0.05 / m) ** m:.17g}")


if __name__ == "__main__":
    main()
