"""Lebesgue constants of extended Chebyshev and equally spaced nodes.

Prints measured values next to their closed-form bounds, and checks the
small cases against the sign-pattern oracle.
"""
import argparse

from kwisecover.oracle import lebesgue_lp_crosscheck
from kwisecover.seq import (
    chebyshev_lebesgue_bound,
    equally_spaced,
    equally_spaced_lebesgue_bound,
    extended_chebyshev,
    lebesgue_constant,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmax", type=int, default=12)
    args = ap.parse_args()
    print(f"{'k':>3} {'cheb':>8} {'bound':>8} {'equi':>10} {'bound':>10} {'oracle':>8}")
    for k in range(1, args.kmax + 1):
        c, e = extended_chebyshev(k), equally_spaced(k)
        lc, le = lebesgue_constant(c), lebesgue_constant(e)
        check = f"{lebesgue_lp_crosscheck(c):8.5f}" if k <= 8 else " " * 8
        print(f"{k:>3} {lc:8.5f} {chebyshev_lebesgue_bound(k):8.5f} {le:10.4f} "
              f"{equally_spaced_lebesgue_bound(k):10.2f} {check}")


if __name__ == "__main__":
    main()
