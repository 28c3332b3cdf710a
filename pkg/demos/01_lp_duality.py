"""Exact LP duality for symmetric k-wise independent distributions.

Finds the smallest central window that supports a k-wise independent
distribution, prints the witness, and shows the polynomial that rules out
the next smaller window.  Both objects are exact rationals.
"""
import argparse

from kwisecover.lp import WeightWindow, delta_star, strong_duality
from kwisecover.poly import poly_eval


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=24)
    ap.add_argument("--k", type=int, default=3)
    args = ap.parse_args()
    n, k = args.n, args.k

    ds = delta_star(n, k)
    lo, hi = ds.window
    print(f"n={n} k={k}: smallest window |w - n/2| <= {ds.delta} (weights {lo}..{hi})")
    print("witness:", {w: str(p) for w, p in enumerate(ds.witness.probs) if p})
    print("moments t=1..k:", [str(m) for m in ds.witness.moments(k)])

    if ds.certificate is not None:
        inner = WeightWindow.two_sided(n, ds.delta - 1)
        vals = {w: str(poly_eval(ds.certificate, w)) for w in inner.members()}
        print("separating polynomial (Krawtchouk coefficients):", [str(a) for a in ds.certificate.coeffs])
        print("its values on the smaller window (all <= 0):", vals)

    r = n // 2 - 2
    primal, dual = strong_duality(n, k, r)
    print(f"min mass of the ball of radius {r}: primal {primal}, dual {dual}")


if __name__ == "__main__":
    main()
