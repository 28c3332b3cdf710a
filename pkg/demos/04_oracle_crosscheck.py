"""Brute-force confirmation of an LP witness on the full hypercube.

Lifts a symmetric witness to {0,1}^n, checks every character sum of weight
at most k, and measures the covering radius by breadth-first search.
"""
import argparse

from kwisecover.lp import WeightWindow, witness_distribution
from kwisecover.oracle import covering_radius, distance_from_origin, kwise_check, lift


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=14)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--radius", type=int, default=4)
    args = ap.parse_args()
    wd = witness_distribution(args.n, args.k, WeightWindow.one_sided(args.n, args.radius))
    mu = lift(wd)
    ok, bad = kwise_check(mu, args.k)
    pts = mu.points()
    print(f"weights used: {wd.support}, cube support size {len(pts)}")
    print(f"{args.k}-wise independent: {ok}" + ("" if ok else f" (fails at z={bad:b})"))
    print(f"independent up to degree {wd.independence_degree()}")
    print(f"distance from 0: {distance_from_origin(pts)}, covering radius: {covering_radius(pts, args.n)}")


if __name__ == "__main__":
    main()
