"""The constant alpha* and how node placement changes it.

Minimises the balancing function h(beta, eps) for Chebyshev nodes and for
the equally spaced heuristic, then sweeps beta at the default eps.
"""
import numpy as np

from kwisecover.certify import h_function, optimize_alpha_star


def main():
    a, b, e = optimize_alpha_star()
    a4, b4, e4 = optimize_alpha_star(base=4.0)
    print(f"chebyshev:      alpha* = {a:.5f} at beta = {b:.5f}, eps = {e:.5f}")
    print(f"equally spaced: alpha* = {a4:.5f} at beta = {b4:.5f}, eps = {e4:.5f}")
    print(f"h(0.5204, 0.004) = {h_function(0.5204, 0.004):.5f}")
    for beta in np.linspace(0.3, 0.8, 11):
        print(f"  beta={beta:.2f}  h={h_function(beta, 0.004):.5f}")


if __name__ == "__main__":
    main()
