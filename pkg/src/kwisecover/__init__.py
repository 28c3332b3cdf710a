"""Covering radius of k-wise independent distributions via symmetric LPs.

Submodules: ``poly`` (Krawtchouk/Chebyshev polynomials), ``binom``
(binomial masses, exact and log-domain), ``seq`` (node sequences and
Lebesgue constants), ``lp`` (exact LP pair and thresholds), ``certify``
(LP-free certificates and constants), ``oracle`` (brute force on small
cubes) and ``cli``.
"""

__version__ = "0.1.0"
