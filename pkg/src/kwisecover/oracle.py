"""Brute-force ground truth on small hypercubes.

Nothing here uses Krawtchouk polynomials or the LP: independence is checked
through the character sums ``E_mu (-1)^{<x,z>}`` of the lifted distribution,
covering radii by breadth-first search over the whole cube, and Lebesgue
constants by enumerating the sign patterns of the node values.

Cube points are encoded as integers, bit ``i`` holding coordinate ``i``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .poly import DomainError
from .seq import PointSeq

MAX_N = 20


class SizeError(ValueError):
    pass


@dataclass(frozen=True)
class CubeDistribution:
    n: int
    support: tuple  # ((point, Fraction), ...), points distinct

    def __post_init__(self):
        if self.n > MAX_N:
            raise SizeError(f"cube enumeration is capped at n={MAX_N}")
        pts = [x for x, _ in self.support]
        if len(set(pts)) != len(pts):
            raise ValueError("support points must be distinct")
        if any(p < 0 for _, p in self.support) or sum(p for _, p in self.support) != 1:
            raise ValueError("not a probability distribution")

    def points(self) -> list[int]:
        return [x for x, p in self.support if p]

    def translate(self, shift: int) -> "CubeDistribution":
        """``(sigma_shift mu)(y) = mu(y + shift)``."""
        return CubeDistribution(self.n, tuple((x ^ shift, p) for x, p in self.support))


def uniform(n: int) -> CubeDistribution:
    p = Fraction(1, 2**n)
    return CubeDistribution(n, tuple((x, p) for x in range(2**n)))


def point_mass(n: int, x: int) -> CubeDistribution:
    return CubeDistribution(n, ((x, Fraction(1)),))


def _popcount(arr: np.ndarray) -> np.ndarray:
    out = np.zeros(arr.shape, dtype=np.int64)
    a = arr.copy()
    while a.any():
        out += a & 1
        a >>= 1
    return out


def lift(wd) -> CubeDistribution:
    """Spread each weight class uniformly: ``mu(x) = pi(|x|) / C(n, |x|)``."""
    n = wd.n
    if n > MAX_N:
        raise SizeError(f"cube enumeration is capped at n={MAX_N}")
    pts = np.arange(2**n, dtype=np.int64)
    weights = _popcount(pts)
    share = [p / math.comb(n, w) if p else None for w, p in enumerate(wd.probs)]
    support = tuple((int(x), share[w]) for x, w in zip(pts, weights) if share[w] is not None)
    return CubeDistribution(n, support)


def _walsh_hadamard(v: np.ndarray) -> np.ndarray:
    v = v.copy()
    h = 1
    size = len(v)
    while h < size:
        v = v.reshape(-1, 2, h)
        a = v[:, 0, :].copy()
        b = v[:, 1, :]
        v = np.stack([a + b, a - b], axis=1).reshape(size)
        h *= 2
    return v


def character_sums(mu: CubeDistribution) -> tuple[np.ndarray, int]:
    """Scaled ``E_mu chi_z`` for every ``z``: returns ``(F, D)`` with ``E_mu chi_z = F[z] / D``."""
    denom = 1
    for _, p in mu.support:
        denom = denom * p.denominator // math.gcd(denom, p.denominator)
    big = denom >= 2**62
    vec = np.zeros(2**mu.n, dtype=object if big else np.int64)
    for x, p in mu.support:
        vec[x] = int(p * denom)
    return _walsh_hadamard(vec), denom


def kwise_check(mu: CubeDistribution, k: int) -> tuple[bool, Optional[int]]:
    """Check ``E_mu chi_z = 0`` for all ``1 <= |z| <= k``; returns ``(ok, first_bad_z)``."""
    sums, _ = character_sums(mu)
    zs = np.arange(2**mu.n, dtype=np.int64)
    wt = _popcount(zs)
    mask = (wt >= 1) & (wt <= k)
    bad = np.flatnonzero(mask & (sums != 0))
    if len(bad):
        return False, int(bad[0])
    return True, None


def covering_radius(support: Iterable[int], n: int) -> int:
    """``max_x min_{c in support} dist(x, c)`` by multi-source BFS over the cube."""
    if n > MAX_N:
        raise SizeError(f"cube enumeration is capped at n={MAX_N}")
    src = np.fromiter(support, dtype=np.int64)
    if src.size == 0:
        raise DomainError("support must be non-empty")
    size = 2**n
    seen = np.zeros(size, dtype=bool)
    seen[src] = True
    frontier = seen.copy()
    idx = np.arange(size, dtype=np.int64)
    radius = 0
    while not seen.all():
        nxt = np.zeros(size, dtype=bool)
        for i in range(n):
            nxt |= frontier[idx ^ (1 << i)]
        nxt &= ~seen
        seen |= nxt
        frontier = nxt
        radius += 1
    return radius


def distance_from_origin(support: Iterable[int]) -> int:
    return min(bin(x).count("1") for x in support)


def lebesgue_lp_crosscheck(seq: PointSeq) -> float:
    """Lebesgue constant by enumerating node sign patterns (up to 9 points).

    The extremal polynomial with ``|p(x_i)| <= 1`` at a fixed point has
    ``p(x_i) = +-1``, so ``Lambda = max_s max_{[-1,1]} |p_s|`` over the
    ``2^{k+1}`` interpolants ``p_s``; each inner maximum is taken over the
    real critical points of ``p_s`` and the endpoints.
    """
    if len(seq) > 9:
        raise SizeError("sign-pattern enumeration is limited to 9 points")
    x = seq.normalized()
    m = len(x)
    vander = np.vander(x, m, increasing=True)
    best = 0.0
    # p and -p have the same maximum, so fix the first sign
    for tail in itertools.product((1.0, -1.0), repeat=m - 1):
        signs = np.array((1.0,) + tail)
        coef = np.linalg.solve(vander, signs)
        poly = np.polynomial.Polynomial(coef)
        crit = poly.deriv().roots() if m > 2 else np.array([])
        crit = crit[np.abs(crit.imag) < 1e-12].real if crit.size else crit
        crit = crit[(crit >= -1.0) & (crit <= 1.0)] if crit.size else crit
        pts = np.concatenate([[-1.0, 1.0], np.asarray(crit, dtype=float)])
        best = max(best, float(np.abs(poly(pts)).max()))
    return best
