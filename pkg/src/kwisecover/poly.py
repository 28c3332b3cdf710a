"""Univariate polynomials in the monomial, Krawtchouk and Chebyshev bases.

Exact arithmetic is done with :class:`fractions.Fraction`; the Chebyshev
family is evaluated in floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

Scalar = Union[int, float, Fraction]

MONOMIAL = "monomial"
KRAWTCHOUK = "krawtchouk"
CHEBYSHEV = "chebyshev"


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


class UnsupportedBasisError(ValueError):
    pass


def krawtchouk_eval(n: int, t: int, w: int) -> int:
    """Value of the degree-``t`` Krawtchouk polynomial ``K_t^{(n)}`` at ``w``.

    Computed from the alternating binomial sum, so the result is an exact
    integer.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if not 0 <= t <= n:
        raise DomainError(f"order t={t} outside [0:{n}]")
    if not 0 <= w <= n:
        raise DomainError(f"point w={w} outside [0:{n}]")
    return _krawtchouk(n, t, w)


@lru_cache(maxsize=65536)
def _krawtchouk(n: int, t: int, w: int) -> int:
    total = 0
    for i in range(t + 1):
        term = math.comb(w, i) * math.comb(n - w, t - i)
        total += -term if i & 1 else term
    return total


def krawtchouk_table(n: int, k: int) -> list[list[int]]:
    """Rows ``t = 0..k`` of ``K_t^{(n)}(w)`` for ``w = 0..n``."""
    return [[_krawtchouk(n, t, w) for w in range(n + 1)] for t in range(k + 1)]


def krawtchouk_reciprocity_check(n: int, t: int, w: int) -> bool:
    """Check ``C(n,t) K_w(t) == C(n,w) K_t(w)`` exactly."""
    lhs = math.comb(n, t) * krawtchouk_eval(n, w, t)
    rhs = math.comb(n, w) * krawtchouk_eval(n, t, w)
    return lhs == rhs


def chebyshev_eval(k: int, x: float) -> float:
    """Chebyshev polynomial of the first kind ``T_k(x)``.

    Uses ``cos(k arccos x)`` on ``[-1, 1]`` and the closed form
    ``((x + sqrt(x^2-1))^k + (x - sqrt(x^2-1))^k) / 2`` outside.
    """
    if k < 0:
        raise DomainError("k must be non-negative")
    x = float(x)
    if abs(x) <= 1.0:
        return math.cos(k * math.acos(x))
    a = abs(x)
    r = math.sqrt(a * a - 1.0)
    # (a - r) = 1/(a + r) avoids cancellation
    big = a + r
    val = 0.5 * (big**k + big ** (-k))
    return -val if (x < 0 and k % 2) else val


def chebyshev_recurrence(k: int, x: float) -> float:
    """``T_k(x)`` via ``T_{j+1} = 2x T_j - T_{j-1}``; used as a cross-check."""
    t0, t1 = 1.0, float(x)
    if k == 0:
        return t0
    for _ in range(k - 1):
        t0, t1 = t1, 2.0 * x * t1 - t0
    return t1


@dataclass(frozen=True)
class SymbolicPoly:
    """Polynomial stored as a coefficient list in a tagged basis.

    ``coeffs[j]`` multiplies ``v**j`` (monomial), ``K_j^{(n)}(v)``
    (Krawtchouk) or ``T_j(v)`` (Chebyshev).
    """

    coeffs: tuple
    basis: str = MONOMIAL
    n: int | None = None

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("coeffs must be non-empty")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.basis == KRAWTCHOUK:
            if self.n is None or self.n < 1:
                raise ValueError("Krawtchouk basis needs a positive n")
            if len(self.coeffs) > self.n + 1:
                raise ValueError("Krawtchouk order exceeds n")
        elif self.basis not in (MONOMIAL, CHEBYSHEV):
            raise ValueError(f"unknown basis {self.basis!r}")

    @property
    def degree(self) -> int:
        for j in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[j] != 0:
                return j
        return 0

    def __call__(self, x):
        return poly_eval(self, x)


def monomial(coeffs: Sequence[Scalar]) -> SymbolicPoly:
    return SymbolicPoly(tuple(coeffs), MONOMIAL)


def krawtchouk_poly(n: int, coeffs: Sequence[Scalar]) -> SymbolicPoly:
    return SymbolicPoly(tuple(coeffs), KRAWTCHOUK, n)


def poly_eval(p: SymbolicPoly, x):
    """Evaluate ``p`` at ``x`` in its own basis.

    Krawtchouk-basis polynomials are only defined here on the integers
    ``[0:n]``; Chebyshev-basis evaluation is floating point.
    """
    if p.basis == MONOMIAL:
        acc = 0
        for c in reversed(p.coeffs):
            acc = acc * x + c
        return acc
    if p.basis == KRAWTCHOUK:
        if isinstance(x, float) and x.is_integer():
            x = int(x)
        if isinstance(x, Fraction) and x.denominator == 1:
            x = x.numerator
        if not isinstance(x, int) or not 0 <= x <= p.n:
            raise DomainError(f"Krawtchouk evaluation needs an integer in [0:{p.n}], got {x!r}")
        return sum(c * _krawtchouk(p.n, t, x) for t, c in enumerate(p.coeffs) if c)
    return sum(float(c) * chebyshev_eval(j, x) for j, c in enumerate(p.coeffs))


def poly_derivative(p: SymbolicPoly) -> SymbolicPoly:
    if p.basis != MONOMIAL:
        raise UnsupportedBasisError("derivative is only available in the monomial basis")
    if len(p.coeffs) == 1:
        return SymbolicPoly((p.coeffs[0] * 0,), MONOMIAL)
    return SymbolicPoly(tuple(j * c for j, c in enumerate(p.coeffs) if j), MONOMIAL)


def lagrange_interpolate(xs: Sequence[Scalar], ys: Sequence[Scalar]) -> SymbolicPoly:
    """Exact monomial-basis interpolant through ``(xs[i], ys[i])``."""
    if len(xs) != len(ys) or not xs:
        raise ValueError("need equally many, and at least one, nodes and values")
    if len(set(xs)) != len(xs):
        raise DomainError("interpolation nodes must be distinct")
    m = len(xs)
    xs = [Fraction(x) for x in xs]
    result = [Fraction(0)] * m
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            # multiply basis by (v - xj)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nxt[d + 1] += c
                nxt[d] -= c * xj
            basis = nxt
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for d, c in enumerate(basis):
            result[d] += c * scale
    return SymbolicPoly(tuple(result), MONOMIAL)


def to_monomial(p: SymbolicPoly) -> SymbolicPoly:
    """Convert a Krawtchouk-basis polynomial by interpolating its values on ``[0:d]``."""
    if p.basis == MONOMIAL:
        return p
    if p.basis != KRAWTCHOUK:
        raise UnsupportedBasisError("only Krawtchouk -> monomial conversion is provided")
    d = len(p.coeffs) - 1
    xs = list(range(d + 1))
    return lagrange_interpolate(xs, [poly_eval(p, w) for w in xs])


def binom_expectation(p: SymbolicPoly, n: int) -> Fraction:
    """``E_{B_n} p`` for the symmetric binomial distribution on ``[0:n]``."""
    if p.basis == KRAWTCHOUK:
        if p.n != n:
            raise DomainError(f"polynomial is in the Krawtchouk({p.n}) basis, expected n={n}")
        return Fraction(p.coeffs[0])
    if p.basis != MONOMIAL:
        raise UnsupportedBasisError("binomial expectation of Chebyshev-basis polynomials is not exact")
    total = sum(math.comb(n, w) * Fraction(poly_eval(p, w)) for w in range(n + 1))
    return total / 2**n
