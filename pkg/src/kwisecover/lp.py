"""Symmetric LP pair linking low-degree polynomials and k-wise independence.

For a set ``L`` of weights in ``[0:n]`` the two sides are

* dual:   a polynomial ``p = sum_{t<=k} a_t K_t`` with ``E_{B_n} p = a_0 > 0``
  and ``p(w) <= 0`` for every ``w`` in ``L``;
* primal: a distribution ``pi`` on ``L`` with ``sum_w pi(w) K_t(w) = 0`` for
  ``t = 1..k``, i.e. a symmetric k-wise independent distribution on the cube
  whose weights all lie in ``L``.

Exactly one of them exists.  Both are solved exactly, independently of each
other, and each infeasible side returns the other side as its certificate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .poly import KRAWTCHOUK, DomainError, SymbolicPoly, krawtchouk_table
from .simplex import INFEASIBLE, OPTIMAL, LPResult, linprog_exact

TWO_SIDED = "two_sided"
ONE_SIDED = "one_sided"

FEASIBLE = "feasible"
OPTIMUM = "optimum"

ZERO = "zero"
UNBOUNDED = "unbounded"


class InfeasibleError(Exception):
    """No distribution exists; ``certificate`` is the separating polynomial."""

    def __init__(self, message: str, certificate: Optional[SymbolicPoly] = None):
        super().__init__(message)
        self.certificate = certificate


@dataclass(frozen=True)
class WeightWindow:
    """Set of weights: ``|w - n/2| <= delta`` (two-sided) or ``w >= R`` (one-sided).

    Membership is decided exactly; the window is closed.
    """

    n: int
    kind: str
    bound: Fraction

    def __post_init__(self):
        if self.kind not in (TWO_SIDED, ONE_SIDED):
            raise ValueError(f"unknown window kind {self.kind!r}")
        object.__setattr__(self, "bound", Fraction(self.bound))

    @classmethod
    def two_sided(cls, n: int, delta) -> "WeightWindow":
        return cls(n, TWO_SIDED, Fraction(delta))

    @classmethod
    def one_sided(cls, n: int, radius) -> "WeightWindow":
        return cls(n, ONE_SIDED, Fraction(radius))

    def members(self) -> list[int]:
        n = self.n
        if self.kind == TWO_SIDED:
            half = Fraction(n, 2)
            return [w for w in range(n + 1) if abs(w - half) <= self.bound]
        return [w for w in range(n + 1) if w >= self.bound]

    def __contains__(self, w: int) -> bool:
        if self.kind == TWO_SIDED:
            return abs(w - Fraction(self.n, 2)) <= self.bound
        return w >= self.bound


@dataclass(frozen=True)
class WeightDistribution:
    """Distribution over Hamming weights, i.e. a symmetric distribution on the cube."""

    n: int
    probs: tuple

    def __post_init__(self):
        if len(self.probs) != self.n + 1:
            raise ValueError("probs must have n+1 entries")
        object.__setattr__(self, "probs", tuple(Fraction(p) for p in self.probs))

    @property
    def support(self) -> list[int]:
        return [w for w, p in enumerate(self.probs) if p]

    def is_probability(self) -> bool:
        return all(p >= 0 for p in self.probs) and sum(self.probs) == 1

    def moments(self, k: int) -> list[Fraction]:
        """``sum_w pi(w) K_t(w)`` for ``t = 1..k``."""
        table = krawtchouk_table(self.n, k)
        return [sum(p * table[t][w] for w, p in enumerate(self.probs) if p) for t in range(1, k + 1)]

    def is_kwise(self, k: int) -> bool:
        return all(m == 0 for m in self.moments(k))

    def independence_degree(self) -> int:
        """Largest ``k`` for which all moments vanish."""
        table = krawtchouk_table(self.n, self.n)
        k = 0
        for t in range(1, self.n + 1):
            if sum(p * table[t][w] for w, p in enumerate(self.probs) if p) != 0:
                break
            k = t
        return k


@dataclass
class LPOutcome:
    status: str
    objective: Optional[Fraction] = None
    primal_solution: Optional[list] = None
    dual_solution: Optional[list] = None
    poly: Optional[SymbolicPoly] = None
    distribution: Optional[WeightDistribution] = None

    def to_dict(self) -> dict:
        def fr(v):
            return None if v is None else str(v)

        out = {"status": self.status, "objective": fr(self.objective)}
        if self.primal_solution is not None:
            out["primal_solution"] = [str(v) for v in self.primal_solution]
        if self.dual_solution is not None:
            out["dual_solution"] = [str(v) for v in self.dual_solution]
        if self.poly is not None:
            out["polynomial_krawtchouk_coeffs"] = [str(v) for v in self.poly.coeffs]
        if self.distribution is not None:
            out["distribution"] = [str(v) for v in self.distribution.probs]
        return out

    def report(self) -> str:
        """Plain-text rendering: one ``key: value`` line per field."""
        lines = []
        for key, val in self.to_dict().items():
            if isinstance(val, list):
                val = " ".join(val)
            lines.append(f"{key}: {val}")
        return "\n".join(lines)


def _check_nk(n: int, k: int) -> None:
    if n < 1 or not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")


def _krawtchouk_coeffs(n: int, vec) -> SymbolicPoly:
    return SymbolicPoly(tuple(vec), KRAWTCHOUK, n)


def dual_polynomial_feasible(n: int, k: int, window: WeightWindow) -> LPOutcome:
    """Look for ``p = 1 + sum_{t=1..k} a_t K_t`` with ``p <= 0`` on the window.

    ``a_0 = 1`` is a normalisation: ``E_{B_n} p = a_0`` and any positive
    multiple of a solution is again one.
    """
    _check_nk(n, k)
    members = window.members()
    if not members:
        return LPOutcome(FEASIBLE, poly=_krawtchouk_coeffs(n, [Fraction(1)] + [Fraction(0)] * k))
    table = krawtchouk_table(n, k)
    A_ub = [[table[t][w] for t in range(1, k + 1)] for w in members]
    b_ub = [-table[0][w] for w in members]
    res = linprog_exact([0] * k, A_ub, b_ub, free=range(k))
    if res.status == OPTIMAL:
        coeffs = [Fraction(1)] + list(res.x)
        return LPOutcome(FEASIBLE, primal_solution=coeffs, poly=_krawtchouk_coeffs(n, coeffs))
    # Farkas multipliers on the window rows are a (scaled, negated) distribution
    y = [-v for v in res.farkas_ub]
    total = sum(y)
    probs = [Fraction(0)] * (n + 1)
    for w, v in zip(members, y):
        probs[w] = v / total
    return LPOutcome(INFEASIBLE, dual_solution=y, distribution=WeightDistribution(n, probs))


def _witness_lp(n: int, k: int, members: list[int]) -> LPResult:
    table = krawtchouk_table(n, k)
    A_eq = [[table[t][w] for w in members] for t in range(k + 1)]
    b_eq = [1] + [0] * k
    return linprog_exact([0] * len(members), A_eq=A_eq, b_eq=b_eq)


def witness_distribution(n: int, k: int, window: WeightWindow) -> WeightDistribution:
    """Symmetric k-wise independent distribution supported on the window.

    Raises :class:`InfeasibleError` with the separating polynomial (in the
    Krawtchouk basis, ``a_0 = 1``) when there is none.
    """
    _check_nk(n, k)
    members = window.members()
    if not members:
        raise InfeasibleError("empty window", _krawtchouk_coeffs(n, [Fraction(1)] + [Fraction(0)] * k))
    res = _witness_lp(n, k, members)
    if res.status == OPTIMAL:
        probs = [Fraction(0)] * (n + 1)
        for w, v in zip(members, res.x):
            probs[w] = v
        return WeightDistribution(n, probs)
    y = res.farkas_eq
    cert = _krawtchouk_coeffs(n, [v / y[0] for v in y])
    raise InfeasibleError(f"no {k}-wise independent distribution on this window", cert)


def en_value(n: int, k: int, window: WeightWindow) -> str:
    """``ZERO`` if every admissible ``f`` has ``E_{B_n} f <= 0``, else ``UNBOUNDED``."""
    out = dual_polynomial_feasible(n, k, window)
    return ZERO if out.status == INFEASIBLE else UNBOUNDED


# ---------------------------------------------------------- duality pair


def min_ball_mass(n: int, k: int, r: int) -> LPOutcome:
    """``min pi(w <= r)`` over symmetric k-wise independent ``pi`` (primal)."""
    _check_nk(n, k)
    table = krawtchouk_table(n, k)
    c = [1 if w <= r else 0 for w in range(n + 1)]
    res = linprog_exact(c, A_eq=table, b_eq=[1] + [0] * k)
    if res.status != OPTIMAL:  # the binomial itself is feasible
        raise RuntimeError(f"unexpected LP status {res.status}")
    return LPOutcome(
        OPTIMUM,
        objective=res.objective,
        primal_solution=res.x,
        dual_solution=res.y_eq,
        distribution=WeightDistribution(n, res.x),
    )


def max_dual_ball(n: int, k: int, r: int) -> LPOutcome:
    """``max a_0`` over ``p = sum a_t K_t`` with ``p(w) <= [w <= r]`` (dual), solved on its own."""
    _check_nk(n, k)
    table = krawtchouk_table(n, k)
    A_ub = [[table[t][w] for t in range(k + 1)] for w in range(n + 1)]
    b_ub = [1 if w <= r else 0 for w in range(n + 1)]
    c = [-1] + [0] * k
    res = linprog_exact(c, A_ub, b_ub, free=range(k + 1))
    if res.status != OPTIMAL:
        raise RuntimeError(f"unexpected LP status {res.status}")
    return LPOutcome(
        OPTIMUM,
        objective=-res.objective,
        primal_solution=res.x,
        dual_solution=[-v for v in res.y_ub],
        poly=_krawtchouk_coeffs(n, res.x),
    )


def strong_duality(n: int, k: int, r: int) -> tuple[Fraction, Fraction]:
    """Primal minimum and dual maximum of the ball-mass LP pair."""
    return min_ball_mass(n, k, r).objective, max_dual_ball(n, k, r).objective


# ------------------------------------------------------------ thresholds


@dataclass
class DeltaStar:
    """Smallest closed central window supporting a k-wise independent distribution.

    ``delta`` is a breakpoint ``|w - n/2|``; ``E_n(k, D) = 0`` exactly for
    ``D >= delta``.  When ``delta == 0`` (``n`` even and the single weight
    ``n/2`` suffices) the minimum over ``D > 0`` is not attained and
    ``attained`` is ``False``.
    """

    n: int
    k: int
    delta: Fraction
    witness: WeightDistribution
    certificate: Optional[SymbolicPoly] = None  # for the next smaller window
    attained: bool = True

    @property
    def window(self) -> tuple[int, int]:
        half = Fraction(self.n, 2)
        return int(half - self.delta), int(half + self.delta)

    @property
    def half_width(self) -> int:
        """``ceil(delta)``, the integer form of the threshold."""
        return math.ceil(self.delta)


def window_breakpoints(n: int) -> list[Fraction]:
    """Distinct values of ``|w - n/2|`` in increasing order."""
    half = Fraction(n, 2)
    return sorted({abs(w - half) for w in range(n + 1)})


def delta_star(n: int, k: int) -> DeltaStar:
    """Exact ``Delta*_n(k)``: scan the central windows from the inside out."""
    if not 1 <= k <= n - 1:
        raise DomainError(f"need 1 <= k <= n-1, got n={n}, k={k}")
    cert = None
    for d in window_breakpoints(n):
        try:
            wd = witness_distribution(n, k, WeightWindow.two_sided(n, d))
        except InfeasibleError as exc:
            cert = exc.certificate
            continue
        return DeltaStar(n, k, d, wd, cert, attained=d > 0)
    raise RuntimeError("the full window always supports the binomial distribution")


def max_one_sided_radius(n: int, k: int) -> tuple[int, WeightDistribution]:
    """Largest integer ``R`` with a k-wise independent distribution on ``w >= R``.

    By the duality this is the largest covering radius (seen from the origin)
    of any symmetric k-wise independent distribution.
    """
    _check_nk(n, k)
    best = None
    for R in range(n + 1):
        try:
            best = (R, witness_distribution(n, k, WeightWindow.one_sided(n, R)))
        except InfeasibleError:
            break
    return best
