"""Symmetric binomial distribution ``B_n(w) = C(n, w) / 2**n``.

Two representations are offered: exact rationals (small ``n``) and natural
logarithms of the pmf (any ``n``, including ``n`` far beyond the float
range of ``2**n``).  The log form never goes through ``lgamma(n)`` directly;
it works with the deviation from the centre, so the absolute error of
``log B_n(w)`` stays near 1e-13 even for ``n ~ 1e20``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .poly import DomainError

EXACT = "exact"
LOGFLOAT = "logfloat"

#: default switch from exact rationals to log-floats
EXACT_MAX_N = 5000

_LOG_2PI = math.log(2.0 * math.pi)
_SMALL_SIDE = 20  # below this distance from 0 or n use exact big-integer binomials


class WindowError(ValueError):
    """Point lies outside the range where the normal-approximation bounds are stated."""


@dataclass(frozen=True)
class BinomialModel:
    n: int
    mode: str = ""

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be positive")
        if not self.mode:
            object.__setattr__(self, "mode", EXACT if self.n <= EXACT_MAX_N else LOGFLOAT)
        if self.mode not in (EXACT, LOGFLOAT):
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def exact(self) -> bool:
        return self.mode == EXACT


def _stirling_corr(m: float) -> float:
    # log m! - (m log m - m + log(2 pi m)/2), asymptotic series
    m2 = m * m
    return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * m2)) / m2) / m2) / m


def _g(y: float) -> float:
    """``(1+y) log(1+y) + (1-y) log(1-y)``, accurate for tiny ``y``."""
    y = abs(y)
    if y < 0.05:
        y2 = y * y
        term = y2
        total = 0.0
        m = 1
        while True:
            add = term / (m * (2 * m - 1))
            total += add
            if add <= 1e-18 * total:
                return total
            m += 1
            term *= y2
    return (1.0 + y) * math.log1p(y) + (1.0 - y) * math.log1p(-y)


def log_binom_pmf(n: int, w: int) -> float:
    """Natural log of ``B_n(w)``; ``-inf`` outside ``[0:n]``."""
    if w < 0 or w > n:
        return -math.inf
    small = min(w, n - w)
    if small < _SMALL_SIDE:
        return math.log(math.comb(n, small)) - n * math.log(2.0)
    y = (2 * w - n) / n
    if abs(y) > 0.5:
        # entropy form near the edges, where 1 - |y| loses precision
        entropy = small * math.log(n / small) + (n - small) * math.log1p(small / (n - small))
        main = entropy - n * math.log(2.0)
    else:
        main = -0.5 * n * _g(y)
    return (
        main
        + 0.5 * (math.log(n) - math.log(w) - math.log(n - w) - _LOG_2PI)
        + _stirling_corr(n)
        - _stirling_corr(w)
        - _stirling_corr(n - w)
    )


def log_binom_pmf_array(n: int, ws) -> np.ndarray:
    """Vectorised :func:`log_binom_pmf` for ``n`` below ``2**53``."""
    ws = np.asarray(ws, dtype=np.int64)
    out = np.empty(ws.shape, dtype=float)
    flat = ws.ravel()
    res = out.ravel()
    small = np.minimum(flat, n - flat) < _SMALL_SIDE
    for i in np.flatnonzero(small):
        res[i] = log_binom_pmf(n, int(flat[i]))
    big = ~small
    if big.any():
        w = flat[big].astype(float)
        nf = float(n)
        y = np.abs((2.0 * w - nf) / nf)
        g = (1.0 + y) * np.log1p(y) + (1.0 - y) * np.log1p(-y)
        tiny = y < 0.05
        if tiny.any():
            g[tiny] = [_g(v) for v in y[tiny]]
        m = n - w

        def corr(x):
            x2 = x * x
            return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * x2)) / x2) / x2) / x

        res[big] = (
            -0.5 * nf * g
            + 0.5 * (math.log(nf) - np.log(w) - np.log(m) - _LOG_2PI)
            + _stirling_corr(nf)
            - corr(w)
            - corr(m)
        )
    return out


def binom_pmf(model: BinomialModel, w: int):
    """Exact ``Fraction`` in exact mode, ``log B_n(w)`` in log mode."""
    if not 0 <= w <= model.n:
        raise DomainError(f"w={w} outside [0:{model.n}]")
    if model.exact:
        return Fraction(math.comb(model.n, w), 2**model.n)
    return log_binom_pmf(model.n, w)


def exact_pmf_vector(n: int) -> list[Fraction]:
    denom = 2**n
    return [Fraction(math.comb(n, w), denom) for w in range(n + 1)]


def upper_tail(model: BinomialModel, w0: int, weight_fn: Optional[Callable] = None):
    """``sum_{w > w0} B_n(w) * weight_fn(w)`` (weight defaults to 1).

    Exact mode returns a ``Fraction``.  Log mode returns the natural log of
    the sum (``-inf`` for an empty sum); ``weight_fn`` is then called with
    integer ``w`` and must return a non-negative float.
    """
    n = model.n
    if w0 > n:
        raise DomainError(f"w0={w0} exceeds n={n}")
    start = max(w0 + 1, 0)
    if start > n:
        return Fraction(0) if model.exact else -math.inf
    if model.exact:
        c = math.comb(n, start)
        total = Fraction(0)
        for w in range(start, n + 1):
            if weight_fn is None:
                total += c
            else:
                v = weight_fn(w)
                if v < 0:
                    raise DomainError(f"negative weight {v} at w={w}")
                total += c * Fraction(v)
            c = c * (n - w) // (w + 1)
        return total / 2**n
    logs = []
    for w in range(start, n + 1):
        lw = log_binom_pmf(n, w)
        if weight_fn is not None:
            v = weight_fn(w)
            if v < 0:
                raise DomainError(f"negative weight {v} at w={w}")
            if v == 0:
                continue
            lw += math.log(v)
        logs.append(lw)
    if not logs:
        return -math.inf
    arr = np.array(logs)
    top = arr.max()
    return float(top + math.log(np.exp(arr - top).sum()))


def dml_window(n: int) -> float:
    """Half-width ``n^{2/3} / sqrt(log n)`` of the normal-approximation window."""
    if n < 2:
        return 0.0
    return n ** (2.0 / 3.0) / math.sqrt(math.log(n))


def log_dml_bounds(n: int, w: int) -> tuple[float, float]:
    dev = w - Fraction(n, 2)
    if abs(dev) > dml_window(n):
        raise WindowError(f"|w - n/2| = {float(abs(dev))} exceeds the window {dml_window(n):.6g}")
    expo = -2.0 * float(dev * dev / n)
    return expo - 0.5 * math.log(2.0 * n), expo - 0.5 * math.log(n)


def dml_bounds(n: int, w: int) -> tuple[float, float]:
    """``((2n)^{-1/2} e^{-2(w-n/2)^2/n}, n^{-1/2} e^{-2(w-n/2)^2/n})``.

    Raises :class:`WindowError` outside ``|w - n/2| <= n^{2/3}/sqrt(log n)``;
    use :func:`hoeffding_bound` there.
    """
    lo, hi = log_dml_bounds(n, w)
    return math.exp(lo), math.exp(hi)


def log_hoeffding_bound(n: int, w: int) -> float:
    dev = w - Fraction(n, 2)
    return -2.0 * float(dev * dev / n)


def hoeffding_bound(n: int, w: int) -> float:
    """``e^{-2 (w - n/2)^2 / n}``, an upper bound on ``B_n(w)``."""
    if not 0 <= w <= n:
        raise DomainError(f"w={w} outside [0:{n}]")
    return math.exp(log_hoeffding_bound(n, w))


def dml_sandwich_holds(n: int, max_offset: Optional[int] = None) -> tuple[bool, float]:
    """Check both normal-approximation bounds for all ``|w - n/2| <= max_offset``.

    Returns ``(holds, worst_slack)`` where the slack is the smallest log-domain
    margin over both inequalities.
    """
    half = n // 2
    limit = dml_window(n) if max_offset is None else min(max_offset, dml_window(n))
    offs = np.arange(-int(limit) - 1, int(limit) + 2)
    ws = half + offs
    dev = ws - n / 2.0
    ws = ws[(np.abs(dev) <= limit) & (ws >= 0) & (ws <= n)]
    lp = log_binom_pmf_array(n, ws)
    expo = -2.0 * (ws - n / 2.0) ** 2 / n
    lower = expo - 0.5 * math.log(2.0 * n)
    upper = expo - 0.5 * math.log(n)
    slack = float(min((lp - lower).min(), (upper - lp).min()))
    return slack >= 0.0, slack


def dml_threshold(candidates) -> Optional[int]:
    """Smallest ``n`` among ``candidates`` (ascending) from which the sandwich holds on.

    The bounds are only claimed for large ``n``; this measures where they
    start holding instead of assuming a value.
    """
    first = None
    for n in candidates:
        ok, _ = dml_sandwich_holds(n)
        if ok and first is None:
            first = n
        elif not ok:
            first = None
    return first


def _logsumexp(vals) -> float:
    arr = np.asarray(vals, dtype=float)
    if arr.size == 0:
        return -math.inf
    top = arr.max()
    if top == -math.inf:
        return -math.inf
    return float(top + math.log(np.exp(arr - top).sum()))


def _log1mexp(x: float) -> float:
    """``log(1 - e^{-x})`` for ``x > 0``."""
    return math.log(-math.expm1(-x)) if x < 0.693 else math.log1p(-math.exp(-x))


def _sweep(f: Callable[[int], float], start: int, end: int, rel_cut: float, target: float) -> list[float]:
    """Upper-bound pieces for ``sum T(w)`` from ``start`` to ``end`` (either direction).

    ``T = exp(f)`` must be log-concave and non-increasing when moving from
    ``start`` toward ``end``.  Each block of ``h`` terms is bounded by ``h``
    times its first term; once the remaining mass is provably below
    ``rel_cut`` times the running total, the geometric bound that
    log-concavity gives for the rest is added and the sweep stops.
    """
    step = 1 if end >= start else -1
    remaining = abs(end - start) + 1
    pieces: list[float] = []
    a, fa, h = start, f(start), 1
    while remaining > 0:
        h = min(h, remaining)
        if h == remaining:
            pieces.append(math.log(h) + fa)
            break
        b = a + step * h
        fb = f(b)
        pieces.append(math.log(h) + max(fa, fb))
        remaining -= h
        drop = fa - fb
        if drop > 0:
            rest = math.log(h) + fb - _log1mexp(drop)
            if rest < max(_logsumexp(pieces), target) + math.log(rel_cut):
                pieces.append(rest)
                break
            if drop < 0.004:
                h *= 2
            elif drop > 0.016 and h > 1:
                h //= 2
        else:
            h *= 2
        a, fa = b, fb
    return pieces


#: relative inflation covering float error in the log terms
LOG_SAFETY = 1e-9


def log_concave_sum_bound(f: Callable[[int], float], lo: int, hi: int, rel_cut: float = 1e-25,
                          direct_max: int = 4096) -> float:
    """Rigorous upper bound on ``log sum_{w=lo}^{hi} exp(f(w))`` for concave ``f``.

    Short ranges are summed term by term.  Long ranges are split at the
    mode (integer ternary search) and each monotone side is summed in
    adaptive blocks with a geometric bound for the truncated tail, so the
    result never under-counts.  A relative inflation of ``LOG_SAFETY`` is
    added on top to absorb rounding in ``f``.
    """
    if hi < lo:
        return -math.inf
    if hi - lo + 1 <= direct_max:
        total = _logsumexp([f(w) for w in range(lo, hi + 1)])
    else:
        a, b = lo, hi
        while b - a > 2:
            m1 = a + (b - a) // 3
            m2 = b - (b - a) // 3
            if f(m1) < f(m2):
                a = m1 + 1
            else:
                b = m2
        mode = max(range(a, b + 1), key=f)
        right = _sweep(f, mode, hi, rel_cut, -math.inf)
        left = _sweep(f, mode - 1, lo, rel_cut, _logsumexp(right)) if mode > lo else []
        total = _logsumexp(right + left)
    if total == -math.inf:
        return total
    return total + LOG_SAFETY * (1.0 + abs(total))
