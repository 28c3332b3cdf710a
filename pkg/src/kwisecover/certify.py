"""Sufficient conditions for ``E_n(k, Delta) = 0`` that avoid solving the LP.

A certificate bounds the binomial mass that a degree-``k`` polynomial can
collect outside the window ``|w - n/2| <= Delta`` (the weighted tail ``nu``)
against the mass it must lose on one or several node sequences inside the
window (``rhs``).  Everything that feeds the verdict is recorded, so the
resulting :class:`Certificate` doubles as a checkable proof object.

Radii that involve square roots are handled through their squares, which
keeps every comparison with ``Delta = sqrt(alpha k n)`` exact.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy import optimize

from .binom import EXACT_MAX_N, log_binom_pmf, log_concave_sum_bound
from .poly import DomainError
from .seq import (
    PointSeq,
    QuantizationError,
    chebyshev_lebesgue_bound,
    distortion_bound,
    equally_spaced,
    equally_spaced_lebesgue_bound,
    extended_chebyshev,
    lebesgue_constant,
    quantize_centered,
    quantized_lebesgue_bound,
    scale_translate,
)

PAPER_BOUND = "PaperBound"
MEASURED = "Measured"
LAMBDA_MODES = (PAPER_BOUND, MEASURED)

EXACT_SUM = "ExactSum"
LOGFLOAT_SUM = "LogFloatSum"
LEMMA13 = "Lemma13Estimate"
NU_MODES = (EXACT_SUM, LOGFLOAT_SUM, LEMMA13)

CERTIFIED = "Certified"
NOT_CERTIFIED = "NotCertified"

DEFAULT_ALPHA = 0.93
DEFAULT_BETA = 0.5204
DEFAULT_EPSILON = 0.004

#: measured Lebesgue constants are inflated by this factor before use
MEASURED_SAFETY = 1e-9


def _q(x) -> Fraction:
    """Exact rational from an int, Fraction, decimal string or float (via its repr)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(float(x)))
    return Fraction(x)


def _floor_sqrt(q: Fraction) -> int:
    return math.isqrt(math.floor(q))


def _floor_half_plus_sqrt(n: int, q: Fraction) -> int:
    """``floor(n/2 + sqrt(q))`` exactly."""
    return (n + math.isqrt(math.floor(4 * q))) // 2


def _sqrt(q: Fraction) -> float:
    return math.sqrt(q.numerator) / math.sqrt(q.denominator) if q.numerator < 2**1000 else math.sqrt(float(q))


@functools.lru_cache(maxsize=32)
def _measured_lambda(W: PointSeq) -> float:
    """Measured Lebesgue constant inflated by ``MEASURED_SAFETY`` (inf if not representable)."""
    try:
        val = lebesgue_constant(W)
    except (OverflowError, FloatingPointError, ValueError):
        return math.inf
    return val * (1.0 + MEASURED_SAFETY) if math.isfinite(val) else math.inf


# ------------------------------------------------------------------ types


@dataclass(frozen=True)
class CertificateParams:
    n: int
    k: int
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    epsilon: float = DEFAULT_EPSILON
    lambda_mode: str = PAPER_BOUND
    nu_mode: str = LOGFLOAT_SUM

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise DomainError("n and k must be positive")
        if not (self.alpha > 0 and self.beta > 0 and self.epsilon > 0):
            raise DomainError("alpha, beta, epsilon must be positive")
        if not self.beta + self.epsilon < 1:
            raise DomainError("beta + epsilon must be < 1")
        if self.lambda_mode not in LAMBDA_MODES:
            raise ValueError(f"lambda_mode must be one of {LAMBDA_MODES}")
        if self.nu_mode not in NU_MODES:
            raise ValueError(f"nu_mode must be one of {NU_MODES}")

    @property
    def delta_sq(self) -> Fraction:
        return _q(self.alpha) * self.k * self.n

    @property
    def delta(self) -> float:
        return math.sqrt(self.alpha * self.k * self.n)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "alpha": self.alpha,
            "beta": self.beta,
            "epsilon": self.epsilon,
            "lambda_mode": self.lambda_mode,
            "nu_mode": self.nu_mode,
        }


@dataclass(frozen=True)
class Condition:
    name: str
    passed: bool
    slack: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {"passed": self.passed, "slack": self.slack, "detail": self.detail}


@dataclass(frozen=True)
class Certificate:
    n: int
    k: int
    delta: float
    W: Optional[PointSeq]
    t: int
    p_offset: int
    R_W: Optional[Fraction]
    lambda_W: float
    lambda_source: str
    nu: dict  # {"mode", "log", optionally "exact"}
    rhs: dict
    conditions: tuple
    verdict: str
    reason: str = ""
    params: Optional[CertificateParams] = None
    approach: str = "translated"

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def condition(self, name: str) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "approach": self.approach,
            "params": self.params.to_dict() if self.params else None,
            "n": self.n,
            "k": self.k,
            "delta": self.delta,
            "W": None if self.W is None else [str(x) for x in self.W.points],
            "t": self.t,
            "p_offset": self.p_offset,
            "R_W": None if self.R_W is None else str(self.R_W),
            "lambda_W": self.lambda_W,
            "lambda_source": self.lambda_source,
            "nu": dict(self.nu),
            "rhs": dict(self.rhs),
            "conditions": {c.name: c.to_dict() for c in self.conditions},
            "verdict": self.verdict,
            "reason": self.reason,
        }


def _cond(name: str, lhs: float, rhs: float, detail: str = "") -> Condition:
    """``lhs <= rhs`` with slack ``rhs - lhs``."""
    return Condition(name, bool(lhs <= rhs), float(rhs - lhs), detail)


def _exact_cond(name: str, lhs: Fraction, rhs: Fraction, detail: str = "", slack: Optional[float] = None) -> Condition:
    return Condition(name, lhs <= rhs, float(rhs - lhs) if slack is None else float(slack), detail)


# ------------------------------------------------------------------ constants


def a_coeff(k: int) -> float:
    """``(8/pi) log(k+1) + 4``, twice the quantized Lebesgue bound."""
    return 8.0 / math.pi * math.log(k + 1) + 4.0


def b_coeff(k: int, alpha: float, beta: float) -> float:
    """Gap coefficient: the constructed sequence has min gap at least ``b(k) sqrt(n)``."""
    return 1.5 * beta * (math.pi / (2.0 * (k + 1))) ** 2 * math.sqrt(alpha * k)


def c_coeff(alpha: float, beta: float, epsilon: float) -> float:
    return 2.0 * (alpha - 0.5 * math.log((2.0 + epsilon) / beta))


def h_function(beta: float, epsilon: float, base: float = 2.0) -> float:
    """Smallest ``alpha`` for which the exponents of ``rhs`` and ``nu`` balance.

    ``base`` is the leading constant of the tail ratio: 2 for Chebyshev
    nodes, 4 for the equally spaced heuristic.
    """
    if beta <= 0 or epsilon < 0:
        raise DomainError("need beta > 0 and epsilon >= 0")
    if beta + epsilon >= 1:
        raise DomainError("beta + epsilon must be < 1")
    return (math.log(base + epsilon) - math.log(beta)) / (2.0 * (1.0 - (beta + epsilon) ** 2))


def optimize_alpha_star(grid_step: float = 1e-3, refine_tol: float = 1e-12, base: float = 2.0):
    """Minimise ``h`` over ``beta > 0, epsilon >= 0, beta + epsilon < 1``.

    A grid pass locates the basin, then L-BFGS-B refines inside a box around
    the best grid point.  Returns ``(alpha_star, beta, epsilon)``.
    """
    betas = np.arange(grid_step, 1.0, grid_step)
    epss = np.arange(0.0, 1.0, grid_step)
    B, E = np.meshgrid(betas, epss, indexing="ij")
    ok = B + E < 1.0 - grid_step / 2
    H = np.full(B.shape, np.inf)
    H[ok] = (np.log(base + E[ok]) - np.log(B[ok])) / (2.0 * (1.0 - (B[ok] + E[ok]) ** 2))
    i, j = np.unravel_index(np.argmin(H), H.shape)
    b0, e0 = float(B[i, j]), float(E[i, j])
    lo_b, hi_b = max(b0 - grid_step, grid_step / 10), b0 + grid_step
    hi_e = e0 + grid_step
    if hi_b + hi_e >= 1.0:
        return float(H[i, j]), b0, e0
    res = optimize.minimize(
        lambda v: h_function(v[0], v[1], base),
        x0=[b0, e0],
        method="L-BFGS-B",
        bounds=[(lo_b, hi_b), (0.0, hi_e)],
        options={"ftol": refine_tol, "gtol": refine_tol},
    )
    if res.fun <= H[i, j]:
        return float(res.fun), float(res.x[0]), float(res.x[1])
    return float(H[i, j]), b0, e0


def tietavainen_radius_bound(n: int, d: int) -> float:
    """Covering-radius upper bound for codes (or distributions) with dual distance ``d``."""
    if not 2 <= d <= n:
        raise DomainError("need 2 <= d <= n")
    if d % 2 == 0:
        s = d // 2
        return n / 2 - math.sqrt(s * (n - s)) + s ** (1 / 6) * math.sqrt(n - s)
    s = (d - 1) // 2
    return n / 2 - math.sqrt(s * (n - 1 - s)) + s ** (1 / 6) * math.sqrt(n - 1 - s) - 0.5


def delta_star_lower_bound(n: int, k: int) -> float:
    """Strict lower bound on ``Delta*_n(k)`` implied by the radius bound with ``d = k + 1``."""
    return n / 2 - tietavainen_radius_bound(n, k + 1)


def bch_style_lower_bound(m: int, s: int) -> float:
    """``n/2 - (s-1) sqrt(n+1) - 1/2`` with ``n = 2^m - 1``."""
    if m < 2 or s < 1:
        raise DomainError("need m >= 2 and s >= 1")
    n = 2**m - 1
    if not s < 0.5 * math.sqrt(n + 1) + 1:
        raise DomainError(f"s={s} too large for m={m}")
    return n / 2 - (s - 1) * math.sqrt(n + 1) - 0.5


# ------------------------------------------------------------------ nu and rhs


def _tail_start(n: int, delta_sq: Fraction) -> int:
    return _floor_half_plus_sqrt(n, delta_sq) + 1


def _check_center(n: int, W: PointSeq) -> Fraction:
    if not W.is_integer:
        raise DomainError("W must consist of integers")
    if Fraction(W.points[0] + W.points[-1], 2) != Fraction(n, 2):
        raise DomainError("W must be centred at n/2")
    R = Fraction(W.points[-1] - W.points[0], 2)
    top = Fraction(n, 2) + R
    # n/2 + R(W) must be an integer; anything else means W is broken
    assert top.denominator == 1, "n/2 + R(W) is not an integer"
    return R


def _log_nu_tail(n: int, k: int, w0: int, R: Fraction, p: int) -> float:
    """Rigorous upper bound on ``log sum_{w >= w0} B_n(w) ((2w - n + 2p)/R)^k``."""
    log_R = math.log(R.numerator) - math.log(R.denominator)

    def f(w: int) -> float:
        return log_binom_pmf(n, w) + k * (math.log(2 * w - n + 2 * p) - log_R)

    return log_concave_sum_bound(f, w0, n)


def _exact_nu_tail(n: int, k: int, w0: int, R: Fraction, p: int) -> Fraction:
    total = 0
    c = math.comb(n, w0) if w0 <= n else 0
    for w in range(w0, n + 1):
        total += c * (2 * w - n + 2 * p) ** k
        c = c * (n - w) // (w + 1)
    return Fraction(total, 2**n) / R**k


def _lambda_for(W: PointSeq, lam_bound: float, lambda_mode: str) -> tuple[float, str, Optional[float]]:
    """Returns ``(lambda used in nu, provenance, measured value or None)``."""
    measured = _measured_lambda(W) if (lambda_mode == MEASURED or W.k <= 3000) else None
    if measured is not None and not math.isfinite(measured):
        measured = None
    if lambda_mode == MEASURED:
        if measured is None:
            raise DomainError("Lebesgue constant not measurable at this size")
        return measured, MEASURED, measured
    return lam_bound, PAPER_BOUND, measured


def _evaluate(n, k, delta_sq, W, t, p, lam, lam_source, nu_mode, conditions, params, approach, force=False):
    R = W.radius if isinstance(W.radius, Fraction) else Fraction(W.radius)
    delta = _sqrt(delta_sq)
    w0 = _tail_start(n, delta_sq)
    top = Fraction(n, 2) + R + p
    assert top.denominator == 1, "n/2 + R(W) + p is not an integer"
    top = int(top)
    nu: dict = {"mode": nu_mode}
    rhs: dict = {}
    if nu_mode == EXACT_SUM:
        if n > EXACT_MAX_N and not force:
            raise DomainError(f"exact summation refused for n={n} > {EXACT_MAX_N}")
        tail = _exact_nu_tail(n, k, w0, R, p)
        nu_exact = 2 * Fraction(lam) * tail
        rhs_exact = Fraction(t * math.comb(n, top), 2**n) if 0 <= top <= n else Fraction(0)
        nu["exact"] = str(nu_exact)
        nu["log"] = math.log(nu_exact) if nu_exact else -math.inf
        rhs["exact"] = str(rhs_exact)
        rhs["log"] = math.log(rhs_exact) if rhs_exact else -math.inf
        holds = nu_exact <= rhs_exact
    else:
        log_tail = _log_nu_tail(n, k, w0, R, p) if w0 <= n else -math.inf
        nu["log"] = math.log(2 * lam) + log_tail if log_tail > -math.inf else -math.inf
        lr = math.log(t) + log_binom_pmf(n, top)
        rhs["log"] = lr - 1e-9 * (1.0 + abs(lr))
        holds = nu["log"] <= rhs["log"]
    nu["tail_start"] = w0
    rhs["point"] = top
    rhs["t"] = t
    return _finish(n, k, delta, W, t, p, R, lam, lam_source, nu, rhs, conditions, holds, params, approach)


def _finish(n, k, delta, W, t, p, R, lam, lam_source, nu, rhs, conditions, holds, params, approach):
    failed = [c.name for c in conditions if not c.passed]
    if failed:
        verdict, reason = NOT_CERTIFIED, "condition failed: " + ", ".join(failed)
    elif not holds:
        verdict, reason = NOT_CERTIFIED, "nu exceeds rhs"
    else:
        verdict, reason = CERTIFIED, ""
    nu = dict(nu)
    rhs = dict(rhs)
    if nu.get("log") is not None and rhs.get("log") is not None:
        nu["log_margin"] = rhs["log"] - nu["log"] if nu["log"] > -math.inf else math.inf
    return Certificate(n, k, delta, W, t, p, R, lam, lam_source, nu, rhs, tuple(conditions),
                       verdict, reason, params, approach)


# ------------------------------------------------------------------ the two tests for a given W


def one_sequence_certificate(n: int, k: int, delta, W: PointSeq, nu_mode: str = LOGFLOAT_SUM,
                             lambda_value: Optional[float] = None, force: bool = False) -> Certificate:
    """Single-sequence test: ``nu = 2 Lambda(W) sum_{w > n/2 + Delta} B_n(w) (2(w - n/2)/R)^k``.

    Certified iff ``nu <= B_n(n/2 + R(W))``.  ``Lambda(W)`` is measured unless
    ``lambda_value`` (an upper bound) is supplied.
    """
    delta = _q(delta)
    if delta <= 0:
        raise DomainError("Delta must be positive")
    if len(W) != k + 1:
        raise DomainError("W must have k+1 points")
    R = _check_center(n, W)
    if R > delta:
        raise DomainError("W is not contained in the window")
    lam = lambda_value if lambda_value is not None else _measured_lambda(W)
    src = "given" if lambda_value is not None else MEASURED
    return _evaluate(n, k, delta * delta, W, 1, 0, lam, src, nu_mode, [], None, "one_sequence", force)


def translated_sequences_certificate(n: int, k: int, delta, W: PointSeq, nu_mode: str = LOGFLOAT_SUM,
                                     lambda_value: Optional[float] = None, force: bool = False) -> Certificate:
    """Translated-sequences test for a given integer ``W`` centred at ``n/2``.

    With ``t`` the minimum gap and ``p = ceil((t-1)/2)``, certified iff
    ``R(W) + p <= Delta`` and ``nu <= t B_n(n/2 + R(W) + p)``.
    """
    delta = _q(delta)
    if delta <= 0:
        raise DomainError("Delta must be positive")
    if len(W) != k + 1:
        raise DomainError("W must have k+1 points")
    R = _check_center(n, W)
    t = int(W.min_gap)
    p = (t - 1 + 1) // 2  # ceil((t-1)/2)
    conds = [_exact_cond("f", R + p, delta, "R(W) + p <= Delta")]
    if not conds[0].passed:
        return _finish(n, k, float(delta), W, t, p, R, float("nan"), "", {"mode": nu_mode}, {}, conds,
                       False, None, "translated")
    lam = lambda_value if lambda_value is not None else _measured_lambda(W)
    src = "given" if lambda_value is not None else MEASURED
    return _evaluate(n, k, delta * delta, W, t, p, lam, src, nu_mode, conds, None, "translated", force)


# ------------------------------------------------------------------ the explicit construction


def _radius_x(params: CertificateParams, bits: int = 64) -> Fraction:
    """Dyadic lower approximation of ``beta sqrt(alpha k n) + 1``."""
    q = _q(params.beta) ** 2 * params.delta_sq
    scale = 4**bits
    return Fraction(math.isqrt(math.floor(q * scale)), 2**bits) + 1


def assumption_checks(params: CertificateParams) -> list[Condition]:
    """The four size assumptions under which the construction is proved."""
    n, k, al, be, ep = params.n, params.k, params.alpha, params.beta, params.epsilon
    s = math.sqrt(al * k * n)
    rn = math.sqrt(n)
    return [
        _exact_cond("assume_window", 4 * params.delta_sq, Fraction(n) ** 2, "sqrt(alpha k n) <= n/2", n / 2 - s),
        _cond("assume_gap", 4.0 / (3.0 * be * math.sqrt(al * k)) * (2.0 * (k + 1) / math.pi) ** 2, rn,
              "gap assumption"),
        _cond("assume_distortion", 2.0 * k**1.5 / (be * math.sqrt(al)) * (2.0 / math.pi * math.log(k + 1) + 1.0), rn,
              "distortion assumption"),
        _cond("assume_offset", 4.0 * (math.pi / (2.0 * (k + 1))) ** 2 * (be + 1.0 / s) + 3.0 / s, ep,
              "offset assumption"),
    ]


def build_lemma12_sequence(params: CertificateParams) -> tuple[Optional[PointSeq], list[Condition]]:
    """Quantized, scaled Chebyshev sequence plus the size assumptions and the conditions (a)-(f).

    Returns ``(W, conditions)``; ``W`` is None when quantization fails.
    Assumption failures are reported, not raised.
    """
    n, k = params.n, params.k
    conds = assumption_checks(params)
    X = scale_translate(extended_chebyshev(k), Fraction(n, 2), _radius_x(params))
    try:
        W = quantize_centered(X, n, min_gap=None)
    except QuantizationError as exc:
        conds.append(Condition("quantize", False, float("-inf"), str(exc)))
        return None, conds
    conds += sequence_conditions(params, W, quantized_lebesgue_bound(k), X)
    return W, conds


def sequence_conditions(params: CertificateParams, W: PointSeq, lam_bound: float,
                        X: Optional[PointSeq] = None, gap_target: Optional[float] = None) -> list[Condition]:
    n, k = params.n, params.k
    be, ep = _q(params.beta), _q(params.epsilon)
    dsq = params.delta_sq
    R = _check_center(n, W)
    t = int(W.min_gap)
    p = (t - 1 + 1) // 2
    out = []
    if gap_target is None:
        gap_target = b_coeff(k, params.alpha, params.beta) * math.sqrt(n)
    out.append(_cond("a", gap_target, t, "t >= b(k) sqrt(n)"))
    # compared through squares (exact), slacks reported in weight units
    delta = _sqrt(dsq)
    out.append(_exact_cond("b", be**2 * dsq, R**2, "R(W) >= beta Delta", float(R) - float(be) * delta))
    out.append(_exact_cond("c", (R + p) ** 2, (be + ep) ** 2 * dsq, "R(W) + p <= (beta+eps) Delta",
                           float(be + ep) * delta - float(R + p)))
    out.append(_exact_cond("d", (2 * p) ** 2, ep**2 * dsq, "2p <= eps Delta", float(ep) * delta - 2 * p))
    measured = _measured_lambda(W) if k <= 3000 else None
    if measured is not None and math.isfinite(measured):
        out.append(_cond("e", measured, lam_bound, "measured Lambda(W) <= bound"))
    elif X is not None:
        # fall back on the distortion estimate from the unquantized sequence
        gamma = 1.0 / float(X.radius)
        try:
            est = distortion_bound(chebyshev_lebesgue_bound(k), k, gamma)
        except Exception:
            est = math.inf
        out.append(_cond("e", est, lam_bound, "distortion estimate <= bound"))
    else:
        out.append(Condition("e", False, float("-inf"), "Lambda(W) could not be evaluated"))
    rp_ok = (R + p) ** 2 <= dsq
    out.append(Condition("f", rp_ok and 4 * dsq <= Fraction(n) ** 2,
                         min(float(_sqrt(dsq)) - float(R + p), n / 2 - _sqrt(dsq)), "R(W) + p <= Delta <= n/2"))
    c_ok, f_ok = out[2].passed, out[-1].passed
    implication = (not c_ok) or (4 * dsq > Fraction(n) ** 2) or f_ok
    out.append(Condition("f_from_c", implication, 0.0, "(c) and Delta <= n/2 imply (f)"))
    return out


def lemma13_estimate(params: CertificateParams) -> tuple[float, float, list[Condition]]:
    """``(log nu_est, log rhs_est, applicability conditions)``."""
    n, k, al, be, ep = params.n, params.k, params.alpha, params.beta, params.epsilon
    c = c_coeff(al, be, ep)
    log_nu = math.log(a_coeff(k)) + math.log1p(math.sqrt(al * k)) - c * k
    log_rhs = math.log(b_coeff(k, al, be) / math.sqrt(2.0)) - 2.0 * (be + ep) ** 2 * al * k
    ln = math.log(n)
    conds = [
        _cond("est_sqrt_e", math.sqrt(math.e), (2.0 + ep) / be, "(2+eps)/beta >= sqrt(e)"),
        Condition("est_c_positive", c > 0, c, "alpha > log((2+eps)/beta)/2"),
        _cond("est_k_range", k, n ** (1.0 / 3.0) / ln**2, "k <= n^(1/3)/log^2 n"),
    ]
    return log_nu, log_rhs, conds


def _certificate_from(params: CertificateParams, W, conds, lam_bound, approach, force=False) -> Certificate:
    n, k = params.n, params.k
    delta = params.delta
    if W is None:
        return _finish(n, k, delta, None, 0, 0, None, float("nan"), "", {"mode": params.nu_mode}, {},
                       conds, False, params, approach)
    R = W.radius
    t = int(W.min_gap)
    p = (t - 1 + 1) // 2
    if params.nu_mode == LEMMA13:
        log_nu, log_rhs, extra = lemma13_estimate(params)
        lam = lam_bound
        nu = {"mode": LEMMA13, "log": log_nu, "bound": "a(k)(1+sqrt(alpha k)) e^(-ck)"}
        rhs = {"log": log_rhs, "bound": "b(k)/sqrt(2) e^(-2(beta+eps)^2 alpha k)"}
        return _finish(n, k, delta, W, t, p, R, lam, PAPER_BOUND, nu, rhs, conds + extra,
                       log_nu <= log_rhs, params, approach)
    if not all(c.passed for c in conds if c.name in ("c", "d", "f")):
        # geometry broken: nu is meaningless, report conditions only
        return _finish(n, k, delta, W, t, p, R, float("nan"), "", {"mode": params.nu_mode}, {},
                       conds, False, params, approach)
    lam, src, _ = _lambda_for(W, lam_bound, params.lambda_mode)
    return _evaluate(n, k, params.delta_sq, W, t, p, lam, src, params.nu_mode, conds, params, approach, force)


def translated_certificate(params: CertificateParams, force: bool = False) -> Certificate:
    """Full pipeline at ``Delta = sqrt(alpha k n)`` with the quantized Chebyshev sequence."""
    W, conds = build_lemma12_sequence(params)
    return _certificate_from(params, W, conds, quantized_lebesgue_bound(params.k), "translated", force)


def equally_spaced_sequence(params: CertificateParams) -> PointSeq:
    """Integer equally spaced nodes centred at ``n/2`` with radius at least ``beta Delta``.

    The step ``s`` is the smallest integer with ``k s / 2 >= beta Delta`` and
    ``n - k s`` even, so ``W`` is an exact affine image of the unit equally
    spaced sequence and keeps its Lebesgue constant.
    """
    n, k = params.n, params.k
    target = 4 * _q(params.beta) ** 2 * params.delta_sq / k**2  # s^2 >= target
    s = math.isqrt(math.floor(target))
    if s * s < target:
        s += 1
    s = max(s, 1)
    if k % 2 == 0 and n % 2 == 1:
        # n - k s is odd for every integer step: no centred integer solution
        raise QuantizationError("equally spaced integer nodes cannot be centred at n/2 for even k and odd n")
    while (n - k * s) % 2:
        s += 1
    lo = (n - k * s) // 2
    if lo < 0:
        raise QuantizationError("equally spaced sequence does not fit in [0:n]")
    return PointSeq(tuple(lo + i * s for i in range(k + 1)))


def equally_spaced_variant(params: CertificateParams, force: bool = False) -> Certificate:
    """Same pipeline with equally spaced nodes and ``Lambda`` from the ``2^{k+3}/k`` bound."""
    n, k = params.n, params.k
    conds = [c for c in assumption_checks(params) if c.name == "assume_window"]
    try:
        W = equally_spaced_sequence(params)
    except QuantizationError as exc:
        conds.append(Condition("quantize", False, float("-inf"), str(exc)))
        return _certificate_from(params, None, conds, 0.0, "equally_spaced", force)
    lam_bound = equally_spaced_lebesgue_bound(k)
    sc = sequence_conditions(params, W, lam_bound, gap_target=2.0 * params.beta * params.delta / k)
    # (e) holds by construction (exact affine image); the measurement is still recorded when finite
    sc = [Condition("e", True, 0.0, "exact affine image of equally spaced nodes")
          if c.name == "e" and not math.isfinite(c.slack) else c for c in sc]
    return _certificate_from(params, W, conds + sc, lam_bound, "equally_spaced", force)


# ------------------------------------------------------------------ sweeps


def cube_root_k(n: int) -> int:
    """Largest ``k`` allowed by ``k <= n^{1/3} / log^2 n``."""
    ln = math.log(n)
    k = int(n ** (1.0 / 3.0) / ln**2)
    # guard the float cube root at the boundary
    while k > 0 and k**3 * ln**6 > n * (1 + 1e-12):
        k -= 1
    return k


def find_large_n_fixture(m_range=range(30, 90), alpha=DEFAULT_ALPHA, beta=DEFAULT_BETA,
                             epsilon=DEFAULT_EPSILON, nu_mode=LOGFLOAT_SUM, lambda_mode=PAPER_BOUND):
    """First ``n = 2^m`` (with ``k = floor(n^{1/3}/log^2 n)``) whose certificate passes.

    Returns ``(certificate or None, [(m, k, verdict, reason), ...])``.
    """
    log = []
    for m in m_range:
        n = 2**m
        k = cube_root_k(n)
        if k < 1:
            log.append((m, k, NOT_CERTIFIED, "k < 1"))
            continue
        params = CertificateParams(n, k, alpha, beta, epsilon, lambda_mode, nu_mode)
        if not all(c.passed for c in assumption_checks(params)):
            failed = [c.name for c in assumption_checks(params) if not c.passed]
            log.append((m, k, NOT_CERTIFIED, "assumption failed: " + ", ".join(failed)))
            continue
        cert = translated_certificate(params)
        log.append((m, k, cert.verdict, cert.reason))
        if cert.certified:
            return cert, log
    return None, log


def minimal_certified_alpha(n: int, k: int, builder, alphas, **kw) -> Optional[float]:
    """Smallest ``alpha`` in the ascending grid ``alphas`` that ``builder`` certifies.

    Bisection: assumes the verdict is monotone in ``alpha`` along the grid
    (larger windows only help).  Returns None if the largest value fails.
    """
    alphas = list(alphas)

    def ok(i):
        try:
            return builder(CertificateParams(n, k, alphas[i], **kw)).certified
        except DomainError:
            return False

    if not alphas or not ok(len(alphas) - 1):
        return None
    lo, hi = -1, len(alphas) - 1  # ok(hi) holds; everything <= lo fails
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return alphas[hi]
