"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Runtime budgets are part of each criterion and are checked too.  The
collected lines are printed again in pytest's terminal summary.
"""
import json
import math
import random
import time
from fractions import Fraction

import mpmath
import numpy as np

from kwisecover import binom, certify, lp, oracle, seq
from kwisecover.cli import main as cli_main

_RESULTS: dict = {}


def summary_lines() -> list:
    return [_RESULTS[k] for k in sorted(_RESULTS)]


def _record(num: int, ok: bool, elapsed: float, budget: float, detail: str) -> None:
    ok = ok and elapsed < budget
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s / {budget:.0f}s) {detail}"
    _RESULTS[num] = line
    print(line)
    assert ok, line


# ------------------------------------------------------------------ 1


def test_criterion_1_constants(capsys):
    t0 = time.perf_counter()
    code = cli_main(["constants", "--format", "json"])
    report = json.loads(capsys.readouterr().out)
    elapsed = time.perf_counter() - t0
    r = report["result"]
    a, h = r["alpha_star"], r["h_default"]
    ok = code == 0 and abs(a - 0.9232) <= 0.002 and abs(h - 0.9299) <= 0.001
    with capsys.disabled():
        _record(1, ok, elapsed, 5, f"alpha*={a:.6f} h(0.5204,0.004)={h:.6f}")


# ------------------------------------------------------------------ 2


def test_criterion_2_lebesgue_bounds():
    t0 = time.perf_counter()
    worst_c = min(seq.chebyshev_lebesgue_bound(k) - seq.lebesgue_constant(seq.extended_chebyshev(k))
                  for k in range(1, 31))
    worst_e = min(seq.equally_spaced_lebesgue_bound(k) - seq.lebesgue_constant(seq.equally_spaced(k))
                  for k in range(1, 16))
    elapsed = time.perf_counter() - t0
    _record(2, worst_c > 0 and worst_e > 0, elapsed, 30,
            f"min slack chebyshev k<=30: {worst_c:.4g}, equispaced k<=15: {worst_e:.4g}")


# ------------------------------------------------------------------ 3


def test_criterion_3_strong_duality():
    t0 = time.perf_counter()
    count = bad = 0
    for n in range(8, 31):
        for k in range(1, 6):
            for r in range(n + 1):
                primal, dual = lp.strong_duality(n, k, r)
                count += 1
                bad += primal != dual
    elapsed = time.perf_counter() - t0
    _record(3, bad == 0, elapsed, 120, f"{count - bad}/{count} exact equalities")


# ------------------------------------------------------------------ 4


def test_criterion_4_tietavainen_consistency():
    t0 = time.perf_counter()
    count = 0
    failures = []
    for n in range(2, 41):
        for k in range(1, min(6, n - 1) + 1):
            ds = lp.delta_star(n, k)
            rho = certify.tietavainen_radius_bound(n, k + 1)
            lb = n / 2 - rho
            # strict bound; a non-attained minimum sitting exactly on it also counts as strict
            above = ds.delta > lb or (ds.delta == lb and not ds.attained)
            # the witness is k-wise independent, so its distance from 0 obeys the radius bound
            witness_ok = min(ds.witness.support) <= rho + 1e-12
            R, _ = lp.max_one_sided_radius(n, k)
            radius_ok = R <= rho + 1e-12
            inside = ds.delta <= Fraction(n, 2)
            count += 1
            if not (above and witness_ok and radius_ok and inside):
                failures.append((n, k, str(ds.delta), lb, R, rho))
    elapsed = time.perf_counter() - t0
    _record(4, not failures, elapsed, 120, f"{count - len(failures)}/{count} (n,k) pairs consistent {failures[:3]}")


# ------------------------------------------------------------------ 5


def _brute_moment(n, t, probs):
    return sum(p * sum((-1) ** i * math.comb(w, i) * math.comb(n - w, t - i) for i in range(t + 1))
               for w, p in enumerate(probs) if p)


def test_criterion_5_witness_soundness():
    t0 = time.perf_counter()
    rnd = random.Random(0)
    instances = lifted = 0
    failures = []
    windows = []
    for n in range(2, 15):
        for k in range(1, min(5, n) + 1):
            for R in range(n + 1):
                windows.append((n, k, lp.WeightWindow.one_sided(n, R), R))
    for _ in range(120):
        n = rnd.randint(15, 30)
        k = rnd.randint(1, 5)
        d = rnd.choice(lp.window_breakpoints(n))
        windows.append((n, k, lp.WeightWindow.two_sided(n, d), None))
    for n, k, win, R in windows:
        try:
            wd = lp.witness_distribution(n, k, win)
        except lp.InfeasibleError:
            continue
        instances += 1
        ok = (wd.is_probability() and set(wd.support) <= set(win.members())
              and all(_brute_moment(n, t, wd.probs) == 0 for t in range(1, k + 1)))
        if ok and n <= 14:
            mu = oracle.lift(wd)
            ok = oracle.kwise_check(mu, k)[0]
            if R is not None:
                ok = ok and oracle.distance_from_origin(mu.points()) >= R
                ok = ok and oracle.covering_radius(mu.points(), n) >= R
            lifted += 1
        if not ok:
            failures.append((n, k, win))
    elapsed = time.perf_counter() - t0
    _record(5, not failures and instances >= 200, elapsed, 60,
            f"{instances} witnesses checked ({lifted} lifted to the cube), {len(failures)} failures")


# ------------------------------------------------------------------ 6


def _candidates(n, k, delta, rnd):
    half = Fraction(n, 2)
    out = set()
    for top in (w for w in range(n + 1) if w > half and w - half <= delta):
        R = top - half
        for base in (seq.extended_chebyshev(k), seq.equally_spaced(k)):
            try:
                out.add(seq.quantize_centered(seq.scale_translate(base, half, R), n, min_gap=None).points)
            except seq.QuantizationError:
                pass
        inner = list(range(n - top + 1, top))
        if len(inner) >= k - 1:
            for _ in range(3):
                out.add(tuple([n - top] + sorted(rnd.sample(inner, k - 1)) + [top]))
    return [seq.PointSeq(p) for p in sorted(out)]


def test_criterion_6_certificate_soundness():
    t0 = time.perf_counter()
    rnd = random.Random(0)
    runs = certified = nontrivial = 0
    unsound = []
    en_cache = {}

    def en_zero(n, k, delta):
        key = (n, k, min(delta, Fraction(n, 2)))
        if key not in en_cache:
            en_cache[key] = lp.en_value(n, k, lp.WeightWindow.two_sided(n, delta)) == lp.ZERO
        return en_cache[key]

    fns = (certify.one_sequence_certificate, certify.translated_sequences_certificate)
    for n in range(2, 31):
        for k in range(1, min(5, n - 1) + 1):
            for d in lp.window_breakpoints(n)[1:] + [Fraction(n, 2) + 1]:
                for delta in (d, d + Fraction(1, 3)):
                    for W in _candidates(n, k, delta, rnd):
                        for fn in fns:
                            for mode in (certify.EXACT_SUM, certify.LOGFLOAT_SUM):
                                c = fn(n, k, delta, W, nu_mode=mode)
                                runs += 1
                                if c.certified:
                                    certified += 1
                                    nontrivial += delta < Fraction(n, 2)
                                    if not en_zero(n, k, delta):
                                        unsound.append((n, k, str(delta), W.points, fn.__name__, mode))
            # the full pipeline at Delta = sqrt(alpha k n)
            for alpha in (0.5, 0.93, 1.5, 3.0):
                params = certify.CertificateParams(n, k, alpha=alpha, nu_mode=certify.EXACT_SUM)
                if 4 * params.delta_sq > n * n:
                    continue
                for builder in (certify.translated_certificate, certify.equally_spaced_variant):
                    c = builder(params)
                    runs += 1
                    if c.certified:
                        certified += 1
                        dsq = params.delta_sq
                        win_delta = Fraction(math.isqrt(math.floor(4 * dsq)), 2)  # same integer window
                        if not en_zero(n, k, win_delta):
                            unsound.append((n, k, alpha, builder.__name__))
    elapsed = time.perf_counter() - t0
    _record(6, not unsound and nontrivial > 0, elapsed, 120,
            f"{runs} certificate runs, {certified} Certified ({nontrivial} with Delta < n/2), "
            f"{len(unsound)} contradicted by the LP")


# ------------------------------------------------------------------ 7


def test_criterion_7_large_n_certificate():
    t0 = time.perf_counter()
    cert, log = certify.find_large_n_fixture(range(30, 90))
    elapsed = time.perf_counter() - t0
    ok = cert is not None
    detail = "no certified (n, k) found"
    if ok:
        n, k = cert.n, cert.k
        ok = (k <= n ** (1 / 3) / math.log(n) ** 2 and all(c.passed for c in cert.conditions)
              and cert.nu["log"] <= cert.rhs["log"] and cert.nu["mode"] == certify.LOGFLOAT_SUM
              and (n, k) == (2**61, 738))
        detail = (f"n=2^{n.bit_length() - 1} k={k} log nu={cert.nu['log']:.3f} "
                  f"log rhs={cert.rhs['log']:.3f} margin={cert.nu['log_margin']:.3f}")
    _record(7, ok, elapsed, 600, detail)


# ------------------------------------------------------------------ 8


def test_criterion_8_tail_bounds():
    t0 = time.perf_counter()
    violations = 0
    closest = math.inf
    ln2 = math.log(2)
    mpmath.mp.dps = 40
    for n in range(1, 501):
        c = 1
        for w in range(n + 1):
            margin = -2 * (w - n / 2) ** 2 / n - (math.log(c) - n * ln2)
            if margin < 1e-9:
                # decide near-ties at high precision
                margin = float(-2 * (mpmath.mpf(w) - mpmath.mpf(n) / 2) ** 2 / n
                               - (mpmath.log(c) - n * mpmath.log(2)))
            closest = min(closest, margin)
            violations += margin < 0
            c = c * (n - w) // (w + 1)
    dml_ok, dml_slack = binom.dml_sandwich_holds(10**6, 5000)
    elapsed = time.perf_counter() - t0
    _record(8, violations == 0 and dml_ok, elapsed, 60,
            f"Hoeffding: {violations} violations (min log margin {closest:.3g}); "
            f"sandwich at n=1e6, |w-n/2|<=5000: min log slack {dml_slack:.4g}")


# ------------------------------------------------------------------ 9


def _sup_abs(poly: np.polynomial.Polynomial) -> float:
    pts = [-1.0, 1.0]
    if poly.degree() >= 2:
        r = poly.deriv().roots()
        pts += [z.real for z in r if abs(z.imag) < 1e-9 and -1 <= z.real <= 1]
    return float(np.max(np.abs(poly(np.array(pts)))))


def test_criterion_9_approximation_theory():
    t0 = time.perf_counter()
    rng = np.random.default_rng(0)
    worst_markov = worst_key = math.inf
    for i in range(100):
        k = int(rng.integers(1, 9))
        if i < 8:
            p = np.polynomial.Chebyshev.basis(i + 1).convert(kind=np.polynomial.Polynomial)  # equality case
            k = i + 1
        else:
            p = np.polynomial.Polynomial(rng.uniform(-1, 1, k + 1))
        norm, dnorm = _sup_abs(p), _sup_abs(p.deriv())
        worst_markov = min(worst_markov, (k * k * norm - dnorm) / max(1.0, k * k * norm))
    for _ in range(100):
        k = int(rng.integers(1, 9))
        nodes = np.cumsum(rng.uniform(0.05, 1.0, k + 1)) + rng.uniform(-5, 5)
        s = seq.PointSeq(tuple(float(x) for x in nodes))
        p = np.polynomial.Polynomial(rng.uniform(-1, 1, k + 1))
        node_max = float(np.abs(p(nodes)).max())
        side = 1 if rng.random() < 0.5 else -1
        x = (nodes[-1] if side > 0 else nodes[0]) + side * float(rng.uniform(1e-3, 5 * (nodes[-1] - nodes[0])))
        bound = seq.outside_bound(s, node_max, x)
        worst_key = min(worst_key, (bound - abs(p(x))) / max(1.0, bound))
    elapsed = time.perf_counter() - t0
    _record(9, worst_markov >= -1e-9 and worst_key >= -1e-9, elapsed, 30,
            f"min relative margin: Markov {worst_markov:.3g}, outside bound {worst_key:.3g}")


if __name__ == "__main__":
    import pytest

    raise SystemExit(pytest.main([__file__, "-q"]))
