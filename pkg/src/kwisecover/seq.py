"""Increasing point sequences and their Lebesgue constants.

Integer sequences used by the certificates live near ``n/2`` with ``n`` up
to ~1e20, which is beyond float resolution, so points are kept as ``int``
or :class:`~fractions.Fraction` whenever they come from exact data and are
only converted to floats after centring and scaling to ``[-1, 1]``.
"""
from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .poly import DomainError

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class QuantizationError(ValueError):
    pass


class DistortionError(ValueError):
    pass


class NodeFileError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class PointSeq:
    """Strictly increasing sequence ``x_1 < ... < x_{k+1}``."""

    points: tuple

    def __post_init__(self):
        pts = tuple(self.points)
        if len(pts) < 2:
            raise DomainError("a point sequence needs at least two points")
        for a, b in zip(pts, pts[1:]):
            if not a < b:
                raise DomainError("points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def k(self) -> int:
        return len(self.points) - 1

    @property
    def is_integer(self) -> bool:
        return all(isinstance(x, int) for x in self.points)

    @property
    def interval(self):
        return self.points[0], self.points[-1]

    @property
    def center(self):
        return _half(self.points[0] + self.points[-1])

    @property
    def radius(self):
        return _half(self.points[-1] - self.points[0])

    @property
    def min_gap(self):
        return min(b - a for a, b in zip(self.points, self.points[1:]))

    def normalized(self) -> np.ndarray:
        """Points mapped affinely onto ``[-1, 1]`` as floats."""
        c, r = self.center, self.radius
        return np.array([float((x - c) / r) for x in self.points])


def _half(v):
    if isinstance(v, float):
        return v / 2.0
    return Fraction(v, 2) if isinstance(v, int) else v / 2


def extended_chebyshev(k: int) -> PointSeq:
    """``c_i = -cos((2i-1) phi) / cos(phi)``, ``phi = pi / (2(k+1))``, ``i = 1..k+1``.

    Endpoints are set to exactly ``-1`` and ``1``.
    """
    if k < 1:
        raise DomainError("extended Chebyshev sequences need k >= 1")
    phi = math.pi / (2 * (k + 1))
    pts = [-math.cos((2 * i - 1) * phi) / math.cos(phi) for i in range(1, k + 2)]
    pts[0], pts[-1] = -1.0, 1.0
    # enforce c_i = -c_{k+2-i} bit for bit
    for i in range((k + 1) // 2):
        pts[k - i] = -pts[i]
    if k % 2 == 0:
        pts[k // 2] = 0.0
    return PointSeq(tuple(pts))


def equally_spaced(k: int) -> PointSeq:
    """``k+1`` equally spaced points from ``-1`` to ``1``."""
    if k < 1:
        raise DomainError("k must be >= 1")
    return PointSeq(tuple(-1.0 + 2.0 * i / k for i in range(k + 1)))


def chebyshev_min_gap(k: int) -> float:
    """``c_2 - c_1`` for the unit extended Chebyshev sequence."""
    phi = math.pi / (2 * (k + 1))
    return (math.cos(phi) - math.cos(3 * phi)) / math.cos(phi)


def scale_translate(seq: PointSeq, new_center, new_radius) -> PointSeq:
    """Affine image of ``seq`` with the given centre and radius.

    With an ``int``/``Fraction`` centre the arithmetic is exact (every float
    is a dyadic rational); with a float centre it is plain float arithmetic.
    """
    if not new_radius > 0:
        raise DomainError("radius must be positive")
    c, r = seq.center, seq.radius
    if isinstance(new_center, float) and isinstance(new_radius, float):
        return PointSeq(tuple(new_center + new_radius * float((x - c) / r) for x in seq.points))
    nc, nr = Fraction(new_center), Fraction(new_radius)
    c, r = Fraction(c), Fraction(r)
    return PointSeq(tuple(nc + nr * (Fraction(x) - c) / r for x in seq.points))


def _round_toward(x: Fraction, target: Fraction) -> int:
    lo = math.floor(x)
    frac = x - lo
    if frac > Fraction(1, 2):
        return lo + 1
    if frac < Fraction(1, 2):
        return lo
    return lo if lo >= target else lo + 1


def quantize_centered(seq: PointSeq, n: int, min_gap: float = 3) -> PointSeq:
    """Round a sequence centred at ``n/2`` to integers keeping the centre.

    The top endpoint becomes ``floor(n/2 + R)``, the bottom one its mirror
    ``n - floor(n/2 + R)``; interior points go to the nearest integer, ties
    toward ``n/2``.  The result satisfies ``I(W) <= I(X)`` and ``|w_i - x_i| <= 1``.
    """
    half = Fraction(n, 2)
    pts = [Fraction(x) for x in seq.points]
    center = (pts[0] + pts[-1]) / 2
    if abs(center - half) > Fraction(1, 10**6) * max(1, abs(half)) * Fraction(1, 10**6):
        raise QuantizationError(f"sequence centre {float(center)} is not n/2 = {float(half)}")
    if min_gap is not None and min(b - a for a, b in zip(pts, pts[1:])) < min_gap:
        raise QuantizationError(f"minimum gap below {min_gap}; rounding could merge points")
    radius = (pts[-1] - pts[0]) / 2
    top = math.floor(half + radius)
    out = [n - top] + [_round_toward(x, half) for x in pts[1:-1]] + [top]
    if any(not a < b for a, b in zip(out, out[1:])):
        raise QuantizationError("rounding collided or reordered points")
    return PointSeq(tuple(out))


# ---------------------------------------------------------------- Lebesgue


def _bary_weights(x: np.ndarray) -> np.ndarray:
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    logabs = -np.log(np.abs(diff)).sum(axis=1)
    sign = np.prod(np.sign(diff), axis=1)
    return sign * np.exp(logabs - logabs.max())


def _lebesgue_fn(x: np.ndarray, wts: np.ndarray, pts: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        q = wts[None, :] / (pts[:, None] - x[None, :])
        return np.abs(q).sum(axis=1) / np.abs(q.sum(axis=1))


def lebesgue_function(seq: PointSeq, xs) -> np.ndarray:
    """``sum_i |l_i(x)|`` on the normalised sequence; ``xs`` are in ``[-1, 1]`` coordinates."""
    x = seq.normalized()
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    out = np.ones_like(xs)
    off = np.min(np.abs(xs[:, None] - x[None, :]), axis=1) > 0
    if off.any():
        out[off] = _lebesgue_fn(x, _bary_weights(x), xs[off])
    return out


def lebesgue_maximize(seq: PointSeq, grid_per_gap: int = 64, refine_tol: float = 1e-10):
    """Maximise the Lebesgue function over ``I(seq)``.

    Returns ``(value, argmax, bracket_width)`` with ``argmax`` in normalised
    coordinates and ``bracket_width`` the final golden-section bracket.
    """
    x = seq.normalized()
    if np.any(np.diff(x) <= 0):
        raise DomainError("duplicate points")
    if len(x) == 2:
        return 1.0, -1.0, 0.0
    wts = _bary_weights(x)
    gaps = len(x) - 1
    frac = (np.arange(1, grid_per_gap + 1)) / (grid_per_gap + 1)
    lo_all = np.empty(gaps)
    hi_all = np.empty(gaps)
    chunk = max(1, 2_000_000 // (grid_per_gap * len(x)))
    for s in range(0, gaps, chunk):
        e = min(gaps, s + chunk)
        a, b = x[s:e], x[s + 1:e + 1]
        grid = a[:, None] + (b - a)[:, None] * frac[None, :]
        vals = _lebesgue_fn(x, wts, grid.ravel()).reshape(grid.shape)
        j = vals.argmax(axis=1)
        step = (b - a) / (grid_per_gap + 1)
        best = grid[np.arange(e - s), j]
        lo_all[s:e] = np.maximum(a, best - step)
        hi_all[s:e] = np.minimum(b, best + step)
    lo, hi = lo_all, hi_all
    c = hi - _GOLDEN * (hi - lo)
    d = lo + _GOLDEN * (hi - lo)
    fc = _lebesgue_fn(x, wts, c)
    fd = _lebesgue_fn(x, wts, d)
    while (hi - lo).max() > refine_tol:
        left = fc > fd
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
        nc = np.where(left, hi - _GOLDEN * (hi - lo), d)
        nd = np.where(left, c, lo + _GOLDEN * (hi - lo))
        fnew = _lebesgue_fn(x, wts, np.where(left, nc, nd))
        fc, fd = np.where(left, fnew, fd), np.where(left, fc, fnew)
        c, d = nc, nd
    mid = 0.5 * (lo + hi)
    vals = np.maximum(np.maximum(fc, fd), _lebesgue_fn(x, wts, mid))
    i = int(vals.argmax())
    return float(vals[i]), float(mid[i]), float((hi - lo).max())


def lebesgue_constant(seq: PointSeq, grid_per_gap: int = 64, refine_tol: float = 1e-10) -> float:
    """Lebesgue constant of ``seq`` (affine invariant)."""
    return lebesgue_maximize(seq, grid_per_gap, refine_tol)[0]


def chebyshev_lebesgue_bound(k: int) -> float:
    """``(2/pi) log(k+1) + 0.7213``, the bound for extended Chebyshev sequences."""
    return 2.0 / math.pi * math.log(k + 1) + 0.7213


def equally_spaced_lebesgue_bound(k: int) -> float:
    return 2.0 ** (k + 3) / k


def quantized_lebesgue_bound(k: int) -> float:
    """``(4/pi) log(k+1) + 2``: twice the Chebyshev bound after rounding it up."""
    return 4.0 / math.pi * math.log(k + 1) + 2.0


def outside_bound(seq: PointSeq, max_abs_on_nodes: float, x, lam: Optional[float] = None) -> float:
    """Bound ``|p(x)|`` for ``x`` outside ``I(seq)`` and ``deg p <= k``.

    ``||p||_X * Lambda(X) * |2 (x - C(X)) / R(X)|^k``.
    """
    lo, hi = seq.interval
    if lo <= x <= hi:
        raise DomainError("x lies inside the sequence interval")
    if max_abs_on_nodes == 0:
        return 0.0
    if lam is None:
        lam = lebesgue_constant(seq)
    factor = abs(2 * float((x - seq.center) / seq.radius))
    return float(max_abs_on_nodes) * lam * factor**seq.k


def distortion_bound(lambda_X: float, k: int, gamma: float) -> float:
    """``Lambda(X) / (1 - gamma k^2 Lambda(X))`` for perturbations of size ``gamma R(X)``."""
    q = gamma * k * k * lambda_X
    if q >= 1:
        raise DistortionError(f"gamma*k^2*Lambda = {q} >= 1")
    return lambda_X / (1.0 - q)


# ------------------------------------------------------------------- I/O

_HEADER = re.compile(r"^#\s*n=(\d+)\s+k=(\d+)\s*$")


def format_nodes(seq: PointSeq, n: int) -> str:
    lines = [f"# n={n} k={seq.k}"]
    for x in seq.points:
        lines.append(str(x) if not isinstance(x, float) else repr(x))
    return "\n".join(lines) + "\n"


def write_nodes(path: str | os.PathLike, seq: PointSeq, n: int) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_nodes(seq, n))


def parse_nodes(lines: Iterable[str]) -> tuple[PointSeq, int, int]:
    """Parse the ``# n=<n> k=<k>`` node format; returns ``(seq, n, k)``."""
    header = None
    pts = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise NodeFileError("expected header '# n=<n> k=<k>'", lineno)
            header = int(m.group(1)), int(m.group(2))
            continue
        try:
            pts.append(_parse_point(line))
        except ValueError:
            raise NodeFileError(f"cannot parse point {line!r}", lineno) from None
        if len(pts) > 1 and not pts[-2] < pts[-1]:
            raise NodeFileError("points must be strictly increasing", lineno)
    if header is None:
        raise NodeFileError("empty node file", 1)
    n, k = header
    if len(pts) != k + 1:
        raise NodeFileError(f"header says k={k} but found {len(pts)} points", len(pts) + 1)
    return PointSeq(tuple(pts)), n, k


def _parse_point(text: str):
    if re.fullmatch(r"[+-]?\d+", text):
        return int(text)
    if re.fullmatch(r"[+-]?\d+/\d+", text):
        return Fraction(text)
    return float(text)


def read_nodes(path: str | os.PathLike) -> tuple[PointSeq, int, int]:
    with open(path, encoding="utf-8") as fh:
        return parse_nodes(fh)
