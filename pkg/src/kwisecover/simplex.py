"""Two-phase tableau simplex over exact rationals with Bland's rule.

The solver mirrors the calling convention of ``scipy.optimize.linprog``
(minimise ``c @ x`` subject to ``A_ub x <= b_ub``, ``A_eq x == b_eq``,
``x >= 0`` except for the indices listed in ``free``) but never rounds.
Internally it uses ``gmpy2.mpq`` for speed; every number handed back is a
:class:`fractions.Fraction`.

Besides the primal point it returns the optimal dual vector and, for
infeasible problems, a Farkas certificate taken from the phase-1 duals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from gmpy2 import mpq

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = mpq(0)
_ONE = mpq(1)


def _q(v) -> mpq:
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    if isinstance(v, float):
        return mpq(*v.as_integer_ratio())
    return mpq(v)


def _f(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


@dataclass
class LPResult:
    status: str
    x: Optional[list] = None
    objective: Optional[Fraction] = None
    #: optimal duals, sign convention ``c - A^T y >= 0`` on non-negative columns
    y_ub: Optional[list] = None
    y_eq: Optional[list] = None
    #: for infeasible problems: y_ub <= 0, A^T y <= 0 (== 0 on free columns), b^T y > 0
    farkas_ub: Optional[list] = None
    farkas_eq: Optional[list] = None
    pivots: int = 0


@dataclass
class _Tableau:
    rows: list  # each row: list of mpq, last entry is rhs
    basis: list
    ncols: int
    pivots: int = field(default=0)

    def pivot(self, r: int, j: int, objs: list) -> None:
        row = self.rows[r]
        piv = row[j]
        if piv != _ONE:
            inv = _ONE / piv
            row = [v * inv if v else v for v in row]
            self.rows[r] = row
        nz = [idx for idx, v in enumerate(row) if v]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[j]
            if f:
                for idx in nz:
                    other[idx] -= f * row[idx]
        for obj in objs:
            f = obj[j]
            if f:
                for idx in nz:
                    obj[idx] -= f * row[idx]
        self.basis[r] = j
        self.pivots += 1


def _run(tab: _Tableau, obj: list, allowed: Sequence[bool], extra_objs: list) -> str:
    """Minimise with reduced-cost row ``obj`` (``obj[-1]`` holds ``-z``)."""
    while True:
        enter = -1
        for j in range(tab.ncols):
            if allowed[j] and obj[j] < 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        best = None
        leave = -1
        for i, row in enumerate(tab.rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and tab.basis[i] < tab.basis[leave]):
                    best, leave = ratio, i
        if leave < 0:
            return UNBOUNDED
        tab.pivot(leave, enter, [obj] + extra_objs)


def linprog_exact(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, free=()) -> LPResult:
    """Solve ``min c @ x`` exactly.  See the module docstring for the form."""
    nvar = len(c)
    A_ub = [list(r) for r in (A_ub or [])]
    b_ub = list(b_ub or [])
    A_eq = [list(r) for r in (A_eq or [])]
    b_eq = list(b_eq or [])
    if len(A_ub) != len(b_ub) or len(A_eq) != len(b_eq):
        raise ValueError("constraint matrix and right-hand side lengths differ")
    free = sorted(set(free))
    m_ub, m_eq = len(A_ub), len(A_eq)
    m = m_ub + m_eq

    # column layout: original vars | negated copies of free vars | slacks | artificials
    neg_of = {v: nvar + i for i, v in enumerate(free)}
    n_struct = nvar + len(free)
    slack0 = n_struct
    art0 = slack0 + m_ub

    rows: list = []
    signs: list = []
    for i in range(m):
        src = A_ub[i] if i < m_ub else A_eq[i - m_ub]
        rhs = _q(b_ub[i] if i < m_ub else b_eq[i - m_ub])
        coeffs = [_q(v) for v in src]
        sign = -1 if rhs < 0 else 1
        signs.append(sign)
        row = [_ZERO] * (art0 + m + 1)
        for j, v in enumerate(coeffs):
            if v:
                row[j] = sign * v
                if j in neg_of:
                    row[neg_of[j]] = -sign * v
        if i < m_ub:
            row[slack0 + i] = _q(sign)
        row[-1] = sign * rhs
        rows.append(row)

    ncols = art0 + m
    basis = []
    used_art = [False] * m
    for i in range(m):
        if i < m_ub and signs[i] > 0:
            basis.append(slack0 + i)
        else:
            rows[i][art0 + i] = _ONE
            basis.append(art0 + i)
            used_art[i] = True
    tab = _Tableau(rows, basis, ncols)

    cost = [_q(v) for v in c] + [-_q(c[v]) for v in free] + [_ZERO] * (m_ub + m)
    cost_rhs = [_ZERO]

    # phase 1: minimise sum of artificials
    p1_cost = [_ZERO] * ncols
    for i in range(m):
        if used_art[i]:
            p1_cost[art0 + i] = _ONE
    p1 = p1_cost + [_ZERO]
    for i, b in enumerate(basis):
        if p1_cost[b]:
            for j, v in enumerate(rows[i]):
                if v:
                    p1[j] -= v
    obj2 = cost + cost_rhs
    allowed = [True] * ncols
    for i in range(m):
        if not used_art[i]:
            allowed[art0 + i] = False
    _run(tab, p1, allowed, [obj2])
    phase1_value = -p1[-1]

    def duals(obj, costs):
        y = []
        for i in range(m):
            col = slack0 + i if (i < m_ub and not used_art[i]) else art0 + i
            y.append((costs[col] - obj[col]) * signs[i])
        return y

    if phase1_value > 0:
        fy = duals(p1, p1_cost)
        return LPResult(
            INFEASIBLE,
            farkas_ub=[_f(v) for v in fy[:m_ub]],
            farkas_eq=[_f(v) for v in fy[m_ub:]],
            pivots=tab.pivots,
        )

    # drive remaining artificials out of the basis where possible
    for i, b in enumerate(list(tab.basis)):
        if b >= art0:
            for j in range(art0):
                if tab.rows[i][j]:
                    tab.pivot(i, j, [obj2, p1])
                    break
    allowed = [j < art0 for j in range(ncols)]
    status = _run(tab, obj2, allowed, [])
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, pivots=tab.pivots)

    vals = [_ZERO] * ncols
    for i, b in enumerate(tab.basis):
        vals[b] = tab.rows[i][-1]
    x = [vals[j] - (vals[neg_of[j]] if j in neg_of else _ZERO) for j in range(nvar)]
    y = duals(obj2, cost)
    return LPResult(
        OPTIMAL,
        x=[_f(v) for v in x],
        objective=_f(-obj2[-1]),
        y_ub=[_f(v) for v in y[:m_ub]],
        y_eq=[_f(v) for v in y[m_ub:]],
        pivots=tab.pivots,
    )


def check_farkas(res: LPResult, A_ub=None, b_ub=None, A_eq=None, b_eq=None, free=(), nvar=None) -> bool:
    """Verify an infeasibility certificate exactly."""
    A_ub = A_ub or []
    A_eq = A_eq or []
    yu = res.farkas_ub or []
    ye = res.farkas_eq or []
    if any(v > 0 for v in yu):
        return False
    nvar = nvar if nvar is not None else len((A_ub or A_eq)[0])
    for j in range(nvar):
        col = sum(yu[i] * Fraction(A_ub[i][j]) for i in range(len(A_ub)))
        col += sum(ye[i] * Fraction(A_eq[i][j]) for i in range(len(A_eq)))
        if j in free and col != 0:
            return False
        if col > 0:
            return False
    rhs = sum(yu[i] * Fraction(b_ub[i]) for i in range(len(A_ub)))
    rhs += sum(ye[i] * Fraction(b_eq[i]) for i in range(len(A_eq)))
    return rhs > 0
