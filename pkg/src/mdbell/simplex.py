"""Exact rational simplex solver for small dense linear programs.

Solves  maximize c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0
with every coefficient a :class:`fractions.Fraction`, returning the exact
optimum.  The tableau is kept as integer rows (each row rescaled by the
gcd of its entries after a pivot), which is substantially faster than
Fraction arithmetic and just as exact.

Pivoting uses the largest-reduced-cost rule, falling back to Bland's
least-index anti-cycling rule whenever a run of degenerate pivots is
detected and staying there until the objective strictly improves, which
guarantees termination.  Two phases: artificial variables are introduced
only where a slack cannot serve as the initial basis.

This is deliberately a small, dense solver: the tightness checks it
serves have ~130 variables and ~70 rows.  No sparse storage, presolve,
or dual methods.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

_DEGENERATE_STREAK = 16
_MAX_PIVOTS = 100_000


class SimplexError(RuntimeError):
    """Internal failure (pivot limit); indicates a bug, not bad input."""


@dataclass(frozen=True)
class LinearProgram:
    """maximize objective . x  s.t.  a_ub x <= b_ub, a_eq x = b_eq, x >= 0."""

    objective: tuple[Fraction, ...]
    a_ub: tuple[tuple[Fraction, ...], ...] = ()
    b_ub: tuple[Fraction, ...] = ()
    a_eq: tuple[tuple[Fraction, ...], ...] = ()
    b_eq: tuple[Fraction, ...] = ()

    def __post_init__(self):
        n = len(self.objective)
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        object.__setattr__(
            self, "a_ub", tuple(tuple(Fraction(a) for a in row) for row in self.a_ub)
        )
        object.__setattr__(self, "b_ub", tuple(Fraction(b) for b in self.b_ub))
        object.__setattr__(
            self, "a_eq", tuple(tuple(Fraction(a) for a in row) for row in self.a_eq)
        )
        object.__setattr__(self, "b_eq", tuple(Fraction(b) for b in self.b_eq))
        if len(self.a_ub) != len(self.b_ub) or len(self.a_eq) != len(self.b_eq):
            raise ValueError("constraint matrix / rhs length mismatch")
        for row in (*self.a_ub, *self.a_eq):
            if len(row) != n:
                raise ValueError(f"constraint row has {len(row)} coefficients, expected {n}")

    @property
    def num_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    objective_value: Optional[Fraction] = None
    x: Optional[tuple[Fraction, ...]] = None

    @property
    def is_optimal(self) -> bool:
        return self.status == "optimal"


def _int_rows(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Clear denominators: each (row, b) scaled to integers by its lcm."""
    out = []
    for row, b in zip(rows, rhs):
        denoms = [c.denominator for c in row] + [b.denominator]
        scale = math.lcm(*denoms)
        out.append(([int(c * scale) for c in row], int(b * scale)))
    return out


def _reduce_row(coeffs: list[int], b: int) -> tuple[list[int], int]:
    g = math.gcd(b, *coeffs) if coeffs else abs(b)
    if g > 1:
        coeffs = [c // g for c in coeffs]
        b //= g
    return coeffs, b


class _Tableau:
    """Integer-row simplex tableau.

    Row i represents an equality  sum_j A[i][j] x_j = b[i]  with b[i] >= 0,
    scaled by an arbitrary positive integer.  ``basis[i]`` is the column
    basic in row i (its entry is the only nonzero one in that column and
    is positive).  ``zrow`` holds reduced costs scaled by a common
    positive integer, so sign tests and argmax are meaningful.
    """

    def __init__(self, rows: list[list[int]], rhs: list[int], basis: list[int], ncols: int):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols
        self.zrow: list[int] = [0] * ncols
        self.barred: set[int] = set()
        self._bland = False
        self._degen = 0

    def set_objective(self, coeffs: list[int]) -> None:
        """Install an integer objective row and eliminate basic columns."""
        self.zrow = list(coeffs)
        for i, j in enumerate(self.basis):
            self._eliminate_from_zrow(i, j)
        self._bland = False
        self._degen = 0

    def _eliminate_from_zrow(self, i: int, j: int) -> None:
        f = self.zrow[j]
        if f == 0:
            return
        piv = self.rows[i][j]  # positive by construction
        row = self.rows[i]
        self.zrow = [piv * z - f * a for z, a in zip(self.zrow, row)]
        g = math.gcd(*self.zrow)
        if g > 1:
            self.zrow = [z // g for z in self.zrow]

    def _pivot(self, r: int, c: int) -> None:
        rows, rhs = self.rows, self.rhs
        if rows[r][c] < 0:
            # Only reachable when driving out a zero-level basic variable.
            rows[r] = [-a for a in rows[r]]
            rhs[r] = -rhs[r]
        prow, pb = rows[r], rhs[r]
        piv = prow[c]
        for i in range(len(rows)):
            if i == r:
                continue
            f = rows[i][c]
            if f == 0:
                continue
            new = [piv * a - f * p for a, p in zip(rows[i], prow)]
            newb = piv * rhs[i] - f * pb
            new, newb = _reduce_row(new, newb)
            rows[i], rhs[i] = new, newb
        self._eliminate_from_zrow(r, c)
        self.basis[r] = c
        rows[r], rhs[r] = _reduce_row(prow, pb)

    def _entering(self) -> Optional[int]:
        z = self.zrow
        if self._bland:
            for j in range(self.ncols):
                if z[j] > 0 and j not in self.barred:
                    return j
            return None
        best, best_j = 0, None
        for j in range(self.ncols):
            if z[j] > best and j not in self.barred:
                best, best_j = z[j], j
        return best_j

    def _leaving(self, c: int) -> Optional[int]:
        best_r = None
        best_num = best_den = 0  # ratio = num/den, den > 0
        for i, row in enumerate(self.rows):
            a = row[c]
            if a <= 0:
                continue
            num, den = self.rhs[i], a
            if best_r is None or num * best_den < best_num * den or (
                num * best_den == best_num * den and self.basis[i] < self.basis[best_r]
            ):
                best_r, best_num, best_den = i, num, den
        return best_r

    def run(self) -> str:
        """Iterate to optimality; returns "optimal" or "unbounded"."""
        for _ in range(_MAX_PIVOTS):
            c = self._entering()
            if c is None:
                return "optimal"
            r = self._leaving(c)
            if r is None:
                return "unbounded"
            degenerate = self.rhs[r] == 0
            self._pivot(r, c)
            if degenerate:
                self._degen += 1
                if self._degen >= _DEGENERATE_STREAK:
                    self._bland = True
            else:
                self._degen = 0
                self._bland = False
        raise SimplexError("pivot limit exceeded")

    def basic_solution(self, nvars: int) -> list[Fraction]:
        x = [Fraction(0)] * nvars
        for i, j in enumerate(self.basis):
            if j < nvars:
                x[j] = Fraction(self.rhs[i], self.rows[i][j])
        return x

    def value_of(self, col: int) -> Fraction:
        for i, j in enumerate(self.basis):
            if j == col:
                return Fraction(self.rhs[i], self.rows[i][j])
        return Fraction(0)


def lp_solve(lp: LinearProgram) -> LpSolution:
    """Solve the program exactly; statuses: optimal, infeasible, unbounded."""
    n = lp.num_vars
    ub = _int_rows(lp.a_ub, lp.b_ub)
    eq = _int_rows(lp.a_eq, lp.b_eq)
    n_ub = len(ub)

    ncols = n + n_ub  # artificial columns appended below
    rows: list[list[int]] = []
    rhs: list[int] = []
    basis_plan: list[Optional[int]] = []  # column basic in the row, None => needs artificial

    for k, (coeffs, b) in enumerate(ub):
        row = coeffs + [0] * n_ub
        slack_col = n + k
        row[slack_col] = 1
        if b < 0:
            row = [-a for a in row]
            b = -b
            basis_plan.append(None)  # slack coefficient now -1
        else:
            basis_plan.append(slack_col)
        rows.append(row)
        rhs.append(b)
    for coeffs, b in eq:
        row = coeffs + [0] * n_ub
        if b < 0:
            row = [-a for a in row]
            b = -b
        rows.append(row)
        rhs.append(b)
        basis_plan.append(None)

    art_cols: list[int] = []
    basis: list[int] = []
    for i, planned in enumerate(basis_plan):
        if planned is not None:
            basis.append(planned)
            continue
        col = ncols + len(art_cols)
        art_cols.append(col)
        basis.append(col)
    total_cols = ncols + len(art_cols)
    for i in range(len(rows)):
        rows[i] = rows[i] + [0] * len(art_cols)
    for i, planned in enumerate(basis_plan):
        if planned is None:
            rows[i][basis[i]] = 1

    tab = _Tableau(rows, rhs, basis, total_cols)

    if art_cols:
        phase1 = [0] * total_cols
        for col in art_cols:
            phase1[col] = -1
        tab.set_objective(phase1)
        tab.barred = set()
        status = tab.run()
        if status != "optimal":  # pragma: no cover - phase 1 is always bounded
            raise SimplexError("phase 1 terminated " + status)
        if any(tab.value_of(col) != 0 for col in art_cols):
            return LpSolution(status="infeasible")
        art_set = set(art_cols)
        for i in range(len(tab.rows)):
            if tab.basis[i] in art_set:
                pivot_col = next(
                    (j for j in range(ncols) if tab.rows[i][j] != 0), None
                )
                if pivot_col is not None:
                    tab._pivot(i, pivot_col)
        # Rows still basic in an artificial are redundant (all-zero elsewhere).
        keep = [i for i in range(len(tab.rows)) if tab.basis[i] not in art_set]
        tab.rows = [tab.rows[i] for i in keep]
        tab.rhs = [tab.rhs[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]
        tab.barred = art_set

    scale = math.lcm(*[c.denominator for c in lp.objective]) if lp.objective else 1
    phase2 = [int(c * scale) for c in lp.objective] + [0] * (total_cols - n)
    tab.set_objective(phase2)
    status = tab.run()
    if status == "unbounded":
        return LpSolution(status="unbounded")

    x = tab.basic_solution(n)
    value = sum((c * xi for c, xi in zip(lp.objective, x)), Fraction(0))
    return LpSolution(status="optimal", objective_value=value, x=tuple(x))
