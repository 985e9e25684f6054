"""Closed-form relaxed CHSH bounds and parameter feasibility.

With measurement dependence (M1, M2) for the two observers, local
causality allows

    S <= 2 + V_G(M1, M2),   V_G = min{M1 + M2 + min(M1, M2), 2}.

The symmetric special case M1 = M2 = M gives 2 + min{3M, 2}; the
one-sided case M2 = 0 gives 2 + M1.  Knowing additionally the minimum
per-observer dependence (Mhat1, Mhat2) tightens this to

    S <= 2 + min{Mhat1 + Mhat2 + min(M1, M2), 2},

valid on the parameter region

    0 <= Mhat1 <= M1 <= 2,  0 <= Mhat2 <= M2 <= 2,
    M1 - Mhat1 <= M2 + Mhat2,  M2 - Mhat2 <= M1 + Mhat1.

Out-of-range parameters are rejected, never clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .measures import FLOAT_TOL, DependenceReport
from .model import Num, NumLike, as_number, is_exact

#: Violation of the CHSH inequality at the quantum (Tsirelson) maximum S = 2*sqrt(2).
TSIRELSON_VIOLATION = 2.0 * (math.sqrt(2.0) - 1.0)
TSIRELSON_S = 2.0 * math.sqrt(2.0)


class InfeasibleParamsError(ValueError):
    """Raised when requested dependence parameters violate their allowed range."""

    def __init__(self, violations: tuple[str, ...]):
        self.violations = violations
        super().__init__("infeasible parameters: " + "; ".join(violations))


def _check_range(value: Num, name: str) -> Num:
    if value < 0 or value > 2:
        raise ValueError(f"{name} = {value!r} outside [0, 2]")
    return value


@dataclass(frozen=True)
class ModelParams:
    """Requested dependence parameters (M1, M2) with optional (Mhat1, Mhat2).

    Absent hat parameters are treated as equal to the corresponding M,
    which reduces the four-parameter description to the two-parameter one.
    """

    m1: Num
    m2: Num
    mhat1: Optional[Num] = None
    mhat2: Optional[Num] = None

    @classmethod
    def make(
        cls,
        m1: NumLike,
        m2: NumLike,
        mhat1: Optional[NumLike] = None,
        mhat2: Optional[NumLike] = None,
    ) -> "ModelParams":
        return cls(
            as_number(m1),
            as_number(m2),
            None if mhat1 is None else as_number(mhat1),
            None if mhat2 is None else as_number(mhat2),
        )

    @property
    def hat1(self) -> Num:
        return self.m1 if self.mhat1 is None else self.mhat1

    @property
    def hat2(self) -> Num:
        return self.m2 if self.mhat2 is None else self.mhat2

    @property
    def is_exact(self) -> bool:
        return all(is_exact(x) for x in (self.m1, self.m2, self.hat1, self.hat2))

    def swapped(self) -> "ModelParams":
        return ModelParams(self.m2, self.m1, self.mhat2, self.mhat1)


@dataclass(frozen=True)
class FeasibilityCheck:
    feasible: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.feasible


def check_param_feasible(params: ModelParams) -> FeasibilityCheck:
    """Verify the allowed parameter range, naming each violated constraint."""
    m1, m2, h1, h2 = params.m1, params.m2, params.hat1, params.hat2
    bad: list[str] = []
    for name, value in (("m1", m1), ("m2", m2), ("mhat1", h1), ("mhat2", h2)):
        if value < 0 or value > 2:
            bad.append(f"{name} = {value} outside [0, 2]")
    if h1 > m1:
        bad.append(f"mhat1 <= m1 violated ({h1} > {m1})")
    if h2 > m2:
        bad.append(f"mhat2 <= m2 violated ({h2} > {m2})")
    if m1 - h1 > m2 + h2:
        bad.append(f"m1 - mhat1 <= m2 + mhat2 violated ({m1 - h1} > {m2 + h2})")
    if m2 - h2 > m1 + h1:
        bad.append(f"m2 - mhat2 <= m1 + mhat1 violated ({m2 - h2} > {m1 + h1})")
    return FeasibilityCheck(not bad, tuple(bad))


def require_feasible(params: ModelParams) -> None:
    check = check_param_feasible(params)
    if not check.feasible:
        raise InfeasibleParamsError(check.violations)


def v_g(m1: NumLike, m2: NumLike) -> Num:
    """Maximum CHSH violation allowed by dependence (M1, M2):
    min{M1 + M2 + min(M1, M2), 2}."""
    m1 = _check_range(as_number(m1), "m1")
    m2 = _check_range(as_number(m2), "m2")
    return min(m1 + m2 + min(m1, m2), 2)


def bound_two_param(m1: NumLike, m2: NumLike) -> Num:
    """Two-parameter relaxed CHSH bound 2 + V_G(M1, M2)."""
    return 2 + v_g(m1, m2)


def bound_hall(m: NumLike) -> Num:
    """Symmetric-dependence bound 2 + min{3M, 2} (equals bound_two_param(M, M))."""
    m = _check_range(as_number(m), "m")
    return 2 + min(3 * m, 2)


def bound_banik(m1: NumLike) -> Num:
    """One-sided bound 2 + M1 for M2 = 0 (equals bound_two_param(M1, 0))."""
    m1 = _check_range(as_number(m1), "m1")
    return 2 + m1


def bound_four_param(params: ModelParams) -> Num:
    """Four-parameter relaxed CHSH bound 2 + min{Mhat1 + Mhat2 + min(M1, M2), 2}.

    Requires feasible parameters; with Mhat_i = M_i this equals
    bound_two_param(M1, M2).
    """
    require_feasible(params)
    return 2 + min(params.hat1 + params.hat2 + min(params.m1, params.m2), 2)


def _leq(a: Num, b: Num) -> bool:
    if is_exact(a) and is_exact(b):
        return a <= b
    return a <= b + FLOAT_TOL


def check_inequality_chain(report: DependenceReport) -> bool:
    """max{M1, M2} <= M <= min{M1 + M2, 2} for a measured model."""
    lower = max(report.m1, report.m2)
    upper = min(report.m1 + report.m2, 2)
    return _leq(lower, report.m) and _leq(report.m, upper)
