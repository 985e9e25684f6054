"""CHSH correlations and measurement-dependence measures of a model.

The dependence of the hidden variable on the settings is quantified by
variational distances between the conditional distributions
p(lambda | u, v) as the settings change on one side:

  M1[v]   = sum_i |p(lambda_i | x, v) - p(lambda_i | x', v)|   for v in {y, y'}
  M2[u]   = sum_i |p(lambda_i | u, y) - p(lambda_i | u, y')|   for u in {x, x'}
  M1      = max_v M1[v]        Mhat1 = min_v M1[v]
  M2      = max_u M2[u]        Mhat2 = min_u M2[u]
  M       = max{M1, M2, d(xy, x'y'), d(xy', x'y)}

and the retained freedom of choice is F = 1 - M/2 (likewise F1, F2).

All functions are pure; exact-rational models yield exact results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .model import (
    ALICE_SETTINGS,
    BOB_SETTINGS,
    HiddenVariableModel,
    Num,
    is_exact,
    require_valid,
)

#: Tolerance used when comparing float-valued measures.
FLOAT_TOL = 1e-12


def _half(value: Num) -> Num:
    if isinstance(value, Fraction):
        return value / 2
    if isinstance(value, int):
        return Fraction(value, 2)
    return value / 2.0


def variational_distance(p: Sequence[Num], q: Sequence[Num]) -> Num:
    """Trace distance sum_i |p_i - q_i| between two distributions."""
    if len(p) != len(q):
        raise ValueError(f"length mismatch: {len(p)} vs {len(q)}")
    return sum(abs(a - b) for a, b in zip(p, q))


def distinguish_probability(distance: Num) -> Num:
    """Success probability of identifying which of two distributions a
    sample came from, given their variational distance."""
    if distance < 0 or distance > 2:
        raise ValueError(f"variational distance {distance!r} outside [0, 2]")
    if is_exact(distance):
        return Fraction(1, 2) * (1 + distance / 2)
    return 0.5 * (1.0 + distance / 2.0)


def correlation(model: HiddenVariableModel, u: str, v: str) -> Num:
    """<ab>_{uv} = sum_i p(lambda_i | u, v) A(u, lambda_i) B(v, lambda_i)."""
    require_valid(model)
    col = model.cond.column(u, v)
    alice = model.outcomes.alice[u]
    bob = model.outcomes.bob[v]
    return sum(p * a * b for p, a, b in zip(col, alice, bob))


def chsh_s(model: HiddenVariableModel) -> Num:
    """CHSH parameter |<ab>_xy + <ab>_xy' + <ab>_x'y - <ab>_x'y'|."""
    require_valid(model)
    total = (
        correlation(model, "x", "y")
        + correlation(model, "x", "y'")
        + correlation(model, "x'", "y")
        - correlation(model, "x'", "y'")
    )
    return abs(total)


@dataclass(frozen=True)
class DependenceReport:
    """All measurement-dependence measures of one model."""

    m1: Num
    m2: Num
    m: Num
    mhat1: Num
    mhat2: Num
    m1_given: Mapping[str, Num]  # keyed by Bob's setting v
    m2_given: Mapping[str, Num]  # keyed by Alice's setting u
    f: Num
    f1: Num
    f2: Num

    def __post_init__(self):
        object.__setattr__(self, "m1_given", dict(self.m1_given))
        object.__setattr__(self, "m2_given", dict(self.m2_given))

    @property
    def is_exact(self) -> bool:
        return is_exact(self.m1) and is_exact(self.m2) and is_exact(self.m)


def measurement_dependence(model: HiddenVariableModel) -> DependenceReport:
    """Compute the full dependence report of a valid model.

    Both candidate distances behind each max/min are computed once and
    reported individually (m1_given / m2_given), so the max convention
    (M1, M2) and the min convention (Mhat1, Mhat2) come from one pass.
    """
    require_valid(model)
    col = model.cond.column

    m1_given = {
        v: variational_distance(col("x", v), col("x'", v)) for v in BOB_SETTINGS
    }
    m2_given = {
        u: variational_distance(col(u, "y"), col(u, "y'")) for u in ALICE_SETTINGS
    }
    m1 = max(m1_given.values())
    mhat1 = min(m1_given.values())
    m2 = max(m2_given.values())
    mhat2 = min(m2_given.values())
    cross1 = variational_distance(col("x", "y"), col("x'", "y'"))
    cross2 = variational_distance(col("x", "y'"), col("x'", "y"))
    m = max(m1, m2, cross1, cross2)

    one = Fraction(1) if is_exact(m) else 1.0
    return DependenceReport(
        m1=m1,
        m2=m2,
        m=m,
        mhat1=mhat1,
        mhat2=mhat2,
        m1_given=m1_given,
        m2_given=m2_given,
        f=one - _half(m),
        f1=one - _half(m1),
        f2=one - _half(m2),
    )
