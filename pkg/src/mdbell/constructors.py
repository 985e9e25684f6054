"""Constructions of locally causal models that saturate the relaxed bounds.

Three families are provided, each returning a :class:`HiddenVariableModel`
whose measured dependence equals the requested parameters and whose CHSH
parameter meets the corresponding bound:

* ``two_param_model(M1, M2)``: four hidden-variable values, saturates the
  two-parameter bound, minimal mutual information in its class.
* ``four_param_model(params)``: four hidden-variable values with
  independently prescribed (M1, M2, Mhat1, Mhat2), saturating the
  four-parameter bound.
* ``interp_model(M1, M2)``: five hidden-variable values; a distinct
  two-parameter construction that linearly interpolates between the
  symmetric (``hall_model``) and one-sided (``banik_model``) special
  cases on the low-violation region and extends them elsewhere.

Every constructor builds the canonical table for M1 >= M2 and obtains the
opposite ordering by exchanging the parties, so each table has a single
source of truth.  Rational parameters yield exact-rational tables.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

from .bounds import ModelParams, require_feasible
from .model import (
    ConditionalTable,
    HiddenVariableModel,
    Num,
    NumLike,
    OutcomeTable,
    SettingsDistribution,
    as_number,
    is_exact,
    swap_parties,
)

TWO_THIRDS = Fraction(2, 3)

# Outcome signs for the 4-value models, sign constants all +1.
_OUTCOMES_4 = OutcomeTable(
    alice={"x": (1, 1, 1, 1), "x'": (1, -1, 1, -1)},
    bob={"y": (1, 1, 1, -1), "y'": (1, 1, -1, 1)},
)

# Outcome signs for the 5-value interpolating model, sign constants all +1.
_OUTCOMES_5 = OutcomeTable(
    alice={"x": (1, 1, 1, 1, 1), "x'": (1, -1, 1, -1, 1)},
    bob={"y": (1, 1, 1, -1, 1), "y'": (1, 1, -1, 1, 1)},
)


def _coerce_pair(a: NumLike, b: NumLike) -> tuple[Num, Num]:
    """Coerce two parameters to a homogeneous numeric type."""
    a = as_number(a)
    b = as_number(b)
    if is_exact(a) != is_exact(b):
        a, b = float(a), float(b)
    return a, b


def _check_range(value: Num, name: str) -> None:
    if value < 0 or value > 2:
        raise ValueError(f"{name} = {value!r} outside [0, 2]")


def _fmt(value: Num) -> str:
    return str(value)


def _rows_to_columns(rows) -> ConditionalTable:
    """Rows are per-lambda tuples ordered (x,y), (x,y'), (x',y), (x',y')."""
    cols = list(zip(*rows))
    return ConditionalTable(
        {
            ("x", "y"): cols[0],
            ("x", "y'"): cols[1],
            ("x'", "y"): cols[2],
            ("x'", "y'"): cols[3],
        }
    )


def two_param_model(m1: NumLike, m2: NumLike) -> HiddenVariableModel:
    """Four-value saturating model for dependence (M1, M2).

    Coefficients: p1 = M1/2, p2 = M2/2, and p3 = 0 when M1 + 2 M2 <= 2,
    else (M1 + 2 M2 - 2)/4, which caps the CHSH parameter at 4.
    """
    m1, m2 = _coerce_pair(m1, m2)
    _check_range(m1, "m1")
    _check_range(m2, "m2")
    if m2 > m1:
        return swap_parties(two_param_model(m2, m1))

    p1 = m1 / 2
    p2 = m2 / 2
    zero = p1 * 0
    p3 = zero if m1 + 2 * m2 <= 2 else (m1 + 2 * m2 - 2) / 4

    hi_p = (1 + p1 + 2 * p3) / 4
    hi_m = (1 + p1 - 2 * p3) / 4
    lo_p = (1 - p1 + 2 * (p2 - p3)) / 4
    lo_m = (1 - p1 - 2 * (p2 - p3)) / 4
    rows = (
        (hi_p, hi_m, lo_p, lo_m),
        (hi_m, hi_p, lo_m, lo_p),
        (lo_p, lo_m, hi_p, hi_m),
        (lo_m, lo_p, hi_m, hi_p),
    )
    return HiddenVariableModel(
        outcomes=_OUTCOMES_4,
        cond=_rows_to_columns(rows),
        settings=SettingsDistribution.uniform(),
        label=f"two-param(m1={_fmt(m1)}, m2={_fmt(m2)})",
    )


def four_param_model(params: ModelParams) -> HiddenVariableModel:
    """Four-value saturating model for prescribed (M1, M2, Mhat1, Mhat2).

    The base table covers M2 + Mhat1 + Mhat2 <= 2; past that threshold a
    correction parameterized by (q3, q4) zeroes the anti-diagonal so the
    CHSH parameter reaches 4.  Both pieces are continuous at the threshold.
    """
    require_feasible(params)
    if params.m2 > params.m1:
        return swap_parties(four_param_model(params.swapped()))

    m1, m2, h1, h2 = params.m1, params.m2, params.hat1, params.hat2
    if not params.is_exact:
        m1, m2, h1, h2 = float(m1), float(m2), float(h1), float(h2)

    q1 = (2 - m2 - h1 - h2) / 8
    q2 = min(m1 - h1, m2)
    rows = [
        [q1 + (m2 + h1 + q2) / 4, q1 + (m2 + h1 - q2) / 4, q1 + (-m1 + h1 + h2 + q2) / 2, q1],
        [q1 + (-m2 + h1 + 2 * h2 + q2) / 4, q1 + (-m2 + h1 + 2 * h2 + q2) / 4, q1, q1 + h2 / 2],
        [q1 + (m2 - q2) / 2, q1, q1 + (2 * m1 + m2 - h1 - 3 * q2) / 4, q1 + (m2 + h1 - q2) / 4],
        [q1, q1 + m2 / 2, q1 + (m2 + h1 + q2) / 4, q1 + (m2 + h1 + q2) / 4],
    ]

    if m2 + h1 + h2 > 2:
        q3 = (m2 + h1 + h2 - 2) / 8
        q4 = (-2 - h1 - h2 + min(m1 + h2, 2) + max(m2 + h1, 2) - q2) / 4
        deltas = (
            (q3, -q3 - q4, -q3 + q4, q3),
            (-q3 + q4, q3 + 2 * q4, q3, -q3 + q4),
            (-q3 - q4, q3, q3 - 2 * q4, -q3 - q4),
            (q3, -q3 - q4, -q3 + q4, q3),
        )
        rows = [
            [entry + d for entry, d in zip(row, drow)] for row, drow in zip(rows, deltas)
        ]

    label = (
        f"four-param(m1={_fmt(m1)}, m2={_fmt(m2)}, "
        f"mhat1={_fmt(h1)}, mhat2={_fmt(h2)})"
    )
    return HiddenVariableModel(
        outcomes=_OUTCOMES_4,
        cond=_rows_to_columns(rows),
        settings=SettingsDistribution.uniform(),
        label=label,
    )


def _interp_region(m1: Num, m2: Num) -> str:
    """Region dispatch for M1 >= M2; boundaries resolve in this precedence."""
    if m1 + 2 * m2 <= 2:
        return "yellow"
    two_thirds = TWO_THIRDS if is_exact(m2) else 2.0 / 3.0
    if m2 <= two_thirds:
        return "red"
    return "blue"


def interp_model(m1: NumLike, m2: NumLike) -> HiddenVariableModel:
    """Five-value saturating model interpolating older constructions.

    For M1 >= M2 the (M1, M2) square splits into three regions with one
    probability table each: the low-violation region M1 + 2 M2 <= 2
    (where the model is a mixture of ``hall_model`` and ``banik_model``),
    the region M1 + 2 M2 > 2 with M2 <= 2/3, and the region with both
    parameters above 2/3.  Tables agree on shared boundaries; dispatch
    prefers the first region, then the second.
    """
    m1, m2 = _coerce_pair(m1, m2)
    _check_range(m1, "m1")
    _check_range(m2, "m2")
    if m2 > m1:
        return swap_parties(interp_model(m2, m1))

    region = _interp_region(m1, m2)
    zero = m1 * 0
    if region in ("yellow", "red"):
        p1 = m1 / 2
        p2 = m2 / 2
        if region == "yellow":
            rest = 1 - p1 - 2 * p2
            rows = (
                (p2, p2, p2, zero),
                (p2, p2, zero, p2),
                (p2, zero, p1, p1),
                (zero, p2, p2, p2),
                (1 - 3 * p2, 1 - 3 * p2, rest, rest),
            )
        else:
            half_rest = (1 - p1) / 2
            rows = (
                (p2, p2, half_rest, zero),
                (p2, p2, zero, half_rest),
                (p2, zero, half_rest, half_rest),
                (zero, p2, p1, p1),
                (1 - 3 * p2, 1 - 3 * p2, zero, zero),
            )
    else:
        p1 = (2 - m2) / 4 + (m1 - m2) / 12
        p2 = (m1 - m2) / 6
        p3 = zero if m1 <= 4 * m2 - 2 else (m1 - 4 * m2 + 2) / 8
        half_rest = (1 - p1) / 2
        rows = (
            (p1 - 2 * p2, half_rest - 2 * p2 + p3, half_rest + p2 - p3, zero),
            (half_rest + 4 * p2 - p3, p1 + p2, zero, half_rest + p2 - p3),
            (half_rest - 2 * p2 + p3, zero, p1 - 2 * p2 + 2 * p3, half_rest - 2 * p2 + 3 * p3),
            (zero, half_rest + p2 - p3, half_rest + p2 - p3, p1 + p2 - 2 * p3),
            (zero, zero, zero, zero),
        )
    return HiddenVariableModel(
        outcomes=_OUTCOMES_5,
        cond=_rows_to_columns(rows),
        settings=SettingsDistribution.uniform(),
        label=f"interp(m1={_fmt(m1)}, m2={_fmt(m2)}, region={region})",
    )


def hall_model(p: NumLike) -> HiddenVariableModel:
    """Symmetric special case of the interpolating model: (M1, M2) = (2p, 2p),
    valid for p in [0, 1/3]."""
    p = as_number(p)
    limit = Fraction(1, 3) if is_exact(p) else 1.0 / 3.0
    if p < 0 or p > limit:
        raise ValueError(f"p = {p!r} outside [0, 1/3]")
    model = interp_model(2 * p, 2 * p)
    return HiddenVariableModel(
        model.outcomes, model.cond, model.settings, label=f"hall(p={_fmt(p)})"
    )


def banik_model(p: NumLike) -> HiddenVariableModel:
    """One-sided special case of the interpolating model: (M1, M2) = (2p, 0),
    valid for p in [0, 1]."""
    p = as_number(p)
    if p < 0 or p > 1:
        raise ValueError(f"p = {p!r} outside [0, 1]")
    model = interp_model(2 * p, p * 0)
    return HiddenVariableModel(
        model.outcomes, model.cond, model.settings, label=f"banik(p={_fmt(p)})"
    )
