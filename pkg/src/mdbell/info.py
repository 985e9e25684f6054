"""Mutual information between the hidden variable and the joint settings.

``mutual_information`` evaluates I(lambda; (u,v)) directly on any valid
model.  Closed forms for the constructed families are provided alongside
it; the test suite checks each closed form against the direct computation
on a parameter grid, so the two routes stay independent.

Conventions: logarithms are base 2 (results in bits), and the entropy
term h(x) = x log2(x) is extended by h(0) = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .bounds import TSIRELSON_VIOLATION, ModelParams
from .constructors import banik_model, four_param_model
from .model import JOINT_SETTINGS, HiddenVariableModel, marginal_lambda, require_valid

_LOG2_4_3 = math.log2(4.0 / 3.0)
_SQRT2 = math.sqrt(2.0)

#: Region-precondition slack for float-valued parameters.
_REGION_TOL = 1e-12


def entropy_term(x: float) -> float:
    """h(x) = x * log2(x), with h(0) = 0 by continuity."""
    if x < 0:
        raise ValueError(f"entropy_term needs x >= 0, got {x!r}")
    if x == 0:
        return 0.0
    return x * math.log2(x)


def mutual_information(model: HiddenVariableModel) -> float:
    """I = sum_{lambda,u,v} p(u,v) p(lambda|u,v) log2[p(lambda|u,v) / p(lambda)].

    Zero-probability terms contribute nothing; the result is in bits and
    is zero exactly for measurement-independent models.
    """
    require_valid(model)
    marg = [float(p) for p in marginal_lambda(model)]
    total = 0.0
    for uv in JOINT_SETTINGS:
        weight = float(model.settings.prob(*uv))
        if weight == 0.0:
            continue
        for i, p in enumerate(model.cond.column(*uv)):
            p = float(p)
            if p > 0.0:
                total += weight * p * math.log2(p / marg[i])
    return max(total, 0.0)


@dataclass(frozen=True)
class InfoCurvePoint:
    """One point of an information-versus-violation curve."""

    v: float
    bits: float
    argmin_m2: Optional[float] = None


def _check_v(v: float) -> float:
    v = float(v)
    if v < 0 or v > 2:
        raise ValueError(f"violation {v!r} outside [0, 2]")
    return v


def i_g(m1: float, m2: float) -> float:
    """Closed-form information of the four-value two-parameter model.

    Valid for M1 >= M2 with M1 + 2 M2 <= 2:
    (1/4) [2 h(1 + M1/2) + h(1 - M1/2 + M2) + h(1 - M1/2 - M2)].
    """
    m1, m2 = float(m1), float(m2)
    if m1 < 0 or m2 < 0 or m1 > 2:
        raise ValueError(f"(m1, m2) = ({m1!r}, {m2!r}) out of range")
    if m2 > m1 + _REGION_TOL or m1 + 2 * m2 > 2 + _REGION_TOL:
        raise ValueError(f"(m1, m2) = ({m1!r}, {m2!r}) outside the region m1 >= m2, m1 + 2 m2 <= 2")
    h = entropy_term
    return 0.25 * (
        2 * h(1 + m1 / 2) + h(max(1 - m1 / 2 + m2, 0.0)) + h(max(1 - m1 / 2 - m2, 0.0))
    )


def i_g_min(v: float) -> InfoCurvePoint:
    """Minimum information of the two-parameter model at fixed violation V.

    The minimum over the slice M1 = V - 2 M2 sits at M1 = M2 = V/3:
    (1/4) [3 h(1 + V/6) + h(1 - V/2)].
    """
    v = _check_v(v)
    h = entropy_term
    bits = 0.25 * (3 * h(1 + v / 6) + h(max(1 - v / 2, 0.0)))
    return InfoCurvePoint(v=v, bits=bits, argmin_m2=v / 3)


def i_hall(v: float) -> float:
    """Information of the symmetric five-value model at violation V:
    (V/2) log2(4/3)."""
    v = _check_v(v)
    return (v / 2) * _LOG2_4_3


def i_banik(v: float) -> float:
    """Information of the one-sided model at violation V.

    Computed directly from the constructed model; see
    :func:`i_banik_closed_form` for the matching closed form.
    """
    v = _check_v(v)
    return mutual_information(banik_model(v / 2))


def i_banik_closed_form(v: float) -> float:
    """(1/4) [6 + h(2 - V) - h(4 - V)].

    Cross-check only: verified against the direct computation
    :func:`i_banik` to 1e-12 across the violation grid (see tests).
    """
    v = _check_v(v)
    h = entropy_term
    return 0.25 * (6 + h(2 - v) - h(4 - v))


def i_interp(m1: float, m2: float) -> float:
    """Closed-form information of the interpolating model on its
    low-violation region (M1 >= M2, M1 + 2 M2 <= 2)."""
    m1, m2 = float(m1), float(m2)
    if m1 < 0 or m2 < 0 or m1 > 2:
        raise ValueError(f"(m1, m2) = ({m1!r}, {m2!r}) out of range")
    if m2 > m1 + _REGION_TOL or m1 + 2 * m2 > 2 + _REGION_TOL:
        raise ValueError(f"(m1, m2) = ({m1!r}, {m2!r}) outside the region m1 >= m2, m1 + 2 m2 <= 2")
    h = entropy_term
    return 0.25 * (
        2 * h(max((2 - 3 * m2) / 2, 0.0))
        + 2 * h(max((2 - m1 - 2 * m2) / 2, 0.0))
        - 4 * h((2 * m1 + m2) / 8)
        - 4 * h(max((4 - m1 - 5 * m2) / 4, 0.0))
        + 2 * h(m1 / 2)
        + h(m2 / 2)
        + (9 * m2 / 2) * _LOG2_4_3
    )


def i_interp_slice(v: float, m2: float) -> float:
    """Interpolating-model information along the saturating slice M1 = V - 2 M2."""
    return i_interp(v - 2 * m2, m2)


def i_interp_min(v: float) -> InfoCurvePoint:
    """Numerically minimize the interpolating-model information over M2
    at fixed violation V (feasible M2 range [0, V/3])."""
    v = _check_v(v)
    if v == 0:
        return InfoCurvePoint(v=0.0, bits=0.0, argmin_m2=0.0)
    m2, bits = minimize_scalar(lambda m2: i_interp_slice(v, m2), 0.0, v / 3)
    return InfoCurvePoint(v=v, bits=bits, argmin_m2=m2)


def i_four(z: float) -> float:
    """Information of the four-parameter model along the constant-violation
    family M1 = M2 = V_T/3 + 2z, Mhat1 = Mhat2 = V_T/3 - z, z in [0, V_T/3]."""
    z = float(z)
    zmax = TSIRELSON_VIOLATION / 3
    if z < -_REGION_TOL or z > zmax + _REGION_TOL:
        raise ValueError(f"z = {z!r} outside [0, {zmax}]")
    z = min(max(z, 0.0), zmax)
    h = entropy_term
    return (
        1
        + 1.5 * z
        + h((2 - _SQRT2) / 4)
        + 2 * h((2 + _SQRT2 - 6 * z) / 12)
        + h((2 + _SQRT2 + 12 * z) / 12)
        - 2 * h((2 - 3 * z) / 8)
        - 0.25 * h(1 + 3 * z)
    )


def i_four_direct(z: float) -> float:
    """Same family as :func:`i_four`, computed on the constructed model."""
    m = TSIRELSON_VIOLATION / 3 + 2 * z
    hat = TSIRELSON_VIOLATION / 3 - z
    return mutual_information(four_param_model(ModelParams(m, m, hat, hat)))


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def minimize_scalar(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    grid: int = 200,
) -> tuple[float, float]:
    """Golden-section search seeded by a grid scan.

    Scans ``grid + 1`` equally spaced points to bracket the minimum, then
    narrows with golden-section steps until the bracket is shorter than
    ``tol``.  Returns (argmin, minimum).  Assumes f is continuous with a
    single local minimum inside the bracket found by the scan.
    """
    if hi < lo:
        raise ValueError("empty interval")
    if hi == lo:
        return lo, f(lo)
    xs = [lo + (hi - lo) * i / grid for i in range(grid + 1)]
    vals = [f(x) for x in xs]
    k = min(range(len(xs)), key=vals.__getitem__)
    a = xs[max(k - 1, 0)]
    b = xs[min(k + 1, grid)]

    c = b - (b - a) * _INV_PHI
    d = a + (b - a) * _INV_PHI
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - (b - a) * _INV_PHI
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) * _INV_PHI
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)
