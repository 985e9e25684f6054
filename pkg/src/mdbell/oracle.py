"""Independent tightness verification via exact linear programming.

Any deterministic locally causal model, whatever its hidden-variable
space, acts in the CHSH scenario only through the 16 joint sign
assignments (A(x), A(x'), B(y), B(y')); grouping lambda values by that
behaviour loses nothing.  Maximizing the CHSH combination over
distributions of these 16 strategy atoms, one distribution per joint
setting, subject to variational-distance constraints, is therefore a
maximization over all such models, and it is a linear program once each
L1 constraint is linearized (sum |d_k| = 2 sum max(d_k, 0) for two
normalized distributions).

The absolute value in the CHSH parameter is dropped: flipping both of
Bob's outcome signs permutes the strategy atoms, negates the objective,
and preserves every constraint, so the maximum of the signed combination
equals the maximum of its magnitude.  This symmetry is asserted by the
test suite rather than assumed silently.

All arithmetic is exact; grid results are exact equalities with the
closed-form bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .bounds import ModelParams, require_feasible
from .measures import measurement_dependence
from .model import (
    JOINT_SETTINGS,
    ConditionalTable,
    HiddenVariableModel,
    NumLike,
    OutcomeTable,
    SettingsDistribution,
    as_number,
)
from .simplex import LinearProgram, LpSolution, lp_solve

_SETTING_INDEX = {uv: i for i, uv in enumerate(JOINT_SETTINGS)}
_CHSH_SIGNS = {("x", "y"): 1, ("x", "y'"): 1, ("x'", "y"): 1, ("x'", "y'"): -1}

# Pairs of setting columns whose variational distance is constrained,
# keyed by the fixed setting on the other side.
_ALICE_PAIRS = {"y": (("x", "y"), ("x'", "y")), "y'": (("x", "y'"), ("x'", "y'"))}
_BOB_PAIRS = {"x": (("x", "y"), ("x", "y'")), "x'": (("x'", "y"), ("x'", "y'"))}

_N_STRATEGIES = 16


@dataclass(frozen=True)
class StrategyAtom:
    """One deterministic joint strategy: outcome signs for all four settings."""

    index: int
    signs: tuple[int, int, int, int]  # (A(x), A(x'), B(y), B(y'))

    def a(self, u: str) -> int:
        return self.signs[0] if u == "x" else self.signs[1]

    def b(self, v: str) -> int:
        return self.signs[2] if v == "y" else self.signs[3]


def canonical_strategies() -> tuple[StrategyAtom, ...]:
    """All 16 deterministic strategies, in binary order.

    Bit 3 down to bit 0 of the index select A(x), A(x'), B(y), B(y');
    bit value 0 means outcome +1, bit value 1 means -1.
    """
    atoms = []
    for k in range(_N_STRATEGIES):
        signs = tuple(1 - 2 * ((k >> shift) & 1) for shift in (3, 2, 1, 0))
        atoms.append(StrategyAtom(k, signs))
    return tuple(atoms)


_ATOMS = canonical_strategies()


@dataclass(frozen=True)
class OracleResult:
    """Exact maximum of the CHSH parameter plus a model attaining it."""

    s_max: Fraction
    witness: HiddenVariableModel
    branch: Optional[tuple[str, str]] = None  # (v, u) whose distances got the hat bounds
    attaining_branches: tuple[tuple[str, str], ...] = ()


def _as_exact(value: NumLike, name: str) -> Fraction:
    value = as_number(value)
    if isinstance(value, float):
        raise ValueError(
            f"{name} = {value!r}: the tightness oracle needs exact rational input "
            "(int, Fraction, or 'p/q' string), not float"
        )
    if value < 0 or value > 2:
        raise ValueError(f"{name} = {value} outside [0, 2]")
    return Fraction(value)


def build_chsh_lp(pair_bounds: dict[str, Fraction]) -> LinearProgram:
    """CHSH maximization LP with per-pair variational-distance bounds.

    ``pair_bounds`` maps the four pair labels "y", "y'" (Alice-side
    distances at fixed Bob setting) and "x", "x'" (Bob-side) to their
    allowed distances.  Variables: 64 strategy probabilities p_k^{uv}
    followed by 16 auxiliary variables per constrained pair.
    """
    pairs = [
        ("y", *_ALICE_PAIRS["y"]),
        ("y'", *_ALICE_PAIRS["y'"]),
        ("x", *_BOB_PAIRS["x"]),
        ("x'", *_BOB_PAIRS["x'"]),
    ]
    n_p = 4 * _N_STRATEGIES
    n_vars = n_p + len(pairs) * _N_STRATEGIES
    zero = Fraction(0)
    one = Fraction(1)

    objective = [zero] * n_vars
    for uv in JOINT_SETTINGS:
        base = _SETTING_INDEX[uv] * _N_STRATEGIES
        sign = _CHSH_SIGNS[uv]
        for atom in _ATOMS:
            objective[base + atom.index] = Fraction(sign * atom.a(uv[0]) * atom.b(uv[1]))

    a_eq, b_eq = [], []
    for uv in JOINT_SETTINGS:
        base = _SETTING_INDEX[uv] * _N_STRATEGIES
        row = [zero] * n_vars
        for k in range(_N_STRATEGIES):
            row[base + k] = one
        a_eq.append(row)
        b_eq.append(one)

    a_ub, b_ub = [], []
    for t, (label, col_a, col_b) in enumerate(pairs):
        base_a = _SETTING_INDEX[col_a] * _N_STRATEGIES
        base_b = _SETTING_INDEX[col_b] * _N_STRATEGIES
        base_s = n_p + t * _N_STRATEGIES
        # s_k >= p^a_k - p^b_k; with both columns normalized,
        # sum_k max(p^a_k - p^b_k, 0) is half the variational distance.
        for k in range(_N_STRATEGIES):
            row = [zero] * n_vars
            row[base_a + k] = one
            row[base_b + k] = -one
            row[base_s + k] = -one
            a_ub.append(row)
            b_ub.append(zero)
        row = [zero] * n_vars
        for k in range(_N_STRATEGIES):
            row[base_s + k] = one
        a_ub.append(row)
        b_ub.append(pair_bounds[label] / 2)

    return LinearProgram(
        objective=tuple(objective),
        a_ub=tuple(a_ub),
        b_ub=tuple(b_ub),
        a_eq=tuple(a_eq),
        b_eq=tuple(b_eq),
    )


def _witness_from_solution(solution: LpSolution, label: str) -> HiddenVariableModel:
    outcomes = OutcomeTable(
        alice={
            "x": tuple(atom.a("x") for atom in _ATOMS),
            "x'": tuple(atom.a("x'") for atom in _ATOMS),
        },
        bob={
            "y": tuple(atom.b("y") for atom in _ATOMS),
            "y'": tuple(atom.b("y'") for atom in _ATOMS),
        },
    )
    cols = {}
    for uv in JOINT_SETTINGS:
        base = _SETTING_INDEX[uv] * _N_STRATEGIES
        cols[uv] = tuple(solution.x[base + k] for k in range(_N_STRATEGIES))
    return HiddenVariableModel(
        outcomes=outcomes,
        cond=ConditionalTable(cols),
        settings=SettingsDistribution.uniform(),
        label=label,
    )


def max_s_two_param(m1: NumLike, m2: NumLike) -> OracleResult:
    """Exact maximum of S over all locally causal models with both
    Alice-side distances <= M1 and both Bob-side distances <= M2."""
    m1 = _as_exact(m1, "m1")
    m2 = _as_exact(m2, "m2")
    lp = build_chsh_lp({"y": m1, "y'": m1, "x": m2, "x'": m2})
    solution = lp_solve(lp)
    if not solution.is_optimal:  # pragma: no cover - always feasible and bounded
        raise RuntimeError(f"unexpected LP status {solution.status}")
    witness = _witness_from_solution(solution, f"oracle-witness(m1={m1}, m2={m2})")
    return OracleResult(s_max=solution.objective_value, witness=witness)


def max_s_four_param(params: ModelParams) -> OracleResult:
    """Exact maximum of S under the four-parameter constraints.

    "min of the two distances <= Mhat" is not convex, so each of the four
    choices of which Alice-side and which Bob-side distance is hat-bounded
    is solved as its own LP; the result is the branch maximum, with every
    attaining branch reported.
    """
    m1 = _as_exact(params.m1, "m1")
    m2 = _as_exact(params.m2, "m2")
    h1 = _as_exact(params.hat1, "mhat1")
    h2 = _as_exact(params.hat2, "mhat2")
    require_feasible(ModelParams(m1, m2, h1, h2))

    results: list[tuple[tuple[str, str], LpSolution]] = []
    for v_hat in ("y", "y'"):
        for u_hat in ("x", "x'"):
            pair_bounds = {
                "y": h1 if v_hat == "y" else m1,
                "y'": h1 if v_hat == "y'" else m1,
                "x": h2 if u_hat == "x" else m2,
                "x'": h2 if u_hat == "x'" else m2,
            }
            solution = lp_solve(build_chsh_lp(pair_bounds))
            if not solution.is_optimal:  # pragma: no cover
                raise RuntimeError(f"unexpected LP status {solution.status}")
            results.append(((v_hat, u_hat), solution))

    best = max(sol.objective_value for _, sol in results)
    attaining = tuple(branch for branch, sol in results if sol.objective_value == best)
    first = next(sol for branch, sol in results if branch == attaining[0])
    witness = _witness_from_solution(
        first,
        f"oracle-witness(m1={m1}, m2={m2}, mhat1={h1}, mhat2={h2}, branch={attaining[0]})",
    )
    return OracleResult(
        s_max=best, witness=witness, branch=attaining[0], attaining_branches=attaining
    )


# Sign patterns required of the canonical four-value construction (outcome
# constants all +1) for the bound's triangle steps to hold with equality:
# per hidden-variable row, the sign of each column difference.
_SIGN_PATTERNS = (
    (("x", "y"), ("x", "y'"), (1, 1, 1, -1)),
    (("x'", "y"), ("x'", "y'"), (1, -1, 1, 1)),
    (("x", "y'"), ("x'", "y'"), (1, 1, -1, -1)),
)

_SIGN_TOL = 1e-12


def check_sign_conditions(model: HiddenVariableModel) -> bool:
    """Row-by-row sign checks for the canonical four-parameter construction.

    Only models from :func:`mdbell.constructors.four_param_model` in the
    base region (M2 + Mhat1 + Mhat2 <= 2) qualify; anything else raises.
    """
    if model.lambda_count != 4:
        raise ValueError("sign conditions apply to the 4-value construction only")
    from .constructors import _OUTCOMES_4  # canonical outcome signs

    if (
        model.outcomes.alice != _OUTCOMES_4.alice
        or model.outcomes.bob != _OUTCOMES_4.bob
    ):
        raise ValueError("sign conditions require the canonical outcome table")
    report = measurement_dependence(model)
    threshold = report.m2 + report.mhat1 + report.mhat2
    if threshold > 2 + _SIGN_TOL:
        raise ValueError(
            f"sign conditions hold only for m2 + mhat1 + mhat2 <= 2 (got {threshold})"
        )

    exact = model.is_exact
    tol = 0 if exact else _SIGN_TOL
    for col_a, col_b, pattern in _SIGN_PATTERNS:
        pa = model.cond.column(*col_a)
        pb = model.cond.column(*col_b)
        for i, sign in enumerate(pattern):
            diff = pa[i] - pb[i]
            if sign > 0 and diff < -tol:
                return False
            if sign < 0 and diff > tol:
                return False
    return True
