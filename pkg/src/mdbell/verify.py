"""Self-contained verification suite behind ``mdbell verify``.

Runs every check the library promises, grouped into named sections, at
two grid resolutions: ``quick`` (coarse grids, 100 random models) and
``full`` (the grids quoted in the acceptance criteria, 1000 random
models).  Each section reports check counts and the first few failure
messages; the suite as a whole passes iff every section does.

Random models use exact rational probabilities, so the randomized
soundness section involves no floating-point tolerances at all.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Optional

from ._parallel import parallel_map
from .bounds import (
    TSIRELSON_S,
    TSIRELSON_VIOLATION,
    ModelParams,
    bound_banik,
    bound_four_param,
    bound_hall,
    bound_two_param,
    check_inequality_chain,
    check_param_feasible,
)
from .constructors import banik_model, four_param_model, hall_model, interp_model, two_param_model
from .info import (
    i_banik,
    i_banik_closed_form,
    i_four,
    i_four_direct,
    i_g,
    i_g_min,
    i_hall,
    i_interp,
    i_interp_min,
    i_interp_slice,
    minimize_scalar,
    mutual_information,
)
from .measures import chsh_s, measurement_dependence
from .model import (
    ConditionalTable,
    HiddenVariableModel,
    JOINT_SETTINGS,
    OutcomeTable,
    SettingsDistribution,
    validate_model,
)
from .oracle import check_sign_conditions, max_s_four_param, max_s_two_param


@dataclass
class SectionResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    def check(self, ok: bool, message: str = "") -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 8:
                self.failures.append(message)

    @property
    def ok(self) -> bool:
        return self.failed == 0


@dataclass
class VerificationSummary:
    level: str
    sections: list[SectionResult]

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.sections)


def random_model(
    rng: random.Random, lambda_count: int = 4, resolution: int = 24
) -> HiddenVariableModel:
    """Random valid model with exact rational probabilities.

    Each conditional column is a random integer composition normalized to
    1; outcome signs are uniform.  Suitable for exact soundness checks.
    """
    n = lambda_count

    def random_signs() -> tuple[int, ...]:
        return tuple(rng.choice((-1, 1)) for _ in range(n))

    def random_column() -> tuple[Fraction, ...]:
        while True:
            weights = [rng.randint(0, resolution) for _ in range(n)]
            total = sum(weights)
            if total:
                return tuple(Fraction(w, total) for w in weights)

    outcomes = OutcomeTable(
        alice={"x": random_signs(), "x'": random_signs()},
        bob={"y": random_signs(), "y'": random_signs()},
    )
    cond = ConditionalTable({uv: random_column() for uv in JOINT_SETTINGS})
    return HiddenVariableModel(
        outcomes, cond, SettingsDistribution.uniform(), label="random"
    )


def _sqrt2_proxy(digits: int = 40) -> Fraction:
    """Rational lower approximation of sqrt(2) accurate to 10**-digits."""
    scale = 10**digits
    return Fraction(math.isqrt(2 * scale * scale), scale)


def tsirelson_rational_proxy(digits: int = 40) -> Fraction:
    """High-precision rational stand-in for the Tsirelson violation 2(sqrt(2)-1)."""
    return 2 * (_sqrt2_proxy(digits) - 1)


# --------------------------------------------------------------------------
# Grid workers (module level so they can cross a process pool).
# --------------------------------------------------------------------------


def _two_param_grid(step_fifths: int) -> list[tuple[Fraction, Fraction]]:
    values = [Fraction(k, 5) for k in range(0, 11, step_fifths)]
    return [(m1, m2) for m1 in values for m2 in values]


def _four_param_grid(step_fifths: int) -> list[ModelParams]:
    values = [Fraction(k, 5) for k in range(0, 11, step_fifths)]
    out = []
    for m1, m2, h1, h2 in product(values, repeat=4):
        params = ModelParams(m1, m2, h1, h2)
        if check_param_feasible(params).feasible:
            out.append(params)
    return out


def _check_two_param_point(point: tuple[Fraction, Fraction]) -> Optional[str]:
    m1, m2 = point
    result = max_s_two_param(m1, m2)
    expected = bound_two_param(m1, m2)
    if result.s_max != expected:
        return f"max S at ({m1}, {m2}) = {result.s_max}, bound says {expected}"
    if not validate_model(result.witness).ok:
        return f"witness at ({m1}, {m2}) is invalid"
    report = measurement_dependence(result.witness)
    if report.m1 > m1 or report.m2 > m2:
        return f"witness at ({m1}, {m2}) breaks its constraints: {report.m1}, {report.m2}"
    if chsh_s(result.witness) != result.s_max:
        return f"witness at ({m1}, {m2}) does not attain {result.s_max}"
    return None


def _check_four_param_point(params: ModelParams) -> Optional[str]:
    result = max_s_four_param(params)
    expected = bound_four_param(params)
    tag = f"({params.m1}, {params.m2}, {params.hat1}, {params.hat2})"
    if result.s_max != expected:
        return f"max S at {tag} = {result.s_max}, bound says {expected}"
    if not validate_model(result.witness).ok:
        return f"witness at {tag} is invalid"
    report = measurement_dependence(result.witness)
    if report.m1 > params.m1 or report.m2 > params.m2:
        return f"witness at {tag} breaks max constraints"
    if report.mhat1 > params.hat1 or report.mhat2 > params.hat2:
        return f"witness at {tag} breaks hat constraints"
    if chsh_s(result.witness) != result.s_max:
        return f"witness at {tag} does not attain {result.s_max}"
    return None


def _check_two_param_roundtrip(point: tuple[Fraction, Fraction]) -> Optional[str]:
    m1, m2 = point
    model = two_param_model(m1, m2)
    if not validate_model(model).ok:
        return f"two_param_model({m1}, {m2}) fails validation"
    report = measurement_dependence(model)
    if (report.m1, report.m2) != (m1, m2):
        return f"two_param_model({m1}, {m2}) measures ({report.m1}, {report.m2})"
    if report.m != max(m1, m2):
        return f"two_param_model({m1}, {m2}) has M = {report.m}"
    if chsh_s(model) != bound_two_param(m1, m2):
        return f"two_param_model({m1}, {m2}) misses its bound"
    return None


def _check_four_param_roundtrip(params: ModelParams) -> Optional[str]:
    model = four_param_model(params)
    tag = f"({params.m1}, {params.m2}, {params.hat1}, {params.hat2})"
    if not validate_model(model).ok:
        return f"four_param_model{tag} fails validation"
    report = measurement_dependence(model)
    measured = (report.m1, report.m2, report.mhat1, report.mhat2)
    if measured != (params.m1, params.m2, params.hat1, params.hat2):
        return f"four_param_model{tag} measures {measured}"
    # Per-setting identities; the party swap for M2 > M1 preserves them.
    identities = (
        report.m1_given["y"] == params.m1,
        report.m1_given["y'"] == params.hat1,
        report.m2_given["x"] == params.m2,
        report.m2_given["x'"] == params.hat2,
    )
    if not all(identities):
        return f"four_param_model{tag} breaks the per-setting identities"
    if chsh_s(model) != bound_four_param(params):
        return f"four_param_model{tag} misses its bound"
    if params.m1 >= params.m2 and report.m2 + report.mhat1 + report.mhat2 <= 2:
        if not check_sign_conditions(model):
            return f"four_param_model{tag} breaks sign conditions"
    return None


def _check_interp_roundtrip(point: tuple[Fraction, Fraction]) -> Optional[str]:
    m1, m2 = point
    model = interp_model(m1, m2)
    if not validate_model(model).ok:
        return f"interp_model({m1}, {m2}) fails validation"
    report = measurement_dependence(model)
    if (report.m1, report.m2) != (m1, m2):
        return f"interp_model({m1}, {m2}) measures ({report.m1}, {report.m2})"
    if not check_inequality_chain(report):
        return f"interp_model({m1}, {m2}) breaks the M chain"
    if chsh_s(model) != bound_two_param(m1, m2):
        return f"interp_model({m1}, {m2}) misses its bound"
    return None


def _check_random_batch(args: tuple[int, int]) -> list[str]:
    seed, count = args
    rng = random.Random(seed)
    failures = []
    for _ in range(count):
        model = random_model(rng)
        report = measurement_dependence(model)
        if not check_inequality_chain(report):
            failures.append(f"chain broken for seed {seed}: {report}")
            continue
        params = ModelParams(report.m1, report.m2, report.mhat1, report.mhat2)
        feasible = check_param_feasible(params)
        if not feasible.feasible:
            failures.append(f"measured params infeasible for seed {seed}: {feasible.violations}")
            continue
        if chsh_s(model) > bound_four_param(params):
            failures.append(f"bound violated for seed {seed}")
    return failures


# --------------------------------------------------------------------------
# Sections
# --------------------------------------------------------------------------


def _section_tsirelson(level: str, seed: int, jobs: Optional[int]) -> SectionResult:
    sec = SectionResult("tsirelson-saturation")
    vt3 = TSIRELSON_VIOLATION / 3
    s = chsh_s(two_param_model(vt3, vt3))
    sec.check(abs(s - TSIRELSON_S) <= 1e-12, f"S = {s!r} (float path)")
    proxy = tsirelson_rational_proxy() / 3
    s_exact = chsh_s(two_param_model(proxy, proxy))
    sec.check(
        s_exact == 2 + 3 * proxy, f"rational-proxy S = {s_exact} != 2 + V_T proxy"
    )
    sec.check(abs(float(s_exact) - TSIRELSON_S) <= 1e-12, "rational proxy drifted")
    return sec


def _section_two_param_tightness(level: str, seed: int, jobs: Optional[int]) -> SectionResult:
    sec = SectionResult("two-param-tightness")
    grid = _two_param_grid(1 if level == "full" else 2)
    for err in parallel_map(_check_two_param_point, grid, jobs):
        sec.check(err is None, err or "")
    return sec


def _section_four_param_tightness(level: str, seed: int, jobs: Optional[int]) -> SectionResult:
    sec = SectionResult("four-param-tightness")
    grid = _four_param_grid(2 if level == "full" else 5)
    for err in parallel_map(_check_four_param_point, grid, jobs):
        sec.check(err is None, err or "")
    return sec


def _section_round_trip(level: str, seed: int, jobs: Optional[int]) -> SectionResult:
    sec = SectionResult("constructed-round-trip")
    two_grid = _two_param_grid(1)
    for err in parallel_map(_check_two_param_roundtrip, two_grid, jobs):
        sec.check(err is None, err or "")
    four_grid = _four_param_grid(2)
    for err in parallel_map(_check_four_param_roundtrip, four_grid, jobs):
        sec.check(err is None, err or "")
    for err in parallel_map(_check_interp_roundtrip, two_grid, jobs):
        sec.check(err is None, err or "")
    return sec


def _section_info_values(level: str, seed: int, jobs: Optional[int]) -> SectionResult:
    sec = SectionResult("mutual-information-values")
    vt = TSIRELSON_VIOLATION
    direct = mutual_information(two_param_model(vt / 3, vt / 3))
    sec.check(abs(direct - 0.0462738) <= 1e-6, f"I at symmetric optimum = {direct!r}")
    hall = i_hall(vt)
    sec.check(abs(hall - 0.17192) <= 5e-4, f"i_hall(V_T) = {hall!r}")
    banik = mutual_information(banik_model(math.sqrt(2.0) - 1.0))
    sec.check(abs(banik - 0.2466) <= 5e-4, f"banik information = {banik!r}")
    sec.check(
        abs(i_four(0.0) - 0.04627384685340685) <= 1e-9, f"i_four(0) = {i_four(0.0)!r}"
    )
    top = i_four(vt / 3)
    sec.check(abs(top - 0.1423) <= 5e-4, f"i_four(V_T/3) = {top!r}")
    return sec


def _section_interp_minimum(level: str, seed: int, jobs: Optional[int]) -> SectionResult:
    sec = SectionResult("interp-minimum")
    vt = TSIRELSON_VIOLATION

    def direct(m2: float) -> float:
        return mutual_information(interp_model(vt - 2 * m2, m2))

    m2, bits = minimize_scalar(direct, 0.0, vt / 3)
    sec.check(abs(m2 - 0.2063) <= 5e-4, f"argmin M2 = {m2!r}")
    sec.check(abs((vt - 2 * m2) - 0.4158) <= 1e-3, f"argmin M1 = {vt - 2 * m2!r}")
    sec.check(abs(bits - 0.1616) <= 5e-4, f"min bits = {bits!r}")
    point = i_interp_min(vt)
    sec.check(abs(point.bits - bits) <= 1e-9, "closed-form minimum disagrees with direct")
    return sec


def _section_orderings(level: str, seed: int, jobs: Optional[int]) -> SectionResult:
    sec = SectionResult("information-orderings")
    for k in range(1, 40):
        v = k * 0.05
        lo = i_g_min(v).bits
        mid = i_hall(v)
        hi = i_banik(v)
        interp = i_interp_min(v).bits
        sec.check(lo < mid < hi, f"ordering broken at V = {v}: {lo}, {mid}, {hi}")
        sec.check(interp < mid, f"interp minimum not below symmetric at V = {v}")
    return sec


def _section_closed_forms(level: str, seed: int, jobs: Optional[int]) -> SectionResult:
    sec = SectionResult("closed-form-vs-direct")
    step = 1 if level == "full" else 4  # grid spacing 0.05 / 0.2
    grid_int = range(0, 41, step)
    for i in grid_int:
        m1 = i * 0.05
        for j in range(0, i + 1, step):
            m2 = j * 0.05
            if m1 + 2 * m2 > 2 + 1e-12:
                continue
            direct = mutual_information(two_param_model(m1, m2))
            sec.check(
                abs(i_g(m1, m2) - direct) <= 1e-9,
                f"i_g({m1}, {m2}) != direct ({i_g(m1, m2)!r} vs {direct!r})",
            )
            direct_i = mutual_information(interp_model(m1, m2))
            sec.check(
                abs(i_interp(m1, m2) - direct_i) <= 1e-9,
                f"i_interp({m1}, {m2}) != direct",
            )
    for i in grid_int:
        v = i * 0.05
        sec.check(
            abs(i_banik(v) - i_banik_closed_form(v)) <= 1e-9,
            f"banik closed form off at V = {v}",
        )
        point = i_g_min(v)
        scan_m2, scan_bits = minimize_scalar(
            lambda m2: i_g(v - 2 * m2, m2), 0.0, v / 3
        )
        sec.check(
            point.bits <= scan_bits + 1e-9,
            f"i_g_min({v}) above numeric minimum ({point.bits!r} vs {scan_bits!r})",
        )
        sec.check(
            abs(point.bits - scan_bits) <= 1e-7,
            f"i_g_min({v}) far from numeric minimum",
        )
    zmax = TSIRELSON_VIOLATION / 3
    for i in grid_int:
        z = zmax * i / 40
        sec.check(
            abs(i_four(z) - i_four_direct(z)) <= 1e-9,
            f"i_four({z}) != direct",
        )
    return sec


def _section_random_soundness(level: str, seed: int, jobs: Optional[int]) -> SectionResult:
    sec = SectionResult("randomized-soundness")
    total = 1000 if level == "full" else 100
    batch = 50
    batches = [(seed + i, batch) for i in range(total // batch)]
    for failures in parallel_map(_check_random_batch, batches, jobs):
        sec.passed += batch - len(failures)
        for message in failures:
            sec.check(False, message)
    return sec


def _columns(model: HiddenVariableModel) -> dict:
    return {uv: model.cond.column(*uv) for uv in JOINT_SETTINGS}


def _section_reductions(level: str, seed: int, jobs: Optional[int]) -> SectionResult:
    sec = SectionResult("reductions")
    grid = [Fraction(k, 5) for k in range(11)]
    for m in grid:
        sec.check(
            bound_two_param(m, m) == bound_hall(m), f"symmetric reduction broken at {m}"
        )
        sec.check(
            bound_two_param(m, 0) == bound_banik(m), f"one-sided reduction broken at {m}"
        )

    for m1 in grid:
        for m2 in grid:
            if m2 > m1:
                continue
            four = four_param_model(ModelParams(m1, m2, m1, m2))
            two = two_param_model(m1, m2)
            sec.check(
                _columns(four) == _columns(two),
                f"four-param with hats = Ms differs from two-param at ({m1}, {m2})",
            )

    # Symmetric and one-sided special cases of the interpolating model,
    # checked entrywise against their standalone tables.
    for k in range(11):
        p = Fraction(k, 30)  # p in [0, 1/3]
        model = hall_model(p)
        expected = {
            ("x", "y"): (p, p, p, 0, 1 - 3 * p),
            ("x", "y'"): (p, p, 0, p, 1 - 3 * p),
            ("x'", "y"): (p, 0, p, p, 1 - 3 * p),
            ("x'", "y'"): (0, p, p, p, 1 - 3 * p),
        }
        sec.check(
            _columns(model) == expected, f"symmetric special case differs at p = {p}"
        )
    for k in range(11):
        p = Fraction(k, 10)
        model = banik_model(p)
        expected = {
            ("x", "y"): (0, 0, 0, 0, 1),
            ("x", "y'"): (0, 0, 0, 0, 1),
            ("x'", "y"): (0, 0, p, 0, 1 - p),
            ("x'", "y'"): (0, 0, p, 0, 1 - p),
        }
        sec.check(
            _columns(model) == expected, f"one-sided special case differs at p = {p}"
        )

    # Mixture identity on the low-violation region: the interpolating
    # table is the w : (1 - w) mixture of the two special cases, w = p2/p1.
    for i in range(1, 11):
        for j in range(0, i + 1):
            p1 = Fraction(i, 10)
            p2 = Fraction(j, 10)
            if p1 + 2 * p2 > 1 or p2 > Fraction(1, 3):
                continue
            w = p2 / p1
            mixed = interp_model(2 * p1, 2 * p2)
            hall_cols = _columns(hall_model(p1)) if p1 <= Fraction(1, 3) else None
            if hall_cols is None:
                continue
            banik_cols = _columns(banik_model(p1))
            ok = True
            for uv in JOINT_SETTINGS:
                for a, hb, bb in zip(mixed.cond.column(*uv), hall_cols[uv], banik_cols[uv]):
                    if a != w * hb + (1 - w) * bb:
                        ok = False
            sec.check(ok, f"mixture identity broken at (p1, p2) = ({p1}, {p2})")
    return sec


_SECTIONS: tuple[Callable[[str, int, Optional[int]], SectionResult], ...] = (
    _section_tsirelson,
    _section_two_param_tightness,
    _section_four_param_tightness,
    _section_round_trip,
    _section_info_values,
    _section_interp_minimum,
    _section_orderings,
    _section_closed_forms,
    _section_random_soundness,
    _section_reductions,
)


def run_verification(
    level: str = "quick", seed: int = 0, jobs: Optional[int] = None
) -> VerificationSummary:
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}; use 'quick' or 'full'")
    sections = [section(level, seed, jobs) for section in _SECTIONS]
    return VerificationSummary(level=level, sections=sections)
