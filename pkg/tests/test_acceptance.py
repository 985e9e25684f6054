"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest -v tests/test_acceptance.py`` (add ``-s`` to see the
PASS lines as they happen).  Tolerances are pinned here and nowhere else.
"""

import math
import random
import time
from fractions import Fraction as F
from itertools import product

import pytest

from mdbell import (
    ModelParams,
    banik_model,
    bound_banik,
    bound_four_param,
    bound_hall,
    bound_two_param,
    check_inequality_chain,
    check_param_feasible,
    chsh_s,
    four_param_model,
    hall_model,
    i_banik,
    i_banik_closed_form,
    i_four,
    i_four_direct,
    i_g,
    i_g_min,
    i_hall,
    i_interp,
    i_interp_min,
    interp_model,
    max_s_four_param,
    max_s_two_param,
    measurement_dependence,
    minimize_scalar,
    mutual_information,
    two_param_model,
    validate_model,
)
from mdbell._parallel import parallel_map
from mdbell.model import JOINT_SETTINGS
from mdbell.verify import (
    _check_four_param_point,
    _check_four_param_roundtrip,
    _check_two_param_point,
    _check_two_param_roundtrip,
    random_model,
    tsirelson_rational_proxy,
)

VT = 2 * (math.sqrt(2) - 1)
S_QM = 2 * math.sqrt(2)

TWO_PARAM_GRID = [(F(i, 5), F(j, 5)) for i in range(11) for j in range(11)]
FOUR_PARAM_GRID = [
    params
    for vals in ([F(k, 5) for k in range(0, 11, 2)],)
    for combo in product(vals, repeat=4)
    if check_param_feasible(params := ModelParams(*combo)).feasible
]


def announce(n: int, text: str) -> None:
    print(f"[criterion {n}] PASS - {text}")


def test_criterion_01_tsirelson_saturation():
    s_float = chsh_s(two_param_model(VT / 3, VT / 3))
    assert abs(s_float - S_QM) <= 1e-12

    proxy = tsirelson_rational_proxy(digits=40) / 3
    s_exact = chsh_s(two_param_model(proxy, proxy))
    assert s_exact == 2 + 3 * proxy  # exact rational saturation
    assert abs(float(s_exact) - S_QM) <= 1e-12

    for m1, m2 in ((F(2, 5), F(2, 5)), (F(4, 5), F(0))):
        assert chsh_s(two_param_model(m1, m2)) == bound_two_param(m1, m2)
    announce(1, f"S = {s_float!r} vs 2*sqrt(2), exact on the rational proxy")


def test_criterion_02_two_param_tightness():
    start = time.monotonic()
    errors = [e for e in parallel_map(_check_two_param_point, TWO_PARAM_GRID) if e]
    elapsed = time.monotonic() - start
    assert not errors, errors[:3]
    assert elapsed < 60, f"grid took {elapsed:.1f}s"
    announce(2, f"121 LPs match the closed-form bound exactly in {elapsed:.1f}s")


def test_criterion_03_four_param_tightness():
    start = time.monotonic()
    errors = [e for e in parallel_map(_check_four_param_point, FOUR_PARAM_GRID) if e]
    elapsed = time.monotonic() - start
    assert not errors, errors[:3]
    assert elapsed < 300, f"grid took {elapsed:.1f}s"
    announce(
        3,
        f"{len(FOUR_PARAM_GRID)} feasible quadruples match the bound exactly in {elapsed:.1f}s",
    )


def test_criterion_04_constructed_round_trip():
    errors = [e for e in parallel_map(_check_two_param_roundtrip, TWO_PARAM_GRID) if e]
    assert not errors, errors[:3]
    # Per-setting distance identities for the two-parameter construction.
    for m1, m2 in TWO_PARAM_GRID:
        report = measurement_dependence(two_param_model(m1, m2))
        assert set(report.m1_given.values()) == {report.m1}
        assert set(report.m2_given.values()) == {report.m2}
    errors = [e for e in parallel_map(_check_four_param_roundtrip, FOUR_PARAM_GRID) if e]
    assert not errors, errors[:3]
    announce(
        4,
        f"{len(TWO_PARAM_GRID)} + {len(FOUR_PARAM_GRID)} constructions reproduce "
        "their parameters exactly, tables valid, identities hold",
    )


def test_criterion_05_mutual_information_values():
    sym = mutual_information(two_param_model(VT / 3, VT / 3))
    assert sym == pytest.approx(0.0462738, abs=1e-6)

    hall_cost = i_hall(VT)
    assert hall_cost == pytest.approx(0.17192, abs=5e-4)

    banik_cost = mutual_information(banik_model(math.sqrt(2) - 1))
    assert banik_cost == pytest.approx(0.2466, abs=5e-4)

    # Closed form of the symmetric optimum, transcribed independently.
    h = lambda x: 0.0 if x == 0 else x * math.log2(x)
    reference = 0.25 * (3 * h((2 + math.sqrt(2)) / 3) + h(2 - math.sqrt(2)))
    assert i_four(0.0) == pytest.approx(reference, abs=1e-9)
    assert i_four(VT / 3) == pytest.approx(0.1423, abs=5e-4)
    announce(
        5,
        f"I = {sym:.7f}, symmetric {hall_cost:.5f}, one-sided {banik_cost:.4f}, "
        f"i_four endpoints {i_four(0.0):.7f}/{i_four(VT / 3):.4f}",
    )


def test_criterion_06_interp_minimum_via_direct_computation():
    def direct(m2: float) -> float:
        return mutual_information(interp_model(VT - 2 * m2, m2))

    m2, bits = minimize_scalar(direct, 0.0, VT / 3)
    m1 = VT - 2 * m2
    assert m2 == pytest.approx(0.2063, abs=5e-4)
    assert m1 == pytest.approx(0.4158, abs=1e-3)
    assert bits == pytest.approx(0.1616, abs=5e-4)
    announce(6, f"minimum at M2 = {m2:.4f}, M1 = {m1:.4f}, I = {bits:.4f} bits")


def test_criterion_07_information_orderings():
    for k in range(1, 40):
        v = k * 0.05
        lo = i_g_min(v).bits
        sym = i_hall(v)
        one_sided = i_banik(v)
        interp_min = i_interp_min(v).bits
        assert lo < sym < one_sided, f"chain broken at V = {v}"
        assert interp_min < sym, f"interp minimum not below symmetric at V = {v}"
    announce(7, "orderings hold at V = 0.05 .. 1.95")


def test_criterion_08_closed_forms_match_direct_oracle():
    checks = 0
    for i in range(0, 41):
        m1 = i * 0.05
        for j in range(0, i + 1):
            m2 = j * 0.05
            if m1 + 2 * m2 > 2 + 1e-12:
                continue
            assert i_g(m1, m2) == pytest.approx(
                mutual_information(two_param_model(m1, m2)), abs=1e-9
            ), (m1, m2)
            assert i_interp(m1, m2) == pytest.approx(
                mutual_information(interp_model(m1, m2)), abs=1e-9
            ), (m1, m2)
            checks += 2
    for k in range(0, 41):
        v = k * 0.05
        # The adopted one-sided closed form must match the direct path;
        # this is the check that fixes its coefficient.
        assert i_banik_closed_form(v) == pytest.approx(i_banik(v), abs=1e-9), v
        checks += 1
    for k in range(0, 14):
        p = k / 40  # symmetric special case stays within its domain
        assert i_hall(6 * p) == pytest.approx(
            mutual_information(hall_model(p)), abs=1e-9
        ), p
        checks += 1
    for k in range(0, 41):
        z = VT / 3 * k / 40
        assert i_four(z) == pytest.approx(i_four_direct(z), abs=1e-9), z
        checks += 1
    for v in (0.2, 0.6, 1.0, VT, 1.4, 1.8):
        scan_m2, scan_bits = minimize_scalar(lambda m2: i_g(v - 2 * m2, m2), 0.0, v / 3)
        assert i_g_min(v).bits == pytest.approx(scan_bits, abs=1e-9), v
        checks += 1
    announce(8, f"{checks} closed-form evaluations agree with the direct path to 1e-9")


def test_criterion_09_randomized_soundness():
    rng = random.Random(0)
    for k in range(1000):
        model = random_model(rng)
        report = measurement_dependence(model)
        assert check_inequality_chain(report), f"chain broken at model {k}"
        params = ModelParams(report.m1, report.m2, report.mhat1, report.mhat2)
        assert check_param_feasible(params).feasible, f"measured params infeasible at {k}"
        assert chsh_s(model) <= bound_four_param(params), f"bound violated at model {k}"
    announce(9, "1000 seeded random models never exceed the four-parameter bound")


def test_criterion_10_reductions():
    for k in range(11):
        m = F(k, 5)
        assert bound_two_param(m, m) == bound_hall(m)
        assert bound_two_param(m, 0) == bound_banik(m)

    def columns(model):
        return {uv: model.cond.column(*uv) for uv in JOINT_SETTINGS}

    for m1, m2 in TWO_PARAM_GRID:
        if m2 > m1:
            continue
        assert columns(four_param_model(ModelParams(m1, m2, m1, m2))) == columns(
            two_param_model(m1, m2)
        ), (m1, m2)

    # Interp special cases against the published symmetric / one-sided tables.
    for k in range(0, 7):
        p = F(k, 20)
        expected = {
            ("x", "y"): (p, p, p, F(0), 1 - 3 * p),
            ("x", "y'"): (p, p, F(0), p, 1 - 3 * p),
            ("x'", "y"): (p, F(0), p, p, 1 - 3 * p),
            ("x'", "y'"): (F(0), p, p, p, 1 - 3 * p),
        }
        assert columns(interp_model(2 * p, 2 * p)) == expected, p
        assert columns(hall_model(p)) == expected, p
    for k in range(0, 11):
        p = F(k, 10)
        expected = {
            ("x", "y"): (F(0), F(0), F(0), F(0), F(1)),
            ("x", "y'"): (F(0), F(0), F(0), F(0), F(1)),
            ("x'", "y"): (F(0), F(0), p, F(0), 1 - p),
            ("x'", "y'"): (F(0), F(0), p, F(0), 1 - p),
        }
        assert columns(interp_model(2 * p, F(0))) == expected, p
        assert columns(banik_model(p)) == expected, p

    # Mixture identity on the low-violation region.
    mixtures = 0
    for i in range(1, 7):
        p1 = F(i, 20)
        for j in range(0, i + 1):
            p2 = F(j, 20)
            if p1 + 2 * p2 > 1:
                continue
            w = p2 / p1
            mixed = columns(interp_model(2 * p1, 2 * p2))
            hall_cols = columns(hall_model(p1))
            banik_cols = columns(banik_model(p1))
            for uv in JOINT_SETTINGS:
                assert mixed[uv] == tuple(
                    w * h + (1 - w) * b for h, b in zip(hall_cols[uv], banik_cols[uv])
                ), (p1, p2, uv)
            mixtures += 1
    announce(10, f"bound and table reductions hold; {mixtures} mixture points verified")
