"""Saturating model constructions: round trips, regions, reductions."""

import math
import random
from fractions import Fraction as F
from itertools import product

import pytest

from mdbell import (
    InfeasibleParamsError,
    ModelParams,
    banik_model,
    bound_two_param,
    bound_four_param,
    check_param_feasible,
    chsh_s,
    four_param_model,
    hall_model,
    interp_model,
    measurement_dependence,
    two_param_model,
    validate_model,
)
from mdbell.model import JOINT_SETTINGS

VT = 2 * (math.sqrt(2) - 1)
TENTHS = [F(k, 10) for k in range(21)]  # 0, 0.1, ..., 2


def columns(model):
    return {uv: model.cond.column(*uv) for uv in JOINT_SETTINGS}


class TestTwoParamModel:
    def test_symmetric_optimum_structure(self):
        # At M1 = M2 = V_T/3 every column holds (1+m)/4 three times and
        # (1-3m)/4 once, with m = V_T/6.
        model = two_param_model(VT / 3, VT / 3)
        m = VT / 6
        hi, lo = (1 + m) / 4, (1 - 3 * m) / 4
        for uv in JOINT_SETTINGS:
            col = sorted(model.cond.column(*uv))
            assert col[0] == pytest.approx(lo, abs=1e-12)
            for entry in col[1:]:
                assert entry == pytest.approx(hi, abs=1e-12)
        assert chsh_s(model) == pytest.approx(2 * math.sqrt(2), abs=1e-12)

    def test_degenerate_input_gives_uniform_table(self):
        model = two_param_model(F(0), F(0))
        for uv in JOINT_SETTINGS:
            assert model.cond.column(*uv) == (F(1, 4),) * 4
        assert chsh_s(model) == 2

    def test_maximal_dependence(self):
        # Second coefficient branch: the largest entry hits 1.
        model = two_param_model(F(2), F(2))
        assert chsh_s(model) == 4
        assert max(model.cond.column("x", "y")) == 1

    def test_round_trip_on_tenth_grid(self):
        for m1 in TENTHS:
            for m2 in TENTHS:
                model = two_param_model(m1, m2)
                assert validate_model(model).ok, (m1, m2)
                report = measurement_dependence(model)
                assert (report.m1, report.m2) == (m1, m2)
                assert report.m == max(m1, m2)
                assert chsh_s(model) == bound_two_param(m1, m2)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            two_param_model(F(5, 2), F(0))


class TestFourParamModel:
    def test_reduces_to_two_param_table(self):
        for m1, m2 in ((F(1, 2), F(1, 5)), (F(9, 5), F(9, 5)), (F(2), F(1))):
            four = four_param_model(ModelParams(m1, m2, m1, m2))
            two = two_param_model(m1, m2)
            assert columns(four) == columns(two), (m1, m2)

    def test_constant_violation_family(self):
        for z in (0.0, 0.1, 0.2, VT / 3):
            m = VT / 3 + 2 * z
            hat = VT / 3 - z
            model = four_param_model(ModelParams(m, m, hat, hat))
            assert chsh_s(model) == pytest.approx(2 + VT, abs=1e-12)

    def test_saturated_corner_is_deterministic(self):
        model = four_param_model(ModelParams(F(2), F(2), F(2), F(2)))
        assert chsh_s(model) == 4
        # Correction coefficient (M2 + Mhat1 + Mhat2 - 2)/8 = 1/2 turns the
        # table into a permutation matrix.
        cols = columns(model)
        assert cols[("x", "y")] == (F(1), F(0), F(0), F(0))
        assert cols[("x'", "y'")] == (F(0), F(0), F(0), F(1))

    def test_round_trip_on_fifth_grid(self):
        vals = [F(k, 5) for k in range(0, 11, 2)]
        count = 0
        for m1, m2, h1, h2 in product(vals, repeat=4):
            params = ModelParams(m1, m2, h1, h2)
            if not check_param_feasible(params).feasible:
                continue
            count += 1
            model = four_param_model(params)
            assert validate_model(model).ok, params
            report = measurement_dependence(model)
            assert (report.m1, report.m2) == (m1, m2), params
            assert (report.mhat1, report.mhat2) == (h1, h2), params
            assert chsh_s(model) == bound_four_param(params), params
        assert count == 349

    def test_random_feasible_tenth_grid_points(self):
        rng = random.Random(11)
        done = 0
        while done < 250:
            params = ModelParams(*(F(rng.randint(0, 20), 10) for _ in range(4)))
            if not check_param_feasible(params).feasible:
                continue
            done += 1
            model = four_param_model(params)
            assert validate_model(model).ok, params
            report = measurement_dependence(model)
            measured = (report.m1, report.m2, report.mhat1, report.mhat2)
            assert measured == (params.m1, params.m2, params.hat1, params.hat2)
            assert chsh_s(model) == bound_four_param(params)

    def test_correction_vanishes_at_the_threshold(self):
        # Entries are continuous across M2 + Mhat1 + Mhat2 = 2: approach the
        # threshold from above and compare with the value exactly on it.
        at = four_param_model(ModelParams(F(2), F(1), F(1, 2), F(1, 2)))
        eps = F(1, 10**9)
        above = four_param_model(ModelParams(F(2), F(1), F(1, 2), F(1, 2) + eps))
        for uv in JOINT_SETTINGS:
            for a, b in zip(at.cond.column(*uv), above.cond.column(*uv)):
                assert abs(a - b) <= 2 * eps

    def test_infeasible_params_rejected(self):
        with pytest.raises(InfeasibleParamsError):
            four_param_model(ModelParams(F(2), F(0), F(0), F(0)))


class TestInterpModel:
    def test_matches_symmetric_special_case(self):
        for k in range(7):
            p = F(k, 20)  # p <= 0.3 < 1/3
            assert columns(interp_model(2 * p, 2 * p)) == columns(hall_model(p))

    def test_matches_one_sided_special_case(self):
        for k in range(11):
            p = F(k, 10)
            assert columns(interp_model(2 * p, F(0))) == columns(banik_model(p))

    def test_symmetric_table_above_two_thirds(self):
        # For M1 = M2 = M >= 2/3 the high-dependence table collapses to a
        # single parameter (2 - M)/4.
        m = F(3, 2)
        model = interp_model(m, m)
        p1 = (2 - m) / 4
        half = (1 - p1) / 2
        assert columns(model) == {
            ("x", "y"): (p1, half, half, F(0), F(0)),
            ("x", "y'"): (half, p1, F(0), half, F(0)),
            ("x'", "y"): (half, F(0), p1, half, F(0)),
            ("x'", "y'"): (F(0), half, half, p1, F(0)),
        }

    def test_round_trip_on_tenth_grid(self):
        for m1 in TENTHS:
            for m2 in TENTHS:
                model = interp_model(m1, m2)
                assert validate_model(model).ok, (m1, m2)
                report = measurement_dependence(model)
                assert (report.m1, report.m2) == (m1, m2), (m1, m2)
                assert chsh_s(model) == bound_two_param(m1, m2), (m1, m2)

    def test_mixture_identity_on_low_violation_region(self):
        # interp(2p1, 2p2) = w * symmetric(p1) + (1 - w) * one-sided(p1),
        # with w = p2/p1, wherever the symmetric table exists.
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
                    expect = tuple(
                        w * h + (1 - w) * b for h, b in zip(hall_cols[uv], banik_cols[uv])
                    )
                    assert mixed[uv] == expect, (p1, p2, uv)

    def test_region_boundary_dispatch_is_consistent(self):
        # On the shared boundary M1 + 2 M2 = 2 both region tables are valid
        # saturating models with identical measured quantities, so the fixed
        # dispatch precedence (low region wins its closed boundary) is safe.
        from mdbell.constructors import _OUTCOMES_5, _rows_to_columns
        from mdbell import HiddenVariableModel, SettingsDistribution

        for m2 in (F(1, 5), F(2, 5), F(3, 5)):
            m1 = 2 - 2 * m2
            low = interp_model(m1, m2)  # dispatched to the closed low region
            # Rebuild the high-region table directly at the same point.
            p1, p2, zero = m1 / 2, m2 / 2, F(0)
            half = (1 - p1) / 2
            rows = (
                (p2, p2, half, zero),
                (p2, p2, zero, half),
                (p2, zero, half, half),
                (zero, p2, p1, p1),
                (1 - 3 * p2, 1 - 3 * p2, zero, zero),
            )
            high = HiddenVariableModel(
                _OUTCOMES_5, _rows_to_columns(rows), SettingsDistribution.uniform()
            )
            assert validate_model(low).ok and validate_model(high).ok
            rep_low = measurement_dependence(low)
            rep_high = measurement_dependence(high)
            for attr in ("m1", "m2", "m", "mhat1", "mhat2"):
                assert getattr(rep_low, attr) == getattr(rep_high, attr), (m2, attr)
            assert chsh_s(low) == chsh_s(high) == bound_two_param(m1, m2)

    def test_special_case_domains(self):
        with pytest.raises(ValueError):
            hall_model(F(2, 5))  # above 1/3
        with pytest.raises(ValueError):
            banik_model(F(11, 10))


def test_float_and_rational_paths_agree():
    exact = two_param_model(F(2, 5), F(1, 5))
    approx = two_param_model(0.4, 0.2)
    for uv in JOINT_SETTINGS:
        for a, b in zip(exact.cond.column(*uv), approx.cond.column(*uv)):
            assert float(a) == pytest.approx(b, abs=1e-15)
