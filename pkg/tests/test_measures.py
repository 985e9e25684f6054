"""Correlations, the CHSH parameter, and dependence measures."""

import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdbell import (
    ModelParams,
    bound_four_param,
    check_inequality_chain,
    check_param_feasible,
    chsh_s,
    correlation,
    distinguish_probability,
    four_param_model,
    interp_model,
    measurement_dependence,
    swap_parties,
    two_param_model,
    variational_distance,
)
from mdbell.verify import random_model

VT = 2 * (math.sqrt(2) - 1)


class TestVariationalDistance:
    def test_identical_distributions(self):
        assert variational_distance((F(1, 2), F(1, 2)), (F(1, 2), F(1, 2))) == 0

    def test_disjoint_support_is_maximal(self):
        assert variational_distance((1, 0, 0, 0), (0, 1, 0, 0)) == 2

    def test_plain_sum_of_differences(self):
        assert variational_distance((0.5, 0.5), (0.25, 0.75)) == pytest.approx(0.5)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            variational_distance((1,), (F(1, 2), F(1, 2)))


class TestDistinguishProbability:
    def test_endpoints(self):
        assert distinguish_probability(0) == F(1, 2)
        assert distinguish_probability(2) == 1
        assert distinguish_probability(1) == F(3, 4)

    def test_float_path(self):
        assert distinguish_probability(0.5) == pytest.approx(0.625)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            distinguish_probability(-0.1)
        with pytest.raises(ValueError):
            distinguish_probability(2.5)


class TestCorrelation:
    def test_perfectly_correlated_setting(self):
        # A(x) B(y) = +1 on every hidden-variable value.
        from mdbell import ConditionalTable, HiddenVariableModel, OutcomeTable
        from mdbell.model import JOINT_SETTINGS

        unit = HiddenVariableModel(
            OutcomeTable(alice={"x": (1,), "x'": (1,)}, bob={"y": (1,), "y'": (-1,)}),
            ConditionalTable({uv: (F(1),) for uv in JOINT_SETTINGS}),
        )
        assert correlation(unit, "x", "y") == 1

    def test_uniform_two_param_model(self):
        model = two_param_model(F(0), F(0))
        assert correlation(model, "x", "y") == F(1, 2)

    def test_one_sided_interp_limit(self):
        # Only two hidden-variable values carry weight; the x'y' column pays
        # -p1 on one and +(1 - p1) on the other, so <ab> = 1 - 2 p1.
        model = interp_model(VT, 0.0)
        assert correlation(model, "x'", "y'") == pytest.approx(3 - 2 * math.sqrt(2), abs=1e-12)


class TestChsh:
    def test_tsirelson_point(self):
        model = two_param_model(VT / 3, VT / 3)
        assert chsh_s(model) == pytest.approx(2 * math.sqrt(2), abs=1e-12)

    def test_no_dependence_reaches_the_classical_bound(self):
        assert chsh_s(two_param_model(F(0), F(0))) == 2

    def test_full_dependence_reaches_four(self):
        assert chsh_s(four_param_model(ModelParams(F(1), F(1), F(1), F(1)))) == 4


class TestMeasurementDependence:
    def test_two_param_report(self):
        report = measurement_dependence(two_param_model(F(1, 2), F(1, 5)))
        assert report.m1 == F(1, 2)
        assert report.m2 == F(1, 5)
        assert report.m == F(1, 2)
        assert report.mhat1 == F(1, 2)
        assert report.mhat2 == F(1, 5)
        assert report.f == 1 - F(1, 4)
        assert report.f1 == F(3, 4)
        assert report.f2 == F(9, 10)

    def test_measurement_independent_model(self):
        report = measurement_dependence(two_param_model(F(0), F(0)))
        assert report.m1 == report.m2 == report.m == 0
        assert report.mhat1 == report.mhat2 == 0
        assert report.f == report.f1 == report.f2 == 1

    def test_four_param_report_reproduces_request(self):
        params = ModelParams(F(1), F(4, 5), F(1, 2), F(2, 5))
        report = measurement_dependence(four_param_model(params))
        assert (report.m1, report.m2) == (F(1), F(4, 5))
        assert (report.mhat1, report.mhat2) == (F(1, 2), F(2, 5))

    def test_four_param_report_float_inputs(self):
        report = measurement_dependence(
            four_param_model(ModelParams(1.0, 0.8, 0.5, 0.4))
        )
        assert report.m1 == pytest.approx(1.0, abs=1e-12)
        assert report.m2 == pytest.approx(0.8, abs=1e-12)
        assert report.mhat1 == pytest.approx(0.5, abs=1e-12)
        assert report.mhat2 == pytest.approx(0.4, abs=1e-12)

    def test_per_setting_distances_bracket_the_extremes(self):
        report = measurement_dependence(interp_model(F(8, 5), F(2, 5)))
        assert report.m1 == max(report.m1_given.values())
        assert report.mhat1 == min(report.m1_given.values())
        assert report.m2 == max(report.m2_given.values())
        assert report.mhat2 == min(report.m2_given.values())


@settings(deadline=None, max_examples=120)
@given(seed=st.integers(0, 10**6), n=st.integers(1, 6))
def test_measured_models_obey_all_inequalities(seed, n):
    """Every valid model satisfies the dependence-measure constraints."""
    model = random_model(random.Random(seed), lambda_count=n)
    report = measurement_dependence(model)

    assert check_inequality_chain(report)
    assert max(report.m1, report.m2) <= report.m <= min(report.m1 + report.m2, 2)
    assert report.mhat1 <= report.m1
    assert report.mhat2 <= report.m2
    # Triangle constraints hold for measured values of any model.
    assert report.m1 - report.mhat1 <= report.m2 + report.mhat2
    assert report.m2 - report.mhat2 <= report.m1 + report.mhat1

    params = ModelParams(report.m1, report.m2, report.mhat1, report.mhat2)
    assert check_param_feasible(params).feasible
    assert chsh_s(model) <= bound_four_param(params)


@settings(deadline=None, max_examples=60)
@given(seed=st.integers(0, 10**6))
def test_swap_trades_parties(seed):
    model = random_model(random.Random(seed))
    before = measurement_dependence(model)
    after = measurement_dependence(swap_parties(model))
    assert chsh_s(swap_parties(model)) == chsh_s(model)
    assert (after.m1, after.m2) == (before.m2, before.m1)
    assert (after.mhat1, after.mhat2) == (before.mhat2, before.mhat1)
    assert after.m == before.m
