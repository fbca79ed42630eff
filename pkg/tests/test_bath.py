import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghzgain import (
    BathKind,
    BathModel,
    DomainError,
    ValidationError,
    coherence_time,
    decay_exponent,
    decay_exponent_derivative,
    ohmic_limit_rates,
)


def central_diff(model, tau, h):
    return (decay_exponent(model, tau + h) - decay_exponent(model, tau - h)) / (2 * h)


class TestDecayExponent:
    def test_isolated_is_zero(self):
        assert decay_exponent(BathModel.isolated(1.0), 0.7) == 0.0

    def test_markovian_linear(self):
        assert decay_exponent(BathModel.markovian(2.0), 0.5) == pytest.approx(1.0)

    def test_nonmarkovian_quadratic(self):
        assert decay_exponent(BathModel.nonmarkovian(4.0), 0.5) == pytest.approx(1.0)

    def test_ohmic_zero_time(self):
        assert decay_exponent(BathModel.ohmic(0.1, 10.0, 1.0), 0.0) == 0.0

    def test_ohmic_markovian_regime(self):
        # tau >> beta: the thermal term dominates and Gamma ~ (alpha pi/beta) tau
        model = BathModel.ohmic(0.01, 5.0, 0.01)
        gamma, _ = ohmic_limit_rates(0.01, 0.01, 5.0)
        value = decay_exponent(model, 1.0)
        assert abs(value - gamma * 1.0) / (gamma * 1.0) < 0.05

    def test_negative_time_rejected(self):
        with pytest.raises(DomainError):
            decay_exponent(BathModel.markovian(1.0), -0.1)

    def test_ohmic_no_overflow_over_many_decades(self):
        model = BathModel.ohmic(0.05, 20.0, 0.5)
        for exponent in range(-12, 9):
            value = decay_exponent(model, 10.0**exponent)
            assert math.isfinite(value) and value >= 0.0


class TestDerivative:
    def test_markovian_constant(self):
        assert decay_exponent_derivative(BathModel.markovian(3.0), 9.0) == 3.0

    def test_nonmarkovian_linear(self):
        assert decay_exponent_derivative(BathModel.nonmarkovian(4.0), 0.25) == pytest.approx(2.0)

    def test_ohmic_matches_finite_difference(self):
        model = BathModel.ohmic(0.1, 10.0, 1.0)
        exact = decay_exponent_derivative(model, 0.3)
        approx = central_diff(model, 0.3, 1e-6)
        assert abs(exact - approx) / abs(approx) < 1e-6

    def test_all_models_match_finite_differences_on_log_grid(self):
        models = [
            BathModel.markovian(1.3),
            BathModel.nonmarkovian(0.7),
            BathModel.ohmic(0.08, 12.0, 0.6),
        ]
        taus = [10 ** (-3 + 4 * i / 24) for i in range(25)]
        for model in models:
            for tau in taus:
                exact = decay_exponent_derivative(model, tau)
                approx = central_diff(model, tau, 1e-6 * tau)
                assert abs(exact - approx) <= 1e-6 * abs(approx), (model.kind, tau)

    def test_ohmic_zero_time_limit(self):
        assert decay_exponent_derivative(BathModel.ohmic(0.1, 10.0, 1.0), 0.0) == 0.0

    def test_negative_time_rejected(self):
        with pytest.raises(DomainError):
            decay_exponent_derivative(BathModel.nonmarkovian(1.0), -1e-9)


class TestCoherenceTime:
    def test_markovian(self):
        assert coherence_time(BathModel.markovian(4.0)) == pytest.approx(0.25)

    def test_nonmarkovian(self):
        assert coherence_time(BathModel.nonmarkovian(16.0)) == pytest.approx(0.25)

    def test_isolated_passthrough(self):
        assert coherence_time(BathModel.isolated(1.0)) == 1.0

    def test_ohmic_root_of_unit_exponent(self):
        model = BathModel.ohmic(0.05, 20.0, 0.5)
        t_c = coherence_time(model)
        assert decay_exponent(model, t_c) == pytest.approx(1.0, rel=1e-9)

    def test_ohmic_limits_recover_simple_laws(self):
        # deep Markovian regime: t_c should approach 1/gamma
        model = BathModel.ohmic(0.001, 5000.0, 1e-4)
        gamma, _ = ohmic_limit_rates(0.001, 1e-4, 5000.0)
        assert coherence_time(model) == pytest.approx(1.0 / gamma, rel=0.1)


class TestOhmicLimitRates:
    def test_direct_substitution(self):
        assert ohmic_limit_rates(1.0, math.pi, 2.0) == pytest.approx((1.0, 2.0))

    def test_zero_coupling(self):
        assert ohmic_limit_rates(0.0, 1.0, 1.0) == (0.0, 0.0)

    def test_high_precision_values(self):
        gamma, eta = ohmic_limit_rates(0.01, 0.5, 100.0)
        assert gamma == pytest.approx(0.06283185307179586, rel=1e-15)
        assert eta == pytest.approx(50.0, rel=1e-15)

    @pytest.mark.parametrize("beta,omega_c", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0)])
    def test_domain_errors(self, beta, omega_c):
        with pytest.raises(DomainError):
            ohmic_limit_rates(0.1, beta, omega_c)


class TestLimitConsistency:
    def test_markovian_limit_error_decreases(self):
        # fixed bath, growing tau/beta with omega_c tau >> 1 throughout
        alpha, omega_c, beta = 0.1, 1000.0, 0.01
        model = BathModel.ohmic(alpha, omega_c, beta)
        gamma = alpha * math.pi / beta
        ratios = [50.0 * (500.0 / 50.0) ** (i / 11) for i in range(12)]
        errors = []
        for ratio in ratios:
            tau = ratio * beta
            value = decay_exponent(model, tau)
            errors.append(abs(value - gamma * tau) / value)
        assert all(b < a for a, b in zip(errors, errors[1:]))

    def test_nonmarkovian_limit_agreement(self):
        # tau/beta <= 1e-3 and omega_c tau <= 1e-2 (beta omega_c = 100)
        alpha, omega_c, beta = 0.1, 100.0, 1.0
        model = BathModel.ohmic(alpha, omega_c, beta)
        eta = alpha * omega_c**2 / 2.0
        for i in range(20):
            tau = 10 ** (-7 + 3 * i / 19)
            value = decay_exponent(model, tau)
            assert abs(value - eta * tau * tau) / value <= 1e-3, tau


class TestModelValidation:
    def test_kinds_and_coherence_invariants(self):
        assert BathModel.markovian(2.0).kind is BathKind.MARKOVIAN
        assert coherence_time(BathModel.markovian(2.0)) == 0.5
        assert coherence_time(BathModel.nonmarkovian(4.0)) == 0.5

    @pytest.mark.parametrize(
        "factory",
        [
            lambda: BathModel.isolated(0.0),
            lambda: BathModel.markovian(-1.0),
            lambda: BathModel.nonmarkovian(0.0),
            lambda: BathModel.ohmic(0.0, 1.0, 1.0),
            lambda: BathModel(BathKind.MARKOVIAN),
            lambda: BathModel(BathKind.MARKOVIAN, gamma=1.0, t_c=1.0),
        ],
    )
    def test_invalid_models_rejected(self, factory):
        with pytest.raises(ValidationError):
            factory()

    def test_json_round_trip(self):
        for model in (
            BathModel.isolated(2.0),
            BathModel.markovian(0.5),
            BathModel.nonmarkovian(3.0),
            BathModel.ohmic(0.05, 20.0, 0.5),
        ):
            assert BathModel.from_dict(model.to_dict()) == model

    def test_from_dict_diagnostics(self):
        with pytest.raises(ValidationError, match="kind"):
            BathModel.from_dict({"gamma": 1.0})
        with pytest.raises(ValidationError, match="unknown bath kind"):
            BathModel.from_dict({"kind": "lindblad"})
        with pytest.raises(ValidationError, match="gamma"):
            BathModel.from_dict({"kind": "markovian"})
        with pytest.raises(ValidationError, match="t_c"):
            BathModel.from_dict({"kind": "markovian", "gamma": 1.0, "t_c": 2.0})


@given(
    alpha=st.floats(1e-4, 10.0),
    omega_c=st.floats(1e-2, 1e4),
    beta=st.floats(1e-4, 1e2),
    tau_lo=st.floats(0.0, 1e3),
    step=st.floats(1e-9, 1e3),
)
@settings(max_examples=200, deadline=None)
def test_ohmic_exponent_starts_at_zero_and_never_decreases(alpha, omega_c, beta, tau_lo, step):
    model = BathModel.ohmic(alpha, omega_c, beta)
    assert decay_exponent(model, 0.0) == 0.0
    assert decay_exponent(model, tau_lo + step) >= decay_exponent(model, tau_lo)


@pytest.mark.parametrize(
    "model",
    [
        BathModel.isolated(1.0),
        BathModel.markovian(1.0),
        BathModel.nonmarkovian(1.0),
        BathModel.ohmic(0.05, 20.0, 0.5),
    ],
)
def test_exponent_nondecreasing_up_to_ten_coherence_times(model):
    t_c = coherence_time(model)
    taus = [10.0 * t_c * i / 400 for i in range(401)]
    values = [decay_exponent(model, tau) for tau in taus]
    assert values[0] == 0.0
    assert all(b >= a for a, b in zip(values, values[1:]))
