import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghzgain import (
    BathModel,
    BranchError,
    DomainError,
    InfeasibleTimingError,
    TimingConfig,
    UnsupportedModelError,
    coherence_time,
    decay_exponent,
    optimal_sensing_time,
    stationarity_residual,
    tau_opt_isolated,
    tau_opt_markov,
    tau_opt_nonmarkov,
    tau_opt_numeric,
)

DEPHASING_MODELS = [
    BathModel.markovian(1.0),
    BathModel.nonmarkovian(1.0),
    BathModel.ohmic(0.05, 20.0, 0.5),
]


def rate(model, tau_tilde, n_eff, tau):
    """Information rate of an n_eff-particle entangled block."""
    g = decay_exponent(model, tau)
    return n_eff**2 * tau**2 * math.exp(-2.0 * n_eff * g) / (tau_tilde + tau)


class TestTimingConfig:
    def test_tau_tilde_is_the_sum(self):
        cfg = TimingConfig(tau_prep=0.2, tau_meas=0.1, total_time=10.0)
        assert cfg.tau_tilde == pytest.approx(0.3)

    def test_negative_times_rejected(self):
        with pytest.raises(DomainError):
            TimingConfig(tau_prep=-0.1)

    def test_budget_must_exceed_overhead(self):
        with pytest.raises(DomainError):
            TimingConfig(tau_prep=0.5, tau_meas=0.5, total_time=1.0)


class TestIsolated:
    def test_subtraction(self):
        assert tau_opt_isolated(1.0, 0.2).tau_opt == pytest.approx(0.8)

    def test_zero_overhead(self):
        assert tau_opt_isolated(1.0, 0.0).tau_opt == 1.0

    def test_boundary_is_infeasible(self):
        with pytest.raises(InfeasibleTimingError):
            tau_opt_isolated(1.0, 1.0)


class TestMarkovClosedForm:
    def test_half_coherence_time(self):
        assert tau_opt_markov(1.0, 0.0, 1).tau_opt == pytest.approx(0.5)

    def test_block_scaling(self):
        assert tau_opt_markov(1.0, 0.0, 10).tau_opt == pytest.approx(0.05)

    def test_stationarity_residual_vanishes(self):
        opt = tau_opt_markov(1.0, 0.3, 4)
        assert abs(opt.residual) < 1e-12

    def test_decreasing_in_block_size(self):
        taus = [tau_opt_markov(1.0, 0.3, n).tau_opt for n in (1, 10, 1000, 10**6)]
        assert all(b < a for a, b in zip(taus, taus[1:]))
        assert taus[-1] < 1e-5

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            tau_opt_markov(0.0, 0.1, 1)
        with pytest.raises(DomainError):
            tau_opt_markov(1.0, -0.1, 1)
        with pytest.raises(DomainError):
            tau_opt_markov(1.0, 0.1, 0)


class TestNonMarkovClosedForm:
    def test_half_block_coherence_time(self):
        assert tau_opt_nonmarkov(1.0, 0.0, 1).tau_opt == pytest.approx(0.5)

    def test_block_scaling(self):
        assert tau_opt_nonmarkov(1.0, 0.0, 4).tau_opt == pytest.approx(0.25)

    def test_agrees_with_numeric_optimiser(self):
        closed = tau_opt_nonmarkov(2.0, 0.4, 8)
        numeric = tau_opt_numeric(BathModel.nonmarkovian(2.0), 0.4, 8, 1e-8)
        assert closed.tau_opt == pytest.approx(numeric.tau_opt, rel=1e-8)
        assert abs(closed.residual) < 1e-10

    def test_branch_rejection_reports_all_roots(self):
        # absurd overhead/block size drives the root assembly past the
        # realness tolerance; the candidates come along for diagnosis
        with pytest.raises(BranchError) as info:
            tau_opt_nonmarkov(7.5, 1e4, 10**6)
        assert len(info.value.candidates) == 3

    def test_dispatcher_falls_back_to_numeric(self):
        model = BathModel.nonmarkovian(7.5)
        opt = optimal_sensing_time(model, 1e4, 10**6)
        assert abs(stationarity_residual(model, 1e4, 10**6, opt.tau_opt)) < 1e-9


class TestNumeric:
    def test_matches_markov_closed_form(self):
        closed = tau_opt_markov(1.0, 0.3, 4)
        numeric = tau_opt_numeric(BathModel.markovian(1.0), 0.3, 4, 1e-8)
        assert numeric.tau_opt == pytest.approx(closed.tau_opt, rel=1e-8)

    def test_quadratic_law_analytic_point(self):
        opt = tau_opt_numeric(BathModel.nonmarkovian(1.0), 0.0, 1, 1e-8)
        assert abs(opt.tau_opt - 0.5) < 5e-9

    def test_ohmic_stationarity(self):
        model = BathModel.ohmic(0.05, 20.0, 0.5)
        opt = tau_opt_numeric(model, 0.1, 3, 1e-10)
        assert abs(opt.residual) < 1e-8

    def test_isolated_unsupported(self):
        with pytest.raises(UnsupportedModelError):
            tau_opt_numeric(BathModel.isolated(1.0), 0.1, 1, 1e-8)

    def test_bad_tolerance(self):
        with pytest.raises(DomainError):
            tau_opt_numeric(BathModel.markovian(1.0), 0.1, 1, 0.0)

    @pytest.mark.parametrize("g_or_e", [0.25, 0.5, 1.0, 2.0, 4.0])
    @pytest.mark.parametrize("tau_tilde", [0.0, 0.05, 0.2, 1.0, 3.0])
    @pytest.mark.parametrize("n_eff", [1, 10, 100])
    def test_closed_forms_agree_on_grid(self, g_or_e, tau_tilde, n_eff):
        markov = BathModel.markovian(g_or_e)
        closed = tau_opt_markov(g_or_e, tau_tilde, n_eff)
        numeric = tau_opt_numeric(markov, tau_tilde, n_eff, 1e-8)
        assert numeric.tau_opt == pytest.approx(closed.tau_opt, rel=1e-8)

        nonmark = BathModel.nonmarkovian(g_or_e)
        closed = tau_opt_nonmarkov(g_or_e, tau_tilde, n_eff)
        numeric = tau_opt_numeric(nonmark, tau_tilde, n_eff, 1e-8)
        assert numeric.tau_opt == pytest.approx(closed.tau_opt, rel=1e-8)


class TestStationarityResidual:
    def test_zero_at_markov_optimum(self):
        value = stationarity_residual(BathModel.markovian(1.0), 0.0, 1, 0.5)
        assert value == pytest.approx(0.0, abs=1e-15)

    def test_direct_evaluation(self):
        value = stationarity_residual(BathModel.nonmarkovian(1.0), 0.0, 1, 0.25)
        assert value == pytest.approx(-0.75)

    def test_sign_change_across_the_optimum(self):
        for model in DEPHASING_MODELS:
            t_c = coherence_time(model)
            opt = optimal_sensing_time(model, 0.4 * t_c, 3)
            assert stationarity_residual(model, 0.4 * t_c, 3, 0.5 * opt.tau_opt) < 0.0
            assert stationarity_residual(model, 0.4 * t_c, 3, 2.0 * opt.tau_opt) > 0.0

    def test_nonpositive_time_rejected(self):
        with pytest.raises(DomainError):
            stationarity_residual(BathModel.markovian(1.0), 0.1, 1, 0.0)


class TestInteriorMaximum:
    @pytest.mark.parametrize("model", DEPHASING_MODELS, ids=lambda m: m.kind.value)
    @pytest.mark.parametrize("overhead_factor", [0.0, 0.1, 1.0])
    def test_residual_tiny_and_neighbours_lower(self, model, overhead_factor):
        t_c = coherence_time(model)
        tau_tilde = overhead_factor * t_c
        for n_eff in (1, 5):
            opt = optimal_sensing_time(model, tau_tilde, n_eff)
            assert abs(opt.residual) <= 1e-10
            best = rate(model, tau_tilde, n_eff, opt.tau_opt)
            for sign in (-1.0, 1.0):
                neighbour = opt.tau_opt * (1.0 + sign * 1e-4)
                assert rate(model, tau_tilde, n_eff, neighbour) < best

    def test_objective_field_matches_rate(self):
        model = BathModel.markovian(2.0)
        opt = optimal_sensing_time(model, 0.3, 4)
        assert opt.objective == pytest.approx(rate(model, 0.3, 4, opt.tau_opt), rel=1e-12)


@given(
    gamma=st.floats(1e-3, 1e3),
    tau_tilde=st.floats(0.0, 1e2),
    n_eff=st.integers(1, 10**6),
)
@settings(max_examples=300, deadline=None)
def test_markov_closed_form_always_stationary(gamma, tau_tilde, n_eff):
    opt = tau_opt_markov(gamma, tau_tilde, n_eff)
    assert opt.tau_opt > 0.0
    assert abs(opt.residual) < 1e-9


# domain kept inside the closed form's certified envelope (scaled
# overhead tau_tilde*sqrt(n*eta) up to ~1e5); beyond it the dispatcher
# falls back to the numeric optimiser, covered separately above
@given(
    eta=st.floats(1e-3, 1e2),
    tau_tilde=st.floats(0.0, 10.0),
    n_eff=st.integers(1, 10**6),
)
@settings(max_examples=300, deadline=None)
def test_nonmarkov_closed_form_always_stationary(eta, tau_tilde, n_eff):
    opt = tau_opt_nonmarkov(eta, tau_tilde, n_eff)
    assert opt.tau_opt > 0.0
    assert abs(opt.residual) < 1e-9
