import math

import numpy as np
import pytest

from qclock import (ClockPOVM, IncompatibleStates, InvalidArgument,
                    InvalidDistribution, MeasurementRecord, NoEstimate,
                    OutcomeDistribution, RationalRatio, build_equally_spaced,
                    build_rational, circular_mean, estimate_time, evolve,
                    outcome_probabilities, sample, time_state, with_estimate)

from oracles import circular_mean_naive


def test_grid_state_gives_kronecker_delta(nat):
    spec = build_equally_spaced(4, 1.0, nat)
    povm = ClockPOVM(spec, 4, 0.0)
    for k in range(5):
        state = time_state(spec, float(povm.tau_grid[k]))
        dist = outcome_probabilities(state, povm)
        expected = np.zeros(5)
        expected[k] = 1.0
        assert np.max(np.abs(dist.probs - expected)) < 1e-12


def test_energy_ground_state_is_uniform(nat):
    # E_0 = 0, so |<tau_m|E_0>|^2 = 1/(p+1) for every m and any z
    spec = build_equally_spaced(3, 1.0, nat)
    for z in (3, 7, 12):
        povm = ClockPOVM(spec, z, 0.0)
        psi = np.zeros(spec.dimension, dtype=complex)
        psi[0] = 1.0
        dist = outcome_probabilities(psi, povm)
        assert np.max(np.abs(dist.probs - 1.0 / (z + 1))) < 1e-12


def test_two_level_midgrid_closed_form(nat):
    # z = p = 1: P(m) = cos^2(pi (t - tau_m)/T), frozen from the brute-force
    # inner-product oracle at T = 2, t = 0.3
    spec = build_equally_spaced(1, 2.0, nat)
    povm = ClockPOVM(spec, 1, 0.0)
    dist = outcome_probabilities(time_state(spec, 0.3), povm)
    assert dist.probs[0] == pytest.approx(0.7938926261462367, abs=1e-12)
    assert dist.probs[1] == pytest.approx(0.20610737385376346, abs=1e-12)
    for m, tau_m in enumerate(povm.tau_grid):
        assert dist.probs[m] == pytest.approx(
            math.cos(math.pi * (0.3 - tau_m) / spec.T) ** 2, abs=1e-12)


def test_probabilities_sum_to_one_when_complete(nat, rng):
    spec = build_rational([RationalRatio(5, 3), RationalRatio(7, 2)], 1.0, nat)
    povm = ClockPOVM(spec, spec.r[-1], 0.1)  # z+1 = r_p + 1 > r_p
    for _ in range(5):
        dist = outcome_probabilities(time_state(spec, float(rng.uniform(0, spec.T))), povm)
        assert abs(dist.probs.sum() - 1.0) < 1e-10


def test_mismatched_state_rejected(nat):
    povm = ClockPOVM(build_equally_spaced(3, 1.0, nat), 3)
    other = time_state(build_equally_spaced(4, 1.0, nat), 0.0)
    with pytest.raises(IncompatibleStates):
        outcome_probabilities(other, povm)
    with pytest.raises(IncompatibleStates):
        outcome_probabilities(np.ones(7) / math.sqrt(7), povm)
    with pytest.raises(InvalidArgument):
        outcome_probabilities(np.ones(4), povm)  # not normalized


def test_statistics_shift_covariance(nat, rng):
    # evolving by T/(z+1) rotates the outcome distribution by one index
    spec = build_rational([RationalRatio(3, 2), RationalRatio(2, 1)], 1.0, nat)
    z = spec.r[-1]
    povm = ClockPOVM(spec, z, float(rng.uniform(0, spec.T)))
    state = time_state(spec, float(rng.uniform(0, spec.T)))
    before = outcome_probabilities(state, povm).probs
    after = outcome_probabilities(evolve(state, spec.T / (z + 1)), povm).probs
    assert np.max(np.abs(after - np.roll(before, 1))) < 1e-10


# --- sampling -----------------------------------------------------------------

def test_sample_deterministic_distribution(nat):
    spec = build_equally_spaced(4, 1.0, nat)
    povm = ClockPOVM(spec, 4, 0.0)
    dist = outcome_probabilities(time_state(spec, float(povm.tau_grid[2])), povm)
    rec = sample(dist, 1000, seed=99)
    assert rec.counts[2] == 1000
    assert rec.counts.sum() == 1000


def test_sample_seed_reproducibility(nat):
    spec = build_equally_spaced(3, 1.0, nat)
    povm = ClockPOVM(spec, 9, 0.0)
    dist = outcome_probabilities(time_state(spec, 0.21), povm)
    a = sample(dist, 5000, seed=7)
    b = sample(dist, 5000, seed=7)
    c = sample(dist, 5000, seed=8)
    assert np.array_equal(a.counts, b.counts)
    assert not np.array_equal(a.counts, c.counts)


def test_sample_uniform_within_five_sigma(nat):
    spec = build_equally_spaced(3, 1.0, nat)
    z = 7
    povm = ClockPOVM(spec, z, 0.0)
    psi = np.zeros(spec.dimension, dtype=complex)
    psi[0] = 1.0
    dist = outcome_probabilities(psi, povm)
    shots = 10**5
    rec = sample(dist, shots, seed=123)
    p = 1.0 / (z + 1)
    sigma = math.sqrt(p * (1 - p) / shots)
    freq = rec.counts / shots
    assert np.max(np.abs(freq - p)) < 5 * sigma


def test_sample_rejects_bad_distribution(nat):
    dist = OutcomeDistribution(np.array([0.5, 0.3]), np.array([0.0, 0.5]), 1.0)
    with pytest.raises(InvalidDistribution):
        sample(dist, 10, seed=1)
    good = OutcomeDistribution(np.array([0.5, 0.5]), np.array([0.0, 0.5]), 1.0)
    with pytest.raises(InvalidArgument):
        sample(good, 0, seed=1)


def test_sample_renormalizes_small_drift(nat):
    drift = 1 + 2e-7
    dist = OutcomeDistribution(np.array([0.5 * drift, 0.5 * drift]),
                               np.array([0.0, 0.5]), 1.0)
    rec = sample(dist, 100, seed=4)
    assert rec.counts.sum() == 100


# --- estimation ----------------------------------------------------------------

def test_estimate_single_outcome_returns_tau_k(nat):
    spec = build_equally_spaced(4, 1.0, nat)
    povm = ClockPOVM(spec, 4, 0.0)
    for k in range(5):
        dist = outcome_probabilities(time_state(spec, float(povm.tau_grid[k])), povm)
        rec = sample(dist, 250, seed=k)
        assert estimate_time(rec) == pytest.approx(povm.tau_grid[k], abs=1e-12)


def test_estimate_wraparound_is_zero_not_half_period(nat):
    T = 1.0
    delta = 0.01
    rec = MeasurementRecord(seed=0, shots=200,
                            counts=np.array([100, 100]),
                            tau_grid=np.array([T - delta, delta]), T=T)
    est = estimate_time(rec)
    dist_to_zero = min(est, T - est)
    assert dist_to_zero < 1e-12
    assert abs(est - T / 2) > 0.4  # nowhere near the naive linear mean


def test_estimate_matches_naive_circular_mean(nat, rng):
    taus = np.sort(rng.uniform(0, 1.0, size=6))
    counts = rng.integers(1, 50, size=6)
    rec = MeasurementRecord(seed=0, shots=int(counts.sum()),
                            counts=counts, tau_grid=taus, T=1.0)
    assert estimate_time(rec) == pytest.approx(
        circular_mean_naive(counts, taus, 1.0), abs=1e-12)


def test_estimate_rejects_uniform_data(nat):
    rec = MeasurementRecord(seed=0, shots=4, counts=np.array([1, 1, 1, 1]),
                            tau_grid=np.array([0.0, 0.25, 0.5, 0.75]), T=1.0)
    with pytest.raises(NoEstimate):
        estimate_time(rec)


def test_estimate_recovers_continuous_time(nat):
    # |t> on the z = p = 15 clock, 10^4 shots, fixed seed
    spec = build_equally_spaced(15, 1.0, nat)
    povm = ClockPOVM(spec, 15, 0.0)
    t_true = 0.2371
    dist = outcome_probabilities(time_state(spec, t_true), povm)
    rec = with_estimate(sample(dist, 10**4, seed=314159))
    err = abs(rec.estimate - t_true)
    err = min(err, spec.T - err)
    assert err < 2 * spec.T / (spec.p + 1)
    assert rec.estimate_error is not None and rec.estimate_error > 0


def test_circular_mean_error_shrinks_with_shots(nat):
    spec = build_equally_spaced(7, 1.0, nat)
    povm = ClockPOVM(spec, 7, 0.0)
    dist = outcome_probabilities(time_state(spec, 0.4), povm)
    _, err_small = circular_mean(sample(dist, 100, seed=5))
    _, err_big = circular_mean(sample(dist, 10**4, seed=5))
    assert err_big < err_small
