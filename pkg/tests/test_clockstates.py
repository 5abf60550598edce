import math
from fractions import Fraction

import numpy as np
import pytest

from qclock import (ClockPOVM, IncompatibleStates, InvalidArgument,
                    RationalRatio, UnsupportedSpectrum, build_equally_spaced,
                    build_rational, continuous_identity_residual,
                    energy_shift_unitary, evolve, first_orthogonal_time,
                    grid_amplitudes, hermitian_time_operator,
                    identity_residual, overlap, rationalized_spectrum,
                    time_state)

from oracles import (first_zero_scan, frame_residual_naive, gram_matrix_naive,
                     random_rational_fracs)


def rat0621(consts=None):
    return build_rational([RationalRatio(5, 3), RationalRatio(7, 2)], 1.0, consts)


def rat014(consts=None):
    return build_rational([RationalRatio(4, 1)], 1.0, consts)


# --- time states --------------------------------------------------------------

def test_time_state_at_zero_is_uniform(nat):
    spec = build_equally_spaced(4, 1.0, nat)
    state = time_state(spec, 0.0)
    assert np.allclose(state.amplitudes, 1 / math.sqrt(5), rtol=0, atol=1e-15)
    assert abs(state.norm - 1.0) < 1e-12
    assert np.allclose(np.abs(state.amplitudes), 1 / math.sqrt(5), atol=1e-12)


def test_time_state_cyclic_after_full_period(nat):
    spec = rat0621(nat)
    a = time_state(spec, 0.0)
    b = time_state(spec, spec.T)
    assert np.max(np.abs(a.amplitudes - b.amplitudes)) < 1e-12


def test_time_state_two_level_half_period(nat):
    spec = build_equally_spaced(1, 2 * math.pi, nat)
    state = time_state(spec, math.pi)
    expected = np.array([1.0, -1.0]) / math.sqrt(2)
    assert np.max(np.abs(state.amplitudes - expected)) < 1e-12


def test_time_state_matches_naive_phases(nat, rng):
    # exact-reduction amplitudes agree with exp(-i E_n tau / hbar) directly
    for spec in (build_equally_spaced(6, 2.3, nat), rat0621(nat)):
        for _ in range(5):
            tau = float(rng.uniform(-2, 2)) * spec.T
            state = time_state(spec, tau)
            naive = np.exp(-1j * spec.levels * tau / spec.hbar) / math.sqrt(spec.dimension)
            assert np.max(np.abs(state.amplitudes - naive)) < 1e-12


# --- overlap -------------------------------------------------------------------

def test_overlap_normalization(nat):
    spec = rat0621(nat)
    state = time_state(spec, 0.37)
    assert overlap(state, state) == pytest.approx(1.0, abs=1e-14)


def test_overlap_orthogonal_on_grid(nat):
    spec = build_equally_spaced(5, 1.0, nat)
    grid = [time_state(spec, m * spec.T / 6) for m in range(6)]
    for i in range(6):
        for j in range(6):
            expected = 1.0 if i == j else 0.0
            assert abs(overlap(grid[i], grid[j]) - expected) < 1e-12


def test_overlap_cyclicity(nat):
    spec = rat0621(nat)
    a = time_state(spec, 0.2)
    b = time_state(spec, 0.2 + spec.T)
    assert overlap(a, b) == pytest.approx(1.0, abs=1e-12)


def test_overlap_rejects_mismatched_spectra(nat):
    a = time_state(build_equally_spaced(2, 1.0, nat), 0.0)
    b = time_state(build_equally_spaced(3, 1.0, nat), 0.0)
    with pytest.raises(IncompatibleStates):
        overlap(a, b)


def test_overlap_accepts_equal_value_spectra(nat):
    a = time_state(build_equally_spaced(2, 1.0, nat), 0.1)
    b = time_state(build_equally_spaced(2, 1.0, nat), 0.4)
    assert abs(overlap(a, b)) <= 1.0 + 1e-12


# --- evolve -------------------------------------------------------------------

def test_evolve_identity_cases(nat):
    spec = rat0621(nat)
    state = time_state(spec, 0.11)
    same = evolve(state, 0.0)
    assert np.array_equal(same.amplitudes, state.amplitudes)
    cycled = evolve(state, spec.T)
    assert np.max(np.abs(cycled.amplitudes - state.amplitudes)) < 1e-12


def test_evolve_shift_covariance(nat, rng):
    # dt = T/(z+1) maps grid state m to grid state m+1
    for spec in (build_equally_spaced(7, 1.0, nat), rat0621(nat), rat014(nat)):
        z = spec.r[-1]
        dt = spec.T / (z + 1)
        tau0 = float(rng.uniform(0, spec.T))
        for m in (0, 1, z - 1):
            here = time_state(spec, tau0 + m * dt)
            there = time_state(spec, tau0 + (m + 1) * dt)
            stepped = evolve(here, dt)
            assert np.max(np.abs(stepped.amplitudes - there.amplitudes)) < 1e-12


def test_evolve_exact_fraction_steps(nat):
    # Fraction dial times keep the reduction exact at any r_p
    fracs = random_rational_fracs(np.random.default_rng(7), 6)
    spec = build_rational([RationalRatio.from_fraction(f) for f in fracs], 1.0, nat)
    z = spec.r[-1]
    dt = Fraction(spec.T) / (z + 1)
    tau0 = Fraction(spec.T) * 7 / 13
    here = time_state(spec, tau0 + 4 * dt)
    there = time_state(spec, tau0 + 5 * dt)
    stepped = evolve(here, dt)
    assert np.max(np.abs(stepped.amplitudes - there.amplitudes)) < 1e-14


# --- completeness ---------------------------------------------------------------

def test_identity_residual_orthonormal_case(nat):
    spec = build_equally_spaced(4, 1.0, nat)
    assert identity_residual(spec, 4, 0.0) < 1e-12
    assert identity_residual(spec, 4, 0.789) < 1e-12


def test_identity_residual_rational_complete(nat):
    spec = rat0621(nat)
    assert identity_residual(spec, 21, 0.0) < 1e-12     # z+1 = 22 > r_p = 21
    assert identity_residual(spec, 21, 0.456) < 1e-12


def test_identity_residual_counterexample_pinned(nat):
    # r = (0, 1, 4), z+1 = 3: r_2 - r_1 = 3 is a multiple of z+1, one
    # off-diagonal geometric sum survives with unit weight -> residual 1
    spec = rat014(nat)
    assert identity_residual(spec, 2, 0.0) == pytest.approx(1.0, abs=1e-9)
    assert identity_residual(spec, 2, 0.37) == pytest.approx(1.0, abs=1e-9)


def test_identity_residual_matches_naive_assembly(nat, rng):
    for spec in (build_equally_spaced(3, 1.0, nat), rat0621(nat), rat014(nat)):
        for z in (spec.p, spec.p + 3, spec.r[-1]):
            tau0 = float(rng.uniform(0, spec.T))
            mine = identity_residual(spec, z, tau0)
            ref = frame_residual_naive(spec.levels, spec.hbar, spec.T, z + 1, tau0)
            assert mine == pytest.approx(ref, abs=1e-10)


def test_identity_residual_property_random_rational(nat, rng):
    for _ in range(40):
        p = int(rng.integers(1, 7))
        fracs = random_rational_fracs(rng, p)
        spec = build_rational([RationalRatio.from_fraction(f) for f in fracs],
                              float(rng.uniform(0.5, 2.0)), nat)
        tau0 = float(rng.uniform(0, spec.T))
        assert identity_residual(spec, spec.r[-1], tau0) < 1e-12


def test_identity_residual_failure_witness_family(nat):
    # r = (0, 1, k) with z+1 = k-1 dividing r_2 - r_1 = k-1
    for k in range(4, 14):
        spec = build_rational([RationalRatio(k, 1)], 1.0, nat)
        assert identity_residual(spec, k - 2, 0.3) > 0.1


def test_identity_residual_rejects_small_z(nat):
    spec = build_equally_spaced(4, 1.0, nat)
    with pytest.raises(InvalidArgument):
        identity_residual(spec, 3, 0.0)


def test_dense_assembly_dimension_cap(nat):
    spec = build_equally_spaced(4096, 1.0, nat)  # dimension 4097 > cap
    with pytest.raises(InvalidArgument):
        grid_amplitudes(spec, 4096)
    with pytest.raises(InvalidArgument):
        continuous_identity_residual(spec, 2 * 4098)


def test_gram_matrix_orthonormal(nat):
    for p in (1, 2, 7, 31):
        spec = build_equally_spaced(p, 2.0, nat)
        V = grid_amplitudes(spec, p, 0.123)
        gram = V.conj().T @ V
        assert np.max(np.abs(gram - np.eye(p + 1))) < 1e-12
        ref = gram_matrix_naive(spec.levels, spec.hbar,
                                0.123 + np.arange(p + 1) * spec.T / (p + 1))
        assert np.max(np.abs(gram - ref)) < 1e-10


# --- continuous limit -----------------------------------------------------------

def test_continuous_residual_equally_spaced(nat):
    spec = build_equally_spaced(2, 1.0, nat)
    assert continuous_identity_residual(spec, 64) < 1e-12


def test_continuous_residual_rational(nat):
    spec = rat0621(nat)
    assert continuous_identity_residual(spec, 64, 0.17) < 1e-12


def test_continuous_residual_nyquist_guard(nat):
    spec = rat0621(nat)  # r_p = 21 -> needs >= 44
    with pytest.raises(InvalidArgument):
        continuous_identity_residual(spec, 43)
    # below the guard the rule stays exact until sampling collides with a
    # frequency difference: first failure at N = r_p = 21
    for n in (43, 30, 22):
        assert continuous_identity_residual(spec, n, enforce_nyquist=False) < 1e-12
    assert continuous_identity_residual(spec, 21, enforce_nyquist=False) > 0.5


def test_continuous_residual_aliasing_witness(nat):
    spec = rat0621(nat)
    nyquist = 2 * (spec.r[-1] + 1)
    hits = [n for n in range(nyquist - 1, 1, -1)
            if continuous_identity_residual(spec, n, enforce_nyquist=False) > 1e-3]
    assert hits and max(hits) == 21


# --- Hermitian time operator ----------------------------------------------------

def test_time_operator_two_level_eigenvalues(nat):
    spec = build_equally_spaced(1, 2 * math.pi, nat)
    op = hermitian_time_operator(spec, 0.0)
    assert np.allclose(op.eigenvalues(), [0.0, math.pi], atol=1e-10)


def test_time_operator_hermitian_and_spectrum(nat, rng):
    spec = build_equally_spaced(5, 1.7, nat)
    tau0 = float(rng.uniform(0, spec.T))
    op = hermitian_time_operator(spec, tau0)
    assert np.max(np.abs(op.matrix - op.matrix.conj().T)) < 1e-12
    assert np.allclose(np.sort(op.eigenvalues()), np.sort(op.tau_grid), atol=1e-10)
    assert np.trace(op.matrix).real == pytest.approx(op.tau_grid.sum(), rel=1e-12)


def test_time_operator_generates_energy_shifts(nat):
    # exp(-i dE tau_hat/hbar) with dE = 2 pi hbar/T cyclically shifts the
    # energy basis by one step (down, with the e^{-i E tau} phase sign);
    # its adjoint shifts up.  Either way tau_hat generates energy shifts.
    spec = build_equally_spaced(4, 1.0, nat)
    op = hermitian_time_operator(spec, 0.0)
    d = spec.dimension
    U = energy_shift_unitary(op, 2 * math.pi * spec.hbar / spec.T)
    for n in range(d):
        target = (n - 1) % d
        assert abs(U[target, n]) == pytest.approx(1.0, abs=1e-12)
        assert np.max(np.abs(np.delete(U[:, n], target))) < 1e-12
    Uup = energy_shift_unitary(op, -2 * math.pi * spec.hbar / spec.T)
    for n in range(d):
        assert abs(Uup[(n + 1) % d, n]) == pytest.approx(1.0, abs=1e-12)


def test_time_operator_requires_equal_spacing(nat):
    with pytest.raises(UnsupportedSpectrum):
        hermitian_time_operator(rat0621(nat), 0.0)


# --- POVM object ----------------------------------------------------------------

def test_povm_elements_sum_to_identity(nat):
    spec = rat014(nat)
    povm = ClockPOVM(spec, spec.r[-1], 0.05)
    total = sum(povm.element(m) for m in range(povm.n_outcomes))
    assert np.max(np.abs(total - np.eye(spec.dimension))) < 1e-12
    assert povm.weight == Fraction(3, 5)


def test_povm_rejects_small_z(nat):
    with pytest.raises(InvalidArgument):
        ClockPOVM(build_equally_spaced(4, 1.0, nat), 3)


# --- rationalized spectra: residual decay ---------------------------------------

def test_residual_decay_with_epsilon(nat):
    # single irrational ratio: the continued-fraction route makes the
    # integer-frequency mismatch shrink steadily as epsilon drops
    levels = [0.0, 1.0, (1 + math.sqrt(5)) / 2]
    residuals = []
    for eps in (1e-2, 1e-3, 1e-4, 1e-5):
        spec = rationalized_spectrum(levels, eps, nat)
        residuals.append(identity_residual(spec, spec.r[-1], 0.0))
    assert residuals[0] > 1e-12  # the approximation is genuinely inexact
    assert all(a > b for a, b in zip(residuals, residuals[1:]))
    assert residuals[-1] < residuals[0] / 10


def test_residual_no_decay_guarantee_for_compound_lcm(nat):
    # with several independent irrationals the per-ratio denominators
    # multiply through the lcm, so r_1*eps need not shrink; the residual is
    # measured, not assumed.  Pin the observed non-collapse at eps = 1e-4.
    levels = [0.0, 1.0, math.e, math.pi]
    spec = rationalized_spectrum(levels, 1e-4, nat)
    res = identity_residual(spec, spec.r[-1], 0.0)
    assert res > 0.1  # lcm(106, 113)-scale frequencies, eps*r_1 of order one


# --- first orthogonal time ------------------------------------------------------

@pytest.mark.parametrize("p", [1, 2, 5])
def test_first_orthogonal_time_equally_spaced(nat, p):
    spec = build_equally_spaced(p, 2.0, nat)
    t_orth = first_orthogonal_time(spec)
    assert t_orth == pytest.approx(spec.T / (p + 1), rel=1e-10)
    ref = first_zero_scan(spec.levels, spec.hbar, spec.T)
    assert t_orth == pytest.approx(ref, rel=1e-6)


def test_first_orthogonal_time_rational(nat):
    spec = rat0621(nat)
    t_orth = first_orthogonal_time(spec)
    ref = first_zero_scan(spec.levels, spec.hbar, spec.T, n_grid=2000001)
    if ref is None:
        assert t_orth is None
    else:
        assert t_orth == pytest.approx(ref, rel=1e-5)
