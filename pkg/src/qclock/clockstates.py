"""Time states, the time operator, and completeness of the clock observable.

The clock's dial positions are the equal-weight superpositions

    |tau> = (p+1)^(-1/2) * sum_n exp(-i E_n tau / hbar) |E_n>

sampled on a grid tau_m = tau_0 + m T/(z+1), m = 0..z with z >= p.  The
family { (p+1)/(z+1) |tau_m><tau_m| } is a valid POVM exactly when the frame
operator

    F = (p+1)/(z+1) * sum_m |tau_m><tau_m|

equals the identity.  With integer phase frequencies r_n = E_n T/(2 pi hbar)
the off-diagonal entries of F are geometric sums sum_m exp(-2 pi i (r_n -
r_k) m/(z+1)), which vanish unless r_n - r_k is a multiple of z+1; hence
choosing z+1 > r_p guarantees completeness, and any difference divisible by
z+1 is a constructive counterexample.

Phase evaluation note: for spectra with exact integer frequencies the phases
are reduced mod 1 in exact integer/Fraction arithmetic before exponentiating
(identical to exp(-i E_n tau/hbar) up to whole turns).  Naive float phases
lose ~r_p*eps of a turn, which would swamp the 1e-12 completeness residuals
this module is meant to certify at large r_p.  Spectra without exact
integers (rationalized approximations) use the energies directly; their
residual IS the quantity of interest.

All operations are pure; dense assembly is capped at dimension p+1 <= 4096.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import IncompatibleStates, InvalidArgument, UnsupportedSpectrum
from .spectrum import ClockSpectrum, SpectrumKind

MAX_DENSE_DIMENSION = 4096


def _check_dense(spec: ClockSpectrum) -> None:
    if spec.dimension > MAX_DENSE_DIMENSION:
        raise InvalidArgument(
            f"dense assembly capped at dimension {MAX_DENSE_DIMENSION}, got {spec.dimension}")


def _turns_single(spec: ClockSpectrum, tau) -> np.ndarray:
    """Phase in turns (cycles) for each level at one dial time.

    tau may be a float or an exact Fraction; exact inputs keep the reduction
    exact, so e.g. evolving by the Fraction T/(z+1) lands on the next grid
    state to the last ulp.
    """
    if spec.has_exact_integers:
        x = Fraction(tau) / Fraction(spec.T)
        return np.array([float((rn * x) % 1) for rn in spec.r])
    return np.mod(spec.levels * (float(tau) / (2.0 * math.pi * spec.hbar)), 1.0)


def _turns_grid(spec: ClockSpectrum, z: int, tau_0) -> np.ndarray:
    """Phase turns, shape (p+1, z+1), for the dial grid tau_0 + m T/(z+1)."""
    zp1 = z + 1
    if zp1 > 2**30:
        raise InvalidArgument(f"dial grids capped at z+1 <= 2^30, got {zp1}")
    if spec.has_exact_integers:
        # r_n*m/(z+1) reduced with integer arithmetic; the tau_0 offset
        # reduced exactly per level with Fraction arithmetic.
        r_mod = np.array([rn % zp1 for rn in spec.r], dtype=np.int64)
        m = np.arange(zp1, dtype=np.int64)
        frac_grid = ((r_mod[:, None] * m[None, :]) % zp1) / float(zp1)
        x0 = Fraction(tau_0) / Fraction(spec.T)
        offs = np.array([float((rn * x0) % 1) for rn in spec.r])
        return frac_grid + offs[:, None]
    freqs = spec.levels / (2.0 * math.pi * spec.hbar)
    taus = float(tau_0) + np.arange(zp1) * (spec.T / zp1)
    return np.outer(freqs, taus)


def grid_amplitudes(spec: ClockSpectrum, z: int, tau_0: float = 0.0) -> np.ndarray:
    """Matrix of time-state amplitudes, column m = |tau_m>, shape (p+1, z+1)."""
    if z < spec.p:
        raise InvalidArgument(f"need z >= p, got z={z}, p={spec.p}")
    _check_dense(spec)
    turns = _turns_grid(spec, z, tau_0)
    return np.exp(-2j * math.pi * turns) / math.sqrt(spec.dimension)


@dataclass(frozen=True, eq=False)
class TimeState:
    """A dial state |tau> expanded over the energy basis."""

    amplitudes: np.ndarray
    tau: float
    spectrum: ClockSpectrum

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        if amps.shape != (self.spectrum.dimension,):
            raise InvalidArgument("amplitude vector does not match spectrum dimension")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True, eq=False)
class ClockPOVM:
    """The family { (p+1)/(z+1) |tau_m><tau_m| }, m = 0..z."""

    spectrum: ClockSpectrum
    z: int
    tau_0: float = 0.0

    def __post_init__(self):
        if not isinstance(self.z, (int, np.integer)) or self.z < self.spectrum.p:
            raise InvalidArgument(f"need z >= p = {self.spectrum.p}, got {self.z!r}")
        object.__setattr__(self, "z", int(self.z))

    @property
    def n_outcomes(self) -> int:
        return self.z + 1

    @property
    def weight(self) -> Fraction:
        return Fraction(self.spectrum.dimension, self.z + 1)

    @property
    def tau_grid(self) -> np.ndarray:
        return self.tau_0 + np.arange(self.z + 1) * (self.spectrum.T / (self.z + 1))

    def element(self, m: int) -> np.ndarray:
        """The m-th POVM element as a dense (p+1, p+1) matrix."""
        if not 0 <= m <= self.z:
            raise InvalidArgument(f"outcome index {m} outside 0..{self.z}")
        v = grid_amplitudes(self.spectrum, self.z, self.tau_0)[:, m]
        return float(self.weight) * np.outer(v, v.conj())


def time_state(spec: ClockSpectrum, tau: float) -> TimeState:
    """|tau> for any real tau; the continuous-dial state when tau is off-grid."""
    amps = np.exp(-2j * math.pi * _turns_single(spec, tau)) / math.sqrt(spec.dimension)
    return TimeState(amps, float(tau), spec)


def _require_same_spectrum(a: TimeState, b: TimeState) -> None:
    if a.spectrum is not b.spectrum and not a.spectrum.same_as(b.spectrum):
        raise IncompatibleStates("states belong to different spectra")


def overlap(a: TimeState, b: TimeState) -> complex:
    """<a|b> = (p+1)^(-1) sum_n exp(-i E_n (tau_b - tau_a)/hbar)."""
    _require_same_spectrum(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def evolve(state: TimeState, dt: float) -> TimeState:
    """Schroedinger evolution by an external-time step dt: a dial rotation."""
    turns = _turns_single(state.spectrum, dt)
    amps = state.amplitudes * np.exp(-2j * math.pi * turns)
    return TimeState(amps, state.tau + float(dt), state.spectrum)


def frame_operator(spec: ClockSpectrum, z: int, tau_0: float = 0.0) -> np.ndarray:
    """F = (p+1)/(z+1) * sum_m |tau_m><tau_m|, assembled densely."""
    V = grid_amplitudes(spec, z, tau_0)
    return (spec.dimension / (z + 1)) * (V @ V.conj().T)


def identity_residual(spec: ClockSpectrum, z: int, tau_0: float = 0.0) -> float:
    """Operator 2-norm of the frame operator minus the identity.

    Zero (to float accuracy) certifies the POVM resolves the identity.
    """
    resid = frame_operator(spec, z, tau_0) - np.eye(spec.dimension)
    return float(np.abs(np.linalg.eigvalsh(resid)).max())


def continuous_identity_residual(spec: ClockSpectrum, quad_points: int,
                                 t_0: float = 0.0, *,
                                 enforce_nyquist: bool = True) -> float:
    """Residual of (p+1)/T * integral |t><t| dt over one period.

    The integral is evaluated with the periodic trapezoid rule, which is
    exact for the trigonometric-polynomial integrand once quad_points
    exceeds every phase-frequency difference |r_n - r_k|.  The default guard
    demands quad_points >= 2 (r_p + 1); pass enforce_nyquist=False to study
    aliasing below it.
    """
    r_p = spec.r[-1]
    if enforce_nyquist and quad_points < 2 * (r_p + 1):
        raise InvalidArgument(
            f"need quad_points >= 2*(r_p+1) = {2 * (r_p + 1)}, got {quad_points}")
    if quad_points < 2:
        raise InvalidArgument("need at least 2 quadrature points")
    # the N-point periodic trapezoid over [t_0, t_0+T] is the dial grid with
    # z+1 = N, so reuse the exact-phase assembly
    _check_dense(spec)
    turns = _turns_grid(spec, quad_points - 1, t_0)
    V = np.exp(-2j * math.pi * turns) / math.sqrt(spec.dimension)
    F = (spec.dimension / quad_points) * (V @ V.conj().T)
    resid = F - np.eye(spec.dimension)
    return float(np.abs(np.linalg.eigvalsh(resid)).max())


@dataclass(frozen=True, eq=False)
class TimeOperator:
    """The Hermitian dial observable, z = p, in the energy basis."""

    matrix: np.ndarray
    tau_grid: np.ndarray
    spectrum: ClockSpectrum

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def hermitian_time_operator(spec: ClockSpectrum, tau_0: float = 0.0) -> TimeOperator:
    """tau_hat = sum_m tau_m |tau_m><tau_m| for the equally-spaced clock.

    Only the equally-spaced spectrum admits orthogonal time states, so only
    there does the dial observable collapse to a Hermitian operator.
    """
    if spec.kind is not SpectrumKind.EQUALLY_SPACED:
        raise UnsupportedSpectrum(
            "the Hermitian time operator exists only for equally-spaced spectra")
    z = spec.p
    V = grid_amplitudes(spec, z, tau_0)
    taus = tau_0 + np.arange(z + 1) * (spec.T / (z + 1))
    matrix = (V * taus[None, :]) @ V.conj().T
    matrix = 0.5 * (matrix + matrix.conj().T)  # scrub rounding asymmetry
    return TimeOperator(matrix, taus, spec)


def energy_shift_unitary(op: TimeOperator, delta_e: float) -> np.ndarray:
    """exp(-i delta_e tau_hat / hbar): a cyclic one-step shift of the energy basis.

    With delta_e = +2 pi hbar/T the shift is downward (|E_n> -> |E_{n-1 mod
    d}>, a consequence of the e^{-i E tau} phase sign); the opposite sign
    raises.  Either way tau_hat generates energy shifts.
    """
    spec = op.spectrum
    V = grid_amplitudes(spec, spec.p, float(op.tau_grid[0]))
    phases = np.exp(-1j * delta_e * op.tau_grid / spec.hbar)
    return (V * phases[None, :]) @ V.conj().T


def overlap_magnitude(spec: ClockSpectrum, dt):
    """|<t0 | t0 + dt>| for the flat dial state; independent of t0."""
    dt_arr = np.atleast_1d(np.asarray(dt, dtype=float))
    phases = np.exp(-1j * np.outer(spec.levels / spec.hbar, dt_arr))
    out = np.abs(phases.mean(axis=0))
    return out if np.ndim(dt) else float(out[0])


def _overlap_sq_slope(spec: ClockSpectrum, t: float) -> float:
    """d/dt |<t0|t0+t>|^2; crosses zero linearly at each overlap zero."""
    w = spec.levels / spec.hbar
    ph = np.exp(-1j * w * t)
    s = ph.mean()
    ds = (-1j * w * ph).mean()
    return 2.0 * (s.conjugate() * ds).real


def first_orthogonal_time(spec: ClockSpectrum, *, samples_per_cycle: int = 32,
                          zero_tol: float = 1e-9) -> float | None:
    """First dt > 0 with <t0|t0+dt> = 0, found by dense scan plus root polish.

    Returns None when no orthogonal configuration exists within one period
    (generic spectra need not ever reach one).  The scan density follows the
    largest phase frequency so no sign structure is missed: near a simple
    zero |overlap| <= (step/2)*|d overlap/dt| <= pi/samples_per_cycle at the
    nearest sample, so every candidate below that cut gets polished.  The
    minimum itself is located as a sign change of d|overlap|^2/dt, which
    Brent's method pins to machine precision.
    """
    if spec.p < 1:
        return None
    n_grid = max(512, samples_per_cycle * (spec.r[-1] + 1))
    ts = np.linspace(0.0, spec.T, n_grid, endpoint=False)[1:]
    g = overlap_magnitude(spec, ts)
    step = ts[1] - ts[0]
    candidate_cut = 2.0 * math.pi / samples_per_cycle
    # local minima of |overlap|, in time order
    interior = np.where((g[1:-1] <= g[:-2]) & (g[1:-1] <= g[2:]))[0] + 1
    for i in interior:
        if g[i] > candidate_cut:
            continue
        a, b = ts[i] - step, ts[i] + step
        if _overlap_sq_slope(spec, a) < 0.0 < _overlap_sq_slope(spec, b):
            t_min = float(brentq(lambda t: _overlap_sq_slope(spec, t), a, b,
                                 xtol=1e-15 * spec.T, rtol=4 * np.finfo(float).eps))
        else:
            res = minimize_scalar(
                lambda t: overlap_magnitude(spec, t) ** 2,
                bounds=(a, b), method="bounded", options={"xatol": 1e-15 * spec.T})
            t_min = float(res.x)
        if overlap_magnitude(spec, t_min) < zero_tol:
            return t_min
    return None
