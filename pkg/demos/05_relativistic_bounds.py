"""
How finely can a clock tick?  The relativistic limits
=====================================================

Confining energy in a finite body caps its spectral extent, which bounds the
dial spacing from below; quantum spreading plus gravitational consistency
bound the achievable resolution.  This script walks every limit, first in
natural units where the numbers are recognizable, then in SI.
"""

import math

from qclock import (ClockBody, bound_report, build_equally_spaced,
                    build_rational, codata2018, continuum_condition,
                    derive_planck_scale, discretization_bound,
                    discretization_bound_generic, fundamental_resolution,
                    gravitational_mass_limit, natural_units, optimize_mass,
                    RationalRatio, speed_limit_bound,
                    speed_limit_gravitational_floor, spreading_bound)

nat = natural_units()
si = codata2018()

# --- discretization: how close together can dial values sit? ---------------
# Natural units, a body of diameter 8 Planck lengths and no rest mass:
# the confinement rate chi is 8/4 = 2, so the z = p spacing bound is pi.
body = ClockBody(l_C=8.0, m_rest=0.0, m=1.0)
print("dial spacing bound (z = p):", discretization_bound(body, nat, p=3, z=3))
print("same clock, z+1 doubled:   ", discretization_bound(body, nat, p=3, z=7))

# Generic spectrum r = (0, 6, 10, 21) at the minimal complete z+1 = 22:
spec_rat = build_rational([RationalRatio(5, 3), RationalRatio(7, 2)], 1.0, nat)
print("generic spacing bound:", discretization_bound_generic(body, nat, 21, 21),
      "= 21*pi/22 =", 21 * math.pi / 22)

# The z -> infinity limit is safe when T exceeds 2*pi*count/chi: both the
# spacing and its bound then fall off as 1/(z+1) together.
for T in (3.0, 4.0):
    print(f"T = {T}: continuum limit safe?",
          continuum_condition(body, nat, T, count=1))

# --- resolution: how well can the dial be read? -----------------------------
# The structural bound T/(p+1) and the quantum speed limit agree for the
# two-level clock and separate beyond it.
for p in (1, 4):
    spec = build_equally_spaced(p, 2 * math.pi, nat)
    print(f"p = {p}: structural = {spec.T / (p + 1):.4f}, "
          f"speed limit = {speed_limit_bound(spec):.4f}")
print("confinement floor under the speed limit:",
      speed_limit_gravitational_floor(body, nat))

# --- spreading, gravity, Compton: the mass optimum ---------------------------
scale = derive_planck_scale(si)
print("\nPlanck time:", scale.t_p, "s")

# A 1 kg clock read out over 1 s spreads by sqrt(hbar/2) ~ 7.3e-18 m.
print("spreading for m = 1 kg, Theta = 1 s:", spreading_bound(1.0, 1.0, si))
print("mass ceiling for Theta = 1 s:", gravitational_mass_limit(1.0, si), "kg")

# The spectrum-independent floor for Theta = 1 s is ~1.8e-29 s; minimizing
# over the clock mass reproduces it exactly, Compton bound or not.
print("fundamental resolution (1 s):", fundamental_resolution(1.0, si))
for compton in (True, False):
    opt = optimize_mass(1.0, si, include_compton=compton)
    print(f"  optimizer (compton={compton}): dt = {opt.dt_min:.6e} "
          f"at m = {opt.m_opt:.4e} kg, regime = {opt.regime.value}")

# Below Theta = 4 t_p the Compton and gravity curves cross at half the
# Planck mass and pin the floor at exactly 2 t_p.
for mult in (100.0, 4.0, 0.5):
    opt = optimize_mass(mult * scale.t_p, si)
    print(f"Theta = {mult:5.1f} t_p: dt_min = {opt.dt_min / scale.t_p:.4f} t_p "
          f"({opt.regime.value})")

# --- everything at once: which bound actually binds? -------------------------
# A desk-realistic configuration: T = 1 s, a million levels, a light clock.
spec = build_equally_spaced(10**6 - 1, 1.0, si)
atomic = ClockBody(l_C=0.01, m_rest=1e-25)
report = bound_report(atomic, si, spec, z=10**6 - 1)
print("\natomic-clock-like report:")
for name in ("delta_tau_min", "structural_dt", "speed_limit_dt",
             "spreading_dt", "fundamental_dt"):
    print(f"  {name:15s} = {getattr(report, name):.3e}")
print("  binding         =", report.binding.value)
print("the structural bound dominates; the fundamental floor sits ~23 orders below")
