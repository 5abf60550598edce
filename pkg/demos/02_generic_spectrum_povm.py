"""
Generic spectra: the clock becomes a POVM
=========================================

When the level ratios E_n/E_1 are rational but not integers, no subset of
dial states is orthogonal.  The observable survives as a POVM with z+1
elements (p+1)/(z+1) |tau_m><tau_m|, and completeness holds exactly once
z+1 exceeds the largest integer phase frequency r_p.
"""

import numpy as np

from qclock import (ClockPOVM, RationalRatio, build_rational,
                    continuous_identity_residual, identity_residual,
                    max_integer, natural_units)

nat = natural_units()

# Ratios E_2/E_1 = 5/3 and E_3/E_1 = 7/2.  The common-period construction
# takes r_1 = lcm(3, 2) = 6, so r = (0, 6, 10, 21) and T = 2*pi*6/E_1.
spec = build_rational([RationalRatio(5, 3), RationalRatio(7, 2)], e1=1.0,
                      consts=nat)
print("r:", spec.r, " period T:", spec.T)
print("largest frequency r_p:", max_integer(spec))

# Completeness kicks in at z+1 = r_p + 1 = 22 and never leaves.
for zp1 in (22, 23, 40, 100):
    res = identity_residual(spec, zp1 - 1)
    print(f"z+1 = {zp1:3d}: identity residual = {res:.3e}")

# Below that, completeness can fail: whenever some difference r_n - r_k is
# a multiple of z+1, one geometric sum refuses to cancel.  Differences here
# are {6, 10, 21, 4, 15, 11}, so z+1 = 15 breaks (21 - 6 = 15)...
print("z+1 = 15:", identity_residual(spec, 14))
# ...while z+1 = 17 happens to work even though it violates the guarantee.
print("z+1 = 17:", identity_residual(spec, 16))

# The POVM object carries the weight (p+1)/(z+1) and the dial grid.
povm = ClockPOVM(spec, z=21)
print("weight:", povm.weight, " outcomes:", povm.n_outcomes)
element_sum = sum(povm.element(m) for m in range(povm.n_outcomes))
print("max |sum of elements - identity|:",
      np.max(np.abs(element_sum - np.eye(spec.dimension))))

# In the z -> infinity limit the POVM becomes (p+1)/T |t><t| dt.  The
# periodic trapezoid rule evaluates that integral exactly once the grid
# outruns every frequency difference.
print("continuous residual, 64 points:", continuous_identity_residual(spec, 64))
print("continuous residual, 21 points (aliased):",
      continuous_identity_residual(spec, 21, enforce_nyquist=False))
