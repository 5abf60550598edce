"""
Irrational level ratios and rational surrogates
===============================================

Arbitrary real spectra do not admit exact integer phase frequencies, but any
ratio can be approximated by a fraction to any tolerance.  The library picks
the smallest-denominator fraction within the tolerance (minimal denominators
keep r_p, and hence the POVM size z+1 > r_p, as small as possible) and
measures what the approximation costs in completeness.
"""

import math

from qclock import (identity_residual, max_integer, natural_units,
                    rationalize, rationalized_spectrum)

nat = natural_units()
golden = (1 + math.sqrt(5)) / 2

# Best rational approximations of the golden ratio are ratios of
# consecutive Fibonacci numbers; watch the denominators climb that ladder
# as the tolerance tightens.
for eps in (0.2, 0.02, 0.002, 2e-4, 2e-5):
    ratios, err = rationalize([0.0, 1.0, golden], eps)
    print(f"eps = {eps:g}: ratio = {ratios[0]}, error = {err:.2e}")

# A rationalized spectrum keeps the ORIGINAL irrational levels and only
# borrows r and T from the approximation, so its completeness residual is an
# honest measurement of the approximation error, not wishful bookkeeping.
print("\nresidual decay for the golden-ratio clock:")
for eps in (1e-2, 1e-3, 1e-4, 1e-5):
    spec = rationalized_spectrum([0.0, 1.0, golden], eps, nat)
    res = identity_residual(spec, max_integer(spec))
    print(f"eps = {eps:g}: r = {spec.r}, z+1 = {max_integer(spec) + 1}, "
          f"residual = {res:.3e}")

# Caveat worth knowing: with several independent irrationals the common
# period needs the lcm of the per-ratio denominators.  The lcm grows as
# fast as the accuracy improves, so r_1 * eps (which controls the residual)
# need not shrink.  Two famous irrationals side by side:
print("\ncompound-lcm effect for levels (0, 1, e, pi):")
for eps in (1e-2, 1e-3, 1e-4, 1e-5):
    spec = rationalized_spectrum([0.0, 1.0, math.e, math.pi], eps, nat)
    res = identity_residual(spec, max_integer(spec))
    print(f"eps = {eps:g}: r_1 = {spec.r[1]:6d}, r_1*eps = {spec.r[1] * eps:7.3f}, "
          f"residual = {res:.3e}")
print("smaller eps does not buy a smaller residual here; "
      "one irrational ratio at a time does.")
