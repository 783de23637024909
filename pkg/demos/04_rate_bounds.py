"""
Random coding bounds on the rate
================================

The random constant-weight ensemble gives a lower bound on the best rate
for a fixed threshold fraction tau; optimizing tau gives the threshold rate
bound.  An explicit upper bound sits above both.
"""

import numpy as np

from threshold_codes import derive_params
from threshold_codes.ks_construction import family_rate_bound
from threshold_codes.rate_bounds import LOG2E, bonis_upper, lower_rate_tau, lower_rate_thr

r = lower_rate_tau(2, 0.5)
print(f"s=2, tau=0.5: lower {r.value:.6f} at Q={r.argmax_Q:.6f}, upper {bonis_upper(2, 0.5):.6f}")

# the sandwich across tau
for tau in np.linspace(0.1, 0.9, 5):
    print(f"  tau={tau:.1f}  {lower_rate_tau(3, tau).value:.5f} <= {bonis_upper(3, tau):.5f}")

# optimized over tau; the s^3 scaling constant creeps down toward about 1.2952
for s in (2, 5, 10, 40):
    b = lower_rate_thr(s)
    print(f"s={s:>3} R >= {b.value:.3e} (tau={b.argmax_tau:.4f}), "
          f"4 s^3 R / log2 e = {b.value * 4 * s**3 / LOG2E:.4f}")

# explicit constructions beat the random bound at small s, lose at large s
p = derive_params(23, 2)
print(f"q=23 code: R={p.R:.4f} vs random {lower_rate_thr(p.s).value:.4f}")
for s in (160, 320):
    print(f"s={s}: family {family_rate_bound(s):.3e}, random {lower_rate_thr(s).value:.3e}")
