"""
Kinks between three wells
=========================

f = z^3 - z has wells -1, 0, +1. The primitive g = z^4/4 - z^2/2 takes the
same value at -1 and +1, so no kink joins them directly; the kink from -1
to 0 exists and has two different decay rates.
"""

# %%
import numpy as np

from kinkforge import DegenerateSegment, connect, preset, verify_orbit

f = preset("triple")
try:
    connect(f, -1, 1)
except DegenerateSegment as exc:
    print("-1 -> +1:", exc)

# %%
# The -1 -> 0 kink, checked against -(1 + exp(2 sqrt2 (x + x0)))^(-1/2), where
# x0 is the shift that puts the segment midpoint at x = 0.
prof = connect(f, -1, 0)
e0 = -np.sqrt(1 - 1 / np.sqrt(2))
x0 = np.log(1 / e0**2 - 1) / (2 * np.sqrt(2))
closed = -1 / np.sqrt(1 + np.exp(2 * np.sqrt(2) * (prof.x + x0)))
print("sup error:", np.max(np.abs(prof.e - closed)))

# %%
# The tails decay at sqrt2 |f'(a)|: 2 sqrt2 toward -1, sqrt2 toward 0.
d = verify_orbit(f, prof)
print(f"fitted decay: {d.fitted_k_minus:.6f} (expect {2 * np.sqrt(2):.6f}), "
      f"{d.fitted_k_plus:.6f} (expect {np.sqrt(2):.6f})")
print(f"energy {prof.energy:.10f} (expect {np.sqrt(2) / 4:.10f})")
