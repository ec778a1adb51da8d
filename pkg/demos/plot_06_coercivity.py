"""
Coercivity near the kink
========================

With lambda the spectral gap and mu = 1/2 + sup |D^2W(e)|, the quadratic form
controls alpha ||h||_{H1}^2 up to the direction of e'. Further out, the energy
excess over the kink grows at least like delta d^2, where d is the H1 distance
to the family of translates. Here delta is fitted from samples.
"""

# %%
import numpy as np

from kinkforge import connect, preset
from kinkforge.coercivity import check_form1, check_form2, constants, distance_to_orbit_set
from kinkforge.spectral import spectrum

f = preset("phi4")
prof = connect(f, -1, 1)
c = constants(f, prof, spectrum(f, prof))
print(f"lambda {c.lam:.5f}, mu {c.mu:.5f}, alpha {c.alpha:.5f}, beta {c.beta:.5f}")

# %%
# The quadratic-form bound on 100 seeded fields.
rep = check_form2(f, prof, c, count=100)
print(f"quadratic bound holds: {rep.passed}, smallest margin {rep.min_margin:.3f}")

# %%
# Distance to the translate family recovers a pure shift.
u, _ = prof.translate(0.3)
d, T = distance_to_orbit_set(prof, u)
print(f"shifted kink: d = {d:.1e}, T = {T:.9f}")

# %%
# Energy-excess ratios on perturbed translates with d <= 0.1.
r = check_form1(f, prof, c, samples=50)
print(f"delta_fit = {r.delta_fit:.4f} over {r.ratios.size} paths, "
      f"ratios in [{r.ratios.min():.3f}, {r.ratios.max():.3f}], max d {np.max(r.distances):.3f}")
