"""
Wells of a holomorphic-square potential
=======================================

W = |f|^2 vanishes exactly at the zeros of f. Simple zeros are wells
(nondegenerate minima with isotropic Hessian 2|f'(a)|^2 I); multiple zeros
are flagged as degenerate.
"""

# %%
import numpy as np

from kinkforge import ComplexPoly, preset, zeros
from kinkforge.holomorphic_potential import grad_W, hessian_matrix

# %%
# The three-well polynomial z^3 - z has wells at -1, 0 and +1, sorted by
# (Re, Im). The decay rate sqrt2 |f'(a)| sets how fast a kink settles.
f = preset("triple")
wells, degenerate = zeros(f)
for i, w in enumerate(wells):
    print(f"well {i}: a = {w.location:+.3f}, decay rate {w.decay_rate:.6f}, Hessian scale {w.hessian_scale:.3f}")

# %%
# The Hessian at a well is a multiple of the identity, and the gradient vanishes.
for w in wells:
    H = hessian_matrix(f, w.location).as_array()
    print(f"a = {w.location.real:+.0f}: D2W = {(np.round(H, 12) + 0.0).tolist()}, |grad W| = {abs(grad_W(f, w.location))}")

# %%
# A product preset places wells anywhere; a repeated point gives a degenerate zero.
g = ComplexPoly.from_roots([1j, 1j, -1, 2])
wells, degenerate = zeros(g)
print("wells:", [f"{w.location.real:+.6f}{w.location.imag:+.6f}i" for w in wells])
print("degenerate:", [(f"{d.location.real:+.6f}{d.location.imag:+.6f}i", d.multiplicity) for d in degenerate])
