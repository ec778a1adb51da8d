"""
The kernel of the linearization
===============================

The quadratic form of L = -d^2/dx^2 + D^2W(e) equals int |h' - c conj(h)|^2
with c = sqrt2 m conj(f'(e)). Kernel elements therefore solve a first-order
system, which e' solves too. Its second solution grows at both ends, so the
kernel is spanned by e'.
"""

# %%
import numpy as np

from kinkforge import connect, preset
from kinkforge.linearization import (
    decaying_solution,
    factorization_gap,
    quad_form_direct,
    random_fields,
    second_solution,
    wronskian,
)

f = preset("triple")
prof = connect(f, -1, 0)

# %%
# The two sides of the factorization agree on random smooth fields.
rep = factorization_gap(f, prof, random_fields(prof, 50))
print(f"largest relative gap over 50 fields: {rep.gap:.2e}")
print(f"Q(e') = {quad_form_direct(f, prof, prof.de):.2e}")

# %%
# Matching the solutions that decay at each end gives a one-dimensional kernel.
k = decaying_solution(f, prof)
print(f"kernel dimension {k.dimension}, matching determinant {k.determinant:.1e}, "
      f"H1 cosine with e' {k.cosine_h1:.12f}")

# %%
# The second solution has a constant, nonzero Wronskian against e'.
sol = second_solution(f, prof)
w, dev = wronskian(prof, sol.values)
mid = prof.N // 2
print(f"Wronskian {w[mid]:.6f}, relative deviation {dev / abs(w[mid]):.1e}")
for x in (-6.0, -3.0, 0.0, 3.0, 6.0):
    i = np.argmin(np.abs(prof.x - x))
    print(f"  |h({x:+.0f})| = {abs(sol.values[i]):.3e}")
