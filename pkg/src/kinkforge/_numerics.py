"""Grid calculus shared by the quadratic-form, energy and H^1 computations."""

import numpy as np
from scipy.integrate import simpson

from .errors import InvalidGrid

# one-sided 4th-order first-derivative weights at offsets 0..4
_ONE_SIDED = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
_ONE_SIDED_1 = np.array([-3.0, -10.0, 18.0, -6.0, 1.0]) / 12.0  # offsets -1..3


def fd_derivative(values, dx):
    """Fourth-order finite-difference derivative of samples on a uniform grid.

    Central five-point stencil in the interior, one-sided fourth-order
    stencils at the two nodes closest to each end. Works on real or complex
    arrays.
    """
    v = np.asarray(values)
    n = v.shape[0]
    if n < 5:
        raise InvalidGrid(f"need at least 5 nodes for the derivative stencil, got {n}")
    d = np.empty_like(v)
    d[2:-2] = (v[:-4] - 8.0 * v[1:-3] + 8.0 * v[3:-1] - v[4:]) / (12.0 * dx)
    d[0] = _ONE_SIDED @ v[:5] / dx
    d[1] = _ONE_SIDED_1 @ v[:5] / dx
    d[-1] = -(_ONE_SIDED @ v[::-1][:5]) / dx
    d[-2] = -(_ONE_SIDED_1 @ v[::-1][:5]) / dx
    return d


def integrate(values, dx):
    """Composite Simpson rule on a uniform grid with an even number of intervals."""
    v = np.asarray(values)
    if v.shape[0] < 3 or (v.shape[0] - 1) % 2:
        raise InvalidGrid("Simpson quadrature needs an even number of intervals")
    return float(simpson(v, dx=dx))


def h1_inner(u, v, dx):
    """Real H^1 inner product of two complex grid fields (plane vectors)."""
    du, dv = fd_derivative(u, dx), fd_derivative(v, dx)
    return integrate(np.real(np.conj(u) * v) + np.real(np.conj(du) * dv), dx)


def l2_inner(u, v, dx):
    """Real L^2 inner product of two complex grid fields (plane vectors)."""
    return integrate(np.real(np.conj(u) * v), dx)


def h1_norm_sq(u, dx):
    return h1_inner(u, u, dx)


def l2_norm_sq(u, dx):
    return l2_inner(u, u, dx)
