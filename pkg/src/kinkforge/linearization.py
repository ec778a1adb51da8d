"""Quadratic form of the linearized operator L h = -h'' + D^2W(e) h along an orbit.

Fields h on the orbit grid are complex arrays (h1 + i*h2). For W = |f|^2
the form factors as

    int |h'|^2 + h.D^2W(e)h  =  int |h' - c conj(h)|^2,   c = sqrt(2) m conj(f'(e)),

so a kernel element solves the first-order real-linear system h' = c conj(h),
which e' also solves. The Wronskian of two solutions is constant, and since
any decaying solution has zero Wronskian against e', it is a multiple of e'.
"""

from dataclasses import dataclass

import numpy as np

from ._numerics import fd_derivative, h1_inner, integrate
from .errors import IllConditioned
from .holomorphic_potential import derivative, evaluate, hessian_form

SQRT2 = np.sqrt(2.0)
FACTORIZATION_TOL = 1e-7
RANK_TOL = 1e-8
OVERFLOW = 1e150
FIELD_SEED = 0x5EED


def kernel_coefficients(f, profile, e=None):
    """c = sqrt(2) m conj(f'(e)); the real system matrix is [[Re c, Im c], [Im c, -Re c]]."""
    e = profile.e if e is None else e
    return SQRT2 * profile.m * np.conj(evaluate(derivative(f), e))


def quad_form_direct(f, profile, h):
    """Simpson quadrature of |h'|^2 + h.D^2W(e)h, with h' by 4th-order differences."""
    h = np.asarray(h, dtype=complex)
    dh = fd_derivative(h, profile.dx)
    return integrate(np.abs(dh) ** 2 + hessian_form(f, profile.e, h), profile.dx)


def quad_form_factored(f, profile, h):
    """Simpson quadrature of |h' - sqrt(2) m conj(f'(e) h)|^2."""
    h = np.asarray(h, dtype=complex)
    dh = fd_derivative(h, profile.dx)
    c = kernel_coefficients(f, profile)
    return integrate(np.abs(dh - c * np.conj(h)) ** 2, profile.dx)


def random_fields(profile, count, seed=FIELD_SEED, centers=(-6.0, 6.0), widths=(0.5, 2.0)):
    """Gaussian bumps A exp(-((x - x0)/w)^2) with |A| = 1 and seeded random phase, x0, w."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        amp = np.exp(2j * np.pi * rng.random())
        x0 = rng.uniform(*centers)
        w = rng.uniform(*widths)
        out.append(amp * np.exp(-(((profile.x - x0) / w) ** 2)))
    return out


@dataclass
class FactorizationReport:
    direct: np.ndarray
    factored: np.ndarray
    gap: float
    passed: bool


def factorization_gap(f, profile, hs, tol=FACTORIZATION_TOL):
    """Largest |direct - factored| / (1 + |direct|) over the fields ``hs``."""
    direct = np.array([quad_form_direct(f, profile, h) for h in hs])
    factored = np.array([quad_form_factored(f, profile, h) for h in hs])
    gaps = np.abs(direct - factored) / (1.0 + np.abs(direct))
    gap = float(gaps.max()) if gaps.size else 0.0
    return FactorizationReport(direct, factored, gap, gap <= tol)


@dataclass
class KernelSolution:
    values: np.ndarray
    overflow: bool


def _midpoints(profile):
    # cubic Hermite interpolation of e at half-steps, fourth-order accurate
    e, de = profile.e, profile.de
    return 0.5 * (e[:-1] + e[1:]) + profile.dx / 8.0 * (de[:-1] - de[1:])


def _rk4_sweep(c_nodes, c_mid, h0, i0, step, dx, out):
    """Classical RK4 for h' = c conj(h) from node i0 in direction step (+1 or -1)."""
    n = out.shape[0]
    h = complex(h0)
    hdx = step * dx
    i = i0
    while 0 <= i + step < n:
        j = i + step
        cm = c_mid[min(i, j)]
        k1 = c_nodes[i] * np.conj(h)
        k2 = cm * np.conj(h + 0.5 * hdx * k1)
        k3 = cm * np.conj(h + 0.5 * hdx * k2)
        k4 = c_nodes[j] * np.conj(h + hdx * k3)
        h = h + hdx / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[j] = h
        if abs(h) > OVERFLOW or not np.isfinite(h):
            return True
        i = j
    return False


def kernel_ode(f, profile, h0, x0=0.0, direction="both"):
    """Integrate h' = sqrt(2) m conj(f'(e) h) along the grid from the node at ``x0``.

    ``direction`` is "forward", "backward" or "both". Nodes not reached
    (after overflow past 1e150) are NaN.
    """
    i0 = int(np.argmin(np.abs(profile.x - x0)))
    if abs(profile.x[i0] - x0) > 1e-9 * profile.dx:
        raise ValueError(f"x0 = {x0} is not a grid node")
    c_nodes = kernel_coefficients(f, profile)
    c_mid = kernel_coefficients(f, profile, _midpoints(profile))
    out = np.full(profile.x.shape, np.nan, dtype=complex)
    out[i0] = h0
    overflow = False
    if direction in ("forward", "both"):
        overflow |= _rk4_sweep(c_nodes, c_mid, h0, i0, +1, profile.dx, out)
    if direction in ("backward", "both"):
        overflow |= _rk4_sweep(c_nodes, c_mid, h0, i0, -1, profile.dx, out)
    if direction not in ("forward", "backward", "both"):
        raise ValueError(f"unknown direction {direction!r}")
    return KernelSolution(out, overflow)


def wronskian(profile, h):
    """w_i = h1 e2' - h2 e1' and its largest deviation from the mid-grid value."""
    w = np.imag(np.conj(np.asarray(h)) * profile.de)
    wbar = w[profile.N // 2]
    return w, float(np.nanmax(np.abs(w - wbar)))


@dataclass
class KernelReport:
    dimension: int
    determinant: float
    solution: np.ndarray
    cosine_h1: float


def decaying_solution(f, profile, rank_tol=RANK_TOL):
    """Match the solutions decaying at -inf and +inf at x = 0.

    The left solution starts at -X on the eigenvector of growth rate
    +k_minus, the right one at +X on the eigenvector of rate -k_plus; both
    are integrated toward the middle, where each dominates. Their real 2x2
    determinant at x = 0, normalised by the column norms, decides whether a
    solution decaying at both ends exists.
    """
    n, mid = profile.N, profile.N // 2
    c = kernel_coefficients(f, profile)
    c_mid = kernel_coefficients(f, profile, _midpoints(profile))
    u = np.sqrt(c[0] / abs(c[0]))
    v = 1j * np.sqrt(c[-1] / abs(c[-1]))
    left = np.full(n + 1, np.nan, dtype=complex)
    right = np.full(n + 1, np.nan, dtype=complex)
    left[0], right[-1] = u, v
    for arr, step in ((left, +1), (right, -1)):
        # only the half up to the matching node is needed
        sub = arr[: mid + 1] if step > 0 else arr[mid:]
        cn = c[: mid + 1] if step > 0 else c[mid:]
        cm = c_mid[:mid] if step > 0 else c_mid[mid:]
        start = 0 if step > 0 else sub.size - 1
        _rk4_sweep(cn, cm, sub[start], start, step, profile.dx, sub)
    hl, hr = left[mid], right[mid]
    nl, nr = abs(hl), abs(hr)
    if not (np.isfinite(nl) and np.isfinite(nr)) or nl == 0 or nr == 0:
        raise IllConditioned("a matching column vanished or overflowed")
    det = float(np.imag(np.conj(hl) * hr) / (nl * nr))
    # glue: scale the right half so both agree at x = 0 (real factor, parallel columns)
    lam = float(np.real(np.conj(hl) * hr)) / nr**2
    glued = np.concatenate((left[:mid], [hl], lam * right[mid + 1 :]))
    dim = 1 if abs(det) <= rank_tol else 0
    dx = profile.dx
    num = h1_inner(glued, profile.de, dx)
    denom = np.sqrt(h1_inner(glued, glued, dx) * h1_inner(profile.de, profile.de, dx))
    cos = abs(num) / denom if denom > 0 else 0.0
    return KernelReport(dim, det, glued, float(cos))


def kernel_dimension(f, profile, rank_tol=RANK_TOL):
    """Number of independent kernel-ODE solutions decaying at both ends (0 or 1)."""
    return decaying_solution(f, profile, rank_tol).dimension


def second_solution(f, profile):
    """Kernel-ODE solution through i e'(0): grows at both ends, Wronskian against e' != 0."""
    mid = profile.N // 2
    return kernel_ode(f, profile, 1j * profile.de[mid], profile.x[mid])


def report(f, profile, count=50, seed=FIELD_SEED):
    """Factorization gap, kernel dimension and Wronskian constancy as one summary."""
    fac = factorization_gap(f, profile, random_fields(profile, count, seed=seed))
    kernel = decaying_solution(f, profile)
    sol = second_solution(f, profile)
    w, dev = wronskian(profile, sol.values)
    wdev = dev / abs(w[profile.N // 2])
    return {
        "factorization_gap": fac.gap,
        "kernel_dim": kernel.dimension,
        "wronskian_dev": float(wdev),
        "pass": bool(fac.passed and kernel.dimension == 1 and wdev <= 1e-6),
    }
