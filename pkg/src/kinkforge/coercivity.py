"""Coercivity constants of the energy around a nondegenerate orbit.

With lam the first nonzero eigenvalue of L and mu chosen so that
int |h'|^2 + h.D^2W(e)h >= 1/2 ||h||_{H^1}^2 - mu ||h||_{L^2}^2, one gets

    Q(h) >= alpha ||h||_{H^1}^2 - beta <h, e'>^2 / ||e'||^2,
    alpha = (lam / (2 mu)) / (1 + lam/mu),   beta = lam / (1 + lam/mu).

The energy-excess bound E(u) - E(e) >= delta d(u, C(e))^2 near the family
C(e) of translates is only checked empirically: delta is fitted, not derived.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from . import _numerics
from .errors import BoundaryMinimum
from .holomorphic_potential import evaluate, hessian_matrix
from .linearization import FIELD_SEED, quad_form_direct, random_fields

GAMMA = 0.1
FORM2_SLACK = 1e-7


@dataclass
class CoercivityReport:
    lam: float
    mu: float
    alpha: float
    beta: float
    e_prime_l2sq: float
    delta_fit: float = float("nan")
    gamma_used: float = GAMMA
    form2_pass: bool = False
    form1_pass: bool = False

    def as_dict(self):
        return {
            "lambda": self.lam,
            "mu": self.mu,
            "alpha": self.alpha,
            "beta": self.beta,
            "delta_fit": self.delta_fit,
            "gamma": self.gamma_used,
            "form2_pass": self.form2_pass,
            "form1_pass": self.form1_pass,
        }


def combine(lam, mu):
    """(alpha, beta) from the spectral gap ``lam`` and the L^2 shift ``mu``."""
    r = lam / mu
    return (lam / (2.0 * mu)) / (1.0 + r), lam / (1.0 + r)


def constants(f, profile, spectral_report):
    """lam = theta_1, mu = 1/2 + sup_i ||D^2W(e_i)||_2, and the derived alpha, beta."""
    if not spectral_report.verdict:
        raise ValueError("coercivity constants need a certified nondegenerate orbit")
    lam = float(spectral_report.theta[1])
    mu = 0.5 + float(np.max(hessian_matrix(f, profile.e).spectral_norm()))
    alpha, beta = combine(lam, mu)
    return CoercivityReport(
        lam=lam,
        mu=mu,
        alpha=alpha,
        beta=beta,
        e_prime_l2sq=_numerics.l2_norm_sq(profile.de, profile.dx),
    )


@dataclass
class Form2Report:
    lhs: np.ndarray
    rhs: np.ndarray
    min_margin: float
    passed: bool


def check_form2(f, profile, report, samples=None, count=100, seed=FIELD_SEED):
    """Test Q(h) >= alpha ||h||_{H^1}^2 - beta <h, e'>^2 / ||e'||^2 on sample fields.

    Each sample passes if LHS >= RHS - 1e-7 (1 + ||h||_{H^1}^2); the reported
    margin is the smallest LHS - RHS + slack.
    """
    if samples is None:
        samples = random_fields(profile, count, seed=seed)
    dx, de = profile.dx, profile.de
    lhs, rhs, margins = [], [], []
    for h in samples:
        h1sq = _numerics.h1_norm_sq(h, dx)
        proj = _numerics.l2_inner(h, de, dx)
        q = quad_form_direct(f, profile, h)
        r = report.alpha * h1sq - report.beta * proj**2 / report.e_prime_l2sq
        lhs.append(q)
        rhs.append(r)
        margins.append(q - r + FORM2_SLACK * (1.0 + h1sq))
    margins = np.asarray(margins)
    ok = bool(np.all(margins >= 0.0))
    report.form2_pass = ok
    return Form2Report(np.asarray(lhs), np.asarray(rhs), float(margins.min()), ok)


def _h1_dist_sq(profile, u, T):
    et, _ = profile.translate(T)
    return _numerics.h1_norm_sq(u - et, profile.dx)


def distance_to_orbit_set(profile, u, search=None, scan=49):
    """min over T of ||u - e(. - T)||_{H^1} on the truncated grid, and the argmin.

    A coarse scan brackets the minimum, then a bounded Brent search
    (golden section with parabolic steps) refines it. Raises BoundaryMinimum
    when the minimum sits on the edge of ``search`` (default [-X/2, X/2]).
    """
    u = np.asarray(u, dtype=complex)
    lo, hi = search if search is not None else (-0.5 * profile.X, 0.5 * profile.X)
    grid = np.linspace(lo, hi, scan)
    vals = np.array([_h1_dist_sq(profile, u, T) for T in grid])
    j = int(np.argmin(vals))
    a, b = grid[max(j - 1, 0)], grid[min(j + 1, scan - 1)]
    res = minimize_scalar(
        lambda T: _h1_dist_sq(profile, u, T),
        bounds=(a, b),
        method="bounded",
        options={"xatol": 1e-11},
    )
    T_star, d2 = float(res.x), float(res.fun)
    if vals[j] < d2:
        T_star, d2 = float(grid[j]), float(vals[j])
    edge = 1e-6 * max(1.0, hi - lo)
    if T_star - lo <= edge or hi - T_star <= edge:
        raise BoundaryMinimum(f"distance minimised at the search edge T = {T_star:.6g}")
    return float(np.sqrt(max(d2, 0.0))), T_star


def path_energy(f, u, dx):
    """Grid energy of a path: Simpson quadrature of 1/2 |u'|^2 + |f(u)|^2, u' by differences."""
    du = _numerics.fd_derivative(u, dx)
    return _numerics.integrate(0.5 * np.abs(du) ** 2 + np.abs(evaluate(f, u)) ** 2, dx)


def form1_ratio(f, profile, T0, h, eps):
    """(E(u) - E(e)) / d(u, C(e))^2 for u = e(. - T0) + eps h; None when d vanishes."""
    et, _ = profile.translate(T0)
    u = et + eps * np.asarray(h, dtype=complex)
    d, _ = distance_to_orbit_set(profile, u)
    if d < 1e-12:
        return None, d
    excess = path_energy(f, u, profile.dx) - path_energy(f, profile.e, profile.dx)
    return excess / d**2, d


@dataclass
class Form1Report:
    ratios: np.ndarray
    distances: np.ndarray
    delta_fit: float
    skipped: int
    passed: bool


def check_form1(f, profile, report=None, samples=50, gamma_used=GAMMA, seed=FIELD_SEED):
    """Fit delta in E(u) - E(e) >= delta d^2 over perturbed translates with d <= gamma.

    Samples are u = e(. - T0) + eps h with T0 uniform in [-1, 1], h a seeded
    Gaussian bump and eps set so that ||eps h||_{H^1} (an upper bound for d)
    is uniform in [gamma/5, gamma].
    """
    rng = np.random.default_rng(seed)
    ratios, dists, skipped = [], [], 0
    for _ in range(samples):
        T0 = rng.uniform(-1.0, 1.0)
        h = random_fields(profile, 1, seed=int(rng.integers(2**32)))[0]
        target = rng.uniform(0.2 * gamma_used, gamma_used)
        eps = target / np.sqrt(_numerics.h1_norm_sq(h, profile.dx))
        ratio, d = form1_ratio(f, profile, T0, h, eps)
        if ratio is None:
            skipped += 1
            continue
        ratios.append(ratio)
        dists.append(d)
    ratios = np.asarray(ratios)
    delta = float(ratios.min()) if ratios.size else float("nan")
    ok = bool(ratios.size and delta > 0.0)
    if report is not None:
        report.delta_fit, report.gamma_used, report.form1_pass = delta, gamma_used, ok
    return Form1Report(ratios, np.asarray(dists), delta, skipped, ok)
