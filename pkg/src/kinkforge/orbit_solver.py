"""Heteroclinic orbits of e'' = grad W(e) for W = |f|^2.

Along a heteroclinic the first-order reduction e' = sqrt(2) m conj(f(e))
holds with a unit constant m, and g(e(x)) (g a primitive of f) runs along
the straight segment from g(a-) to g(a+). Both wells are saddles of the
reduced flow, so each half of the orbit is computed by leaving one well
along its unstable branch and stopping at the segment midpoint; the halves
are matched there, which also fixes the translation gauge e(0) = midpoint.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline

from . import _numerics
from .errors import BlockedByWell, Budget, DegenerateSegment, InvalidGrid, LeftSegment
from .holomorphic_potential import (
    TOL_ROOT,
    ComplexPoly,
    Well,
    antiderivative,
    derivative,
    evaluate,
    roots,
)

SQRT2 = np.sqrt(2.0)

DEFAULTS = dict(
    X=12.0,
    N=4096,
    eps_seed=1e-8,
    tol_stop=1e-9,
    tol_block=1e-6,
    x_budget=200.0,
    rtol=1e-12,
    atol=1e-12,
)

# relative (to |g(a+) - g(a-)|) bound on the transverse segment coordinate
TOL_SEGMENT = 1e-6
# relative mismatch allowed between the two halves at the midpoint
TOL_MATCH = 1e-7


@dataclass
class OrbitProfile:
    """Heteroclinic sampled on the uniform grid x_i = -X + i*2X/N, i = 0..N."""

    f: ComplexPoly
    a_minus: complex
    a_plus: complex
    m: complex
    X: float
    N: int
    x: np.ndarray
    e: np.ndarray
    de: np.ndarray
    energy: float
    k_minus: float
    k_plus: float
    # e(x) - a at the outermost nodes, kept separately to avoid cancellation
    tail_minus: complex = 0j
    tail_plus: complex = 0j
    x_lo: float = -np.inf
    x_hi: float = np.inf
    match_error: float = 0.0
    _spline: object = field(default=None, repr=False, compare=False)

    @property
    def dx(self):
        return 2.0 * self.X / self.N

    def evaluate(self, x, derivative=False):
        """Continuous profile: cubic Hermite inside [-X, X], exponential tails outside."""
        x = np.asarray(x, dtype=float)
        if self._spline is None:
            self._spline = CubicHermiteSpline(self.x, self.e, self.de)
        inside = np.abs(x) <= self.X
        out = np.empty(x.shape, dtype=complex)
        sp = self._spline.derivative() if derivative else self._spline
        out[inside] = sp(x[inside])
        left, right = x < -self.X, x > self.X
        dl = self.tail_minus * np.exp(self.k_minus * (x[left] + self.X))
        dr = self.tail_plus * np.exp(-self.k_plus * (x[right] - self.X))
        if derivative:
            out[left], out[right] = self.k_minus * dl, -self.k_plus * dr
        else:
            out[left], out[right] = self.a_minus + dl, self.a_plus + dr
        return out[()] if out.ndim == 0 else out

    def translate(self, T):
        """Samples of the translate e^T(x) = e(x - T) and its derivative on the grid."""
        return self.evaluate(self.x - T), self.evaluate(self.x - T, derivative=True)


@dataclass
class Diagnostics:
    equipartition: float
    first_order: float
    second_order: float
    segment_deviation: float
    segment_monotone: bool
    fitted_k_minus: float
    fitted_k_plus: float
    k_minus: float
    k_plus: float
    match_error: float

    def as_dict(self):
        return dict(self.__dict__)


def _location(a):
    return complex(a.location) if isinstance(a, Well) else complex(a)


def transport_constant(g, a_minus, a_plus):
    """Unit constant m = (g(a+) - g(a-)) / |g(a+) - g(a-)|."""
    dg = complex(evaluate(g, _location(a_plus)) - evaluate(g, _location(a_minus)))
    if abs(dg) < 1e-12:
        raise DegenerateSegment("degenerate segment: g(a+) = g(a-)")
    return dg / abs(dg)


def closed_form_energy(g, a_minus, a_plus):
    """E(e) = sqrt(2) |g(a+) - g(a-)|."""
    dg = complex(evaluate(g, _location(a_plus)) - evaluate(g, _location(a_minus)))
    if abs(dg) < 1e-12:
        raise DegenerateSegment("degenerate segment: g(a+) = g(a-)")
    return SQRT2 * abs(dg)


def _check_well(f, a, tol_root):
    fa = abs(complex(evaluate(f, a)))
    scale = np.max(np.abs(f.coeffs)) * (1.0 + abs(a)) ** f.degree
    if fa > tol_root * scale:
        raise ValueError(f"{a} is not a zero of f (|f| = {fa:.3g})")
    fp = complex(evaluate(derivative(f), a))
    if fp == 0:
        raise ValueError(f"{a} is a multiple zero of f, not a well")
    return fp


class _Branch:
    """One half-orbit leaving a well along one side of its unstable manifold.

    The state is the deviation from the well, so values near the seed keep
    full relative precision.
    """

    def __init__(self, sol, t_mid, seed_dev):
        self.sol = sol
        self.t_mid = t_mid
        self.seed_dev = seed_dev
        self.dev_mid = complex(sol(t_mid)[0])


def _centered(p, a):
    """p(a + d) as a polynomial in d, with its constant term forced to zero."""
    c = np.array(p.compose_affine(1.0, a).coeffs)
    c[0] = 0.0
    return ComplexPoly(c)


def _shoot(f_a, g_a, m, sign, seed_dir, half, other_dev, opts):
    """Integrate d' = sign*sqrt(2) m conj(f_a(d)) from d = eps*seed_dir until s = half.

    ``f_a`` and ``g_a`` are f and its primitive re-centred at the starting
    well; ``other_dev`` holds the remaining zeros of f in the same frame.
    """
    span = 2.0 * half

    def rhs(t, d):
        return sign * SQRT2 * m * np.conj(evaluate(f_a, d))

    def seg(d):
        return np.conj(m) * evaluate(g_a, d[0])

    def mid(t, d):
        s = seg(d).real if sign > 0 else -seg(d).real
        return s - half

    mid.terminal = True

    def blocked(t, d):
        if other_dev.size == 0:
            return 1.0
        return np.min(np.abs(d[0] - other_dev)) - opts["tol_block"]

    blocked.terminal = True

    def left(t, d):
        return TOL_SEGMENT * span - abs(seg(d).imag)

    left.terminal = True

    seed_dev = opts["eps_seed"] * seed_dir
    res = solve_ivp(
        rhs,
        (0.0, opts["x_budget"]),
        np.array([seed_dev]),
        method="RK45",
        rtol=opts["rtol"],
        atol=opts["atol"] * opts["eps_seed"],
        dense_output=True,
        events=(mid, blocked, left),
    )
    if res.t_events[0].size:
        return _Branch(res.sol, float(res.t_events[0][0]), seed_dev)
    if res.t_events[1].size:
        return BlockedByWell("trajectory runs into another zero of f; an intermediate well lies on the path")
    if res.t_events[2].size:
        return LeftSegment("trajectory left the segment g(e) = g(a-) + m s")
    return Budget(f"no arrival within x_budget = {opts['x_budget']}")


def _unstable_dirs(c):
    u = np.sqrt(c / abs(c))
    return (u, -u)


def _first_error(outcomes):
    errs = [o for o in outcomes if isinstance(o, Exception)]
    for kind in (BlockedByWell, LeftSegment, Budget):
        for e in errs:
            if isinstance(e, kind):
                return e
    return LeftSegment("no branch reached the segment midpoint")


def connect(f, a_minus, a_plus, **opts):
    """Heteroclinic from ``a_minus`` to ``a_plus`` sampled on a uniform grid.

    Keyword options (defaults in ``DEFAULTS``): X, N, eps_seed, tol_stop,
    tol_block, x_budget, rtol, atol.

    Raises DegenerateSegment, BlockedByWell, LeftSegment or Budget when the
    connection cannot be constructed.
    """
    unknown = set(opts) - set(DEFAULTS)
    if unknown:
        raise TypeError(f"unknown options: {sorted(unknown)}")
    o = {**DEFAULTS, **opts}
    X, N = float(o["X"]), int(o["N"])
    if N < 8 or N % 2 or X <= 0:
        raise InvalidGrid(f"need X > 0 and even N >= 8, got X={X}, N={N}")
    am, ap = _location(a_minus), _location(a_plus)
    g = antiderivative(f)
    m = transport_constant(g, am, ap)
    fpm, fpp = _check_well(f, am, TOL_ROOT), _check_well(f, ap, TOL_ROOT)
    half = 0.5 * abs(complex(evaluate(g, ap) - evaluate(g, am)))

    rts = roots(f)
    others_m = rts[np.abs(rts - am) > 1e3 * o["tol_stop"]] - am
    others_p = rts[np.abs(rts - ap) > 1e3 * o["tol_stop"]] - ap
    f_m, f_p = _centered(f, am), _centered(f, ap)
    g_m, g_p = _centered(g, am), _centered(g, ap)

    # forward flow near a-: xi' = c conj(xi), unstable direction u with c conj(u) = |c| u
    c_m = SQRT2 * m * np.conj(fpm)
    fwd = [_shoot(f_m, g_m, m, +1.0, u, half, others_m, o) for u in _unstable_dirs(c_m)]
    # reversed flow near a+: xi' = -c conj(xi)
    c_p = -SQRT2 * m * np.conj(fpp)
    bwd = [_shoot(f_p, g_p, m, -1.0, v, half, others_p, o) for v in _unstable_dirs(c_p)]

    ok_f = [b for b in fwd if isinstance(b, _Branch)]
    ok_b = [b for b in bwd if isinstance(b, _Branch)]
    if not ok_f:
        raise _first_error(fwd)
    if not ok_b:
        raise _first_error(bwd)
    pairs = [
        (abs((am + bf.dev_mid) - (ap + bb.dev_mid)), i, j)
        for i, bf in enumerate(ok_f)
        for j, bb in enumerate(ok_b)
    ]
    gap, i, j = min(pairs)
    if gap > TOL_MATCH * (1.0 + abs(am + ok_f[i].dev_mid)):
        # a branch that ran into a well explains the failure better than the mismatch
        blocked = [o for o in fwd + bwd if isinstance(o, BlockedByWell)]
        if blocked:
            raise blocked[0]
        raise LeftSegment(
            "the branches leaving a- and a+ reach different preimages of the segment midpoint"
        )
    bf, bb = ok_f[i], ok_b[j]

    x = -X + np.arange(N + 1) * (2.0 * X / N)
    e = np.empty(N + 1, dtype=complex)
    de = np.empty(N + 1, dtype=complex)
    k_m, k_p = float(SQRT2 * abs(fpm)), float(SQRT2 * abs(fpp))
    x_lo, x_hi = -bf.t_mid, bb.t_mid

    neg, pos = x <= 0.0, x > 0.0
    in_l = neg & (x >= x_lo)
    in_r = pos & (x <= x_hi)
    d_l = bf.sol(x[in_l] + bf.t_mid)[0]
    d_r = bb.sol(bb.t_mid - x[in_r])[0]
    e[in_l], de[in_l] = am + d_l, SQRT2 * m * np.conj(evaluate(f_m, d_l))
    e[in_r], de[in_r] = ap + d_r, SQRT2 * m * np.conj(evaluate(f_p, d_r))

    tl, tr = x < x_lo, x > x_hi
    dl = bf.seed_dev * np.exp(k_m * (x[tl] - x_lo))
    dr = bb.seed_dev * np.exp(-k_p * (x[tr] - x_hi))
    e[tl], de[tl] = am + dl, k_m * dl
    e[tr], de[tr] = ap + dr, -k_p * dr

    tail_minus = bf.seed_dev * np.exp(k_m * (-X - x_lo)) if x_lo > -X else d_l[0]
    tail_plus = bb.seed_dev * np.exp(-k_p * (X - x_hi)) if x_hi < X else d_r[-1]

    prof = OrbitProfile(
        f=f,
        a_minus=am,
        a_plus=ap,
        m=m,
        X=X,
        N=N,
        x=x,
        e=e,
        de=de,
        energy=0.0,
        k_minus=k_m,
        k_plus=k_p,
        tail_minus=complex(tail_minus),
        tail_plus=complex(tail_plus),
        x_lo=x_lo,
        x_hi=x_hi,
        match_error=gap,
    )
    prof.energy = quadrature_energy(f, prof)
    return prof


def segment_coordinates(f, profile):
    """(s_i, t_i): along- and across-segment coordinates of g(e_i) - g(a-)."""
    g = antiderivative(f)
    am, ap = profile.a_minus, profile.a_plus
    dg = evaluate(g, ap) - evaluate(g, am)
    e = np.asarray(profile.e)
    # each half is measured from its own well so nothing cancels near the ends
    w_lo = np.conj(profile.m) * evaluate(_centered(g, am), e - am)
    w_hi = np.conj(profile.m) * (evaluate(_centered(g, ap), e - ap) + dg)
    w = np.where(w_lo.real <= 0.5 * abs(dg), w_lo, w_hi)
    return w.real, w.imag


def _fit_decay(x, dev, floor):
    keep = dev > floor
    if keep.sum() < 3:
        return float("nan")
    slope = np.polyfit(x[keep], np.log(dev[keep]), 1)[0]
    return abs(float(slope))


def verify_orbit(f, profile):
    """Residual diagnostics of a sampled orbit.

    Decay exponents are fitted to log|e - a| over the outer 20% of nodes on
    each side, skipping nodes whose deviation is below the rounding floor.
    """
    e, de, dx = profile.e, profile.de, profile.dx
    fe = evaluate(f, e)
    equi = np.max(np.abs(0.5 * np.abs(de) ** 2 - np.abs(fe) ** 2))
    first = np.max(np.abs(de - SQRT2 * profile.m * np.conj(fe)))
    dde = (e[2:] - 2.0 * e[1:-1] + e[:-2]) / dx**2
    ei = e[1:-1]
    second = np.max(np.abs(dde - 2.0 * evaluate(f, ei) * np.conj(evaluate(derivative(f), ei))))
    s, t = segment_coordinates(f, profile)
    n = profile.N + 1
    q = max(n // 5, 3)
    floor_m = 1e-12 * max(1.0, abs(profile.a_minus))
    floor_p = 1e-12 * max(1.0, abs(profile.a_plus))
    k_fit_m = _fit_decay(profile.x[:q], np.abs(e[:q] - profile.a_minus), floor_m)
    k_fit_p = _fit_decay(profile.x[-q:], np.abs(e[-q:] - profile.a_plus), floor_p)
    return Diagnostics(
        equipartition=float(equi),
        first_order=float(first),
        second_order=float(second),
        segment_deviation=float(np.max(np.abs(t))),
        segment_monotone=bool(np.all(np.diff(s) >= -1e-12 * max(1.0, np.max(np.abs(s))))),
        fitted_k_minus=k_fit_m,
        fitted_k_plus=k_fit_p,
        k_minus=profile.k_minus,
        k_plus=profile.k_plus,
        match_error=profile.match_error,
    )


def energy_density_integral(f, e, de, dx):
    """Simpson quadrature of 1/2 |e'|^2 + W(e) on the grid (no tail terms)."""
    return _numerics.integrate(0.5 * np.abs(de) ** 2 + np.abs(evaluate(f, e)) ** 2, dx)


def quadrature_energy(f, profile):
    """Energy of a sampled orbit: Simpson on [-X, X] plus the exponential tails.

    Beyond the grid each tail contributes |e_bdry - a|^2 * k / 2.
    """
    if profile.N < 8:
        raise InvalidGrid("quadrature_energy needs N >= 8")
    core = energy_density_integral(f, profile.e, profile.de, profile.dx)
    tails = 0.5 * profile.k_minus * abs(profile.tail_minus) ** 2
    tails += 0.5 * profile.k_plus * abs(profile.tail_plus) ** 2
    return core + tails


def constant_profile(f, a, X=12.0, N=4096):
    """Synthetic 'orbit' sitting at the well ``a``: e = a, e' = 0 on every node."""
    a = _location(a)
    x = -X + np.arange(N + 1) * (2.0 * X / N)
    k = float(SQRT2 * abs(evaluate(derivative(f), a)))
    return OrbitProfile(
        f=f,
        a_minus=a,
        a_plus=a,
        m=1.0 + 0j,
        X=float(X),
        N=int(N),
        x=x,
        e=np.full(N + 1, a, dtype=complex),
        de=np.zeros(N + 1, dtype=complex),
        energy=0.0,
        k_minus=k,
        k_plus=k,
    )
