"""Complex polynomials f and the planar potential W(z) = |f(z)|^2.

The plane is identified with C throughout: a point (x1, x2) is x1 + i*x2,
and so is a tangent vector h = (h1, h2).
"""

from dataclasses import dataclass
import json

import numpy as np

from .errors import NonConvergence

TOL_ROOT = 1e-10
TOL_SIMPLE = 1e-8
# relative radius inside which computed roots are treated as one multiple zero
TOL_CLUSTER = 1e-5
# non-simple roots this close (relative) belong to one multiple zero
MERGE_RADIUS = 1e-2
MAX_ABERTH_ITER = 200


class ComplexPoly:
    """Polynomial with complex coefficients, stored in ascending order.

    Trailing (leading-degree) zeros are stripped so that ``coeffs[-1]`` is
    nonzero, except for the zero polynomial which is ``[0]`` with degree 0.
    Instances are treated as immutable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:1] * 0
        c.setflags(write=False)
        self._coeffs = c

    @classmethod
    def from_roots(cls, roots, leading=1.0):
        c = np.array([leading], dtype=complex)
        for r in roots:
            # multiply by (z - r)
            c = np.concatenate(([0.0], c)) - r * np.concatenate((c, [0.0]))
        return cls(c)

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def degree(self):
        return self._coeffs.size - 1

    @property
    def leading(self):
        return self._coeffs[-1]

    def __call__(self, z):
        return evaluate(self, z)

    def __eq__(self, other):
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return np.array_equal(self._coeffs, other._coeffs)

    def __hash__(self):
        return hash(self._coeffs.tobytes())

    def __repr__(self):
        return f"ComplexPoly({self._coeffs.tolist()!r})"

    def __mul__(self, scalar):
        return ComplexPoly(self._coeffs * complex(scalar))

    __rmul__ = __mul__

    def derivative(self):
        return derivative(self)

    def antiderivative(self):
        return antiderivative(self)

    def compose_affine(self, alpha, beta):
        """Return the polynomial z -> p(alpha*z + beta)."""
        inner = np.array([beta, alpha], dtype=complex)
        out = np.zeros(1, dtype=complex)
        for c in self._coeffs[::-1]:
            out = np.convolve(out, inner)
            out[0] += c
        return ComplexPoly(out)

    def roots(self, tol_root=TOL_ROOT):
        return roots(self, tol_root)

    def to_json(self):
        return json.dumps(to_dict(self))

    @classmethod
    def from_json(cls, text):
        return from_dict(json.loads(text))


def to_dict(p):
    return {"coeffs": [[float(c.real), float(c.imag)] for c in p.coeffs]}


def from_dict(obj):
    try:
        pairs = obj["coeffs"]
        coeffs = [complex(float(re), float(im)) for re, im in pairs]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError('polynomial JSON must look like {"coeffs": [[re, im], ...]}') from exc
    if not coeffs:
        raise ValueError("polynomial JSON has no coefficients")
    return ComplexPoly(coeffs)


def evaluate(p, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    z = np.asarray(z, dtype=complex)
    out = np.full(z.shape, p.coeffs[-1], dtype=complex)
    for c in p.coeffs[-2::-1]:
        out = out * z + c
    return out[()] if out.ndim == 0 else out


def derivative(p):
    if p.degree == 0:
        return ComplexPoly([0.0])
    k = np.arange(1, p.degree + 1)
    return ComplexPoly(p.coeffs[1:] * k)


def antiderivative(p):
    """Primitive g with g(0) = 0.

    Only differences of g between wells are ever used, so the constant of
    integration is irrelevant.
    """
    k = np.arange(1, p.degree + 2)
    return ComplexPoly(np.concatenate(([0.0], p.coeffs / k)))


def _aberth(p, dp, tol_root):
    c = p.coeffs
    d = p.degree
    radius = 1.0 + np.max(np.abs(c[:-1] / c[-1]))
    # offset angle keeps the start off any symmetry axis of real polynomials
    z = radius * np.exp(1j * (2.0 * np.pi * np.arange(d) / d + 0.4))
    scale = np.max(np.abs(c))
    eye = np.eye(d, dtype=bool)
    for _ in range(MAX_ABERTH_ITER):
        pz = evaluate(p, z)
        resid_ok = np.abs(pz) <= tol_root * (1.0 + np.abs(z)) ** d * scale
        dpz = evaluate(dp, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(pz == 0, 0.0, pz / dpz)
            diff = z[:, None] - z[None, :]
            diff[eye] = 1.0
            inv = 1.0 / diff
            inv[eye] = 0.0
            repulsion = inv.sum(axis=1)
            w = ratio / (1.0 - ratio * repulsion)
        w = np.where(np.isfinite(w), w, 0.0)
        z = z - w
        stalled = np.abs(w) <= 8.0 * np.finfo(float).eps * np.maximum(np.abs(z), 1.0)
        if np.all(resid_ok & stalled):
            return z
    pz = evaluate(p, z)
    if np.all(np.abs(pz) <= tol_root * (1.0 + np.abs(z)) ** d * scale):
        return z
    raise NonConvergence(f"Aberth iteration did not converge in {MAX_ABERTH_ITER} steps")


def _polish(p, dp, z, steps=3):
    """Newton steps, each kept only if it lowers |p|."""
    z = z.copy()
    for _ in range(steps):
        pz = evaluate(p, z)
        dpz = evaluate(dp, z)
        ok = dpz != 0
        cand = np.where(ok, z - np.where(ok, pz / np.where(ok, dpz, 1.0), 0.0), z)
        better = np.abs(evaluate(p, cand)) < np.abs(pz)
        z = np.where(better, cand, z)
    return z


def roots(p, tol_root=TOL_ROOT):
    """All roots of ``p`` with multiplicity, by Aberth-Ehrlich iteration.

    Raises NonConvergence if the iteration cap is reached without meeting the
    residual test ``|p(r)| <= tol_root * (1 + |r|)**d * max|c_i|``.
    """
    if p.degree < 1:
        raise ValueError("roots needs a polynomial of degree >= 1")
    if p.degree == 1:
        return np.array([-p.coeffs[0] / p.coeffs[1]], dtype=complex)
    dp = derivative(p)
    z = _aberth(p, dp, tol_root)
    z = _polish(p, dp, z)
    return _sorted(z)


def _tie(z):
    # lexicographic (Re, Im) order; rounding noise in Re must not split ties
    # such as +-i, so Re is compared on a grid relative to the root scale
    return 1e-9 * max(1.0, float(np.max(np.abs(z), initial=0.0)))


def _sorted(z):
    return z[np.lexsort((z.imag, np.round(z.real / _tie(z))))]


@dataclass(frozen=True)
class Well:
    """A nondegenerate zero of W, i.e. a simple root of f."""

    location: complex
    fprime: complex

    @property
    def decay_rate(self):
        return np.sqrt(2.0) * abs(self.fprime)

    @property
    def hessian_scale(self):
        return 2.0 * abs(self.fprime) ** 2


@dataclass(frozen=True)
class DegenerateZero:
    location: complex
    multiplicity: int


def _cluster(rs, close):
    """Single-linkage groups of ``rs`` under the pairwise predicate ``close``."""
    label = list(range(len(rs)))
    for i in range(len(rs)):
        for j in range(i):
            if close(i, j) and label[i] != label[j]:
                old, new = label[i], label[j]
                label = [new if l == old else l for l in label]
    groups = {}
    for i, l in enumerate(label):
        groups.setdefault(l, []).append(rs[i])
    return list(groups.values())


def _refine_multiple(p, a, m, radius, steps=8):
    # an m-fold zero of p is a simple zero of its (m-1)-th derivative
    q = p
    for _ in range(m - 1):
        q = derivative(q)
    dq = derivative(q)
    z = a
    for _ in range(steps):
        d = evaluate(dq, z)
        if d == 0:
            break
        z_new = z - evaluate(q, z) / d
        if abs(z_new - a) > radius:
            return a
        z = z_new
    return complex(z)


def zeros(p, tol_root=TOL_ROOT, tol_simple=TOL_SIMPLE, tol_cluster=TOL_CLUSTER):
    """Split the zeros of f into wells and degenerate (multiple) zeros.

    Roots closer than ``tol_cluster * (1 + |r|)`` are grouped, and so are
    non-simple roots (|f'| <= tol_simple) within MERGE_RADIUS, since an
    m-fold zero is only resolved to about eps**(1/m). A group of size m
    counts as one zero of multiplicity m, its location refined by Newton on
    the (m-1)-th derivative. Both lists are sorted lexicographically by (Re, Im).
    """
    dp = derivative(p)
    rs = [complex(r) for r in roots(p, tol_root)]
    flat = [abs(evaluate(dp, r)) <= tol_simple for r in rs]

    def close(i, j):
        gap = abs(rs[i] - rs[j])
        scale = 1.0 + abs(rs[i])
        return gap <= tol_cluster * scale or (flat[i] and flat[j] and gap <= MERGE_RADIUS * scale)

    found, degenerate = [], []
    for g in _cluster(rs, close):
        a = complex(np.mean(g))
        if len(g) > 1:
            a = _refine_multiple(p, a, len(g), MERGE_RADIUS * (1.0 + abs(a)))
        fp = complex(evaluate(dp, a))
        if len(g) == 1 and abs(fp) > tol_simple:
            found.append(Well(a, fp))
        else:
            degenerate.append(DegenerateZero(a, len(g)))
    tie = _tie([w.location for w in found + degenerate])
    key = lambda w: (round(w.location.real / tie), w.location.imag)
    return sorted(found, key=key), sorted(degenerate, key=key)


def wells(p, tol_root=TOL_ROOT, tol_simple=TOL_SIMPLE):
    return zeros(p, tol_root, tol_simple)[0]


def potential(p, z):
    return np.abs(evaluate(p, z)) ** 2


def grad_W(p, z):
    """Gradient of W as a complex number: 2 f(z) conj(f'(z))."""
    return 2.0 * evaluate(p, z) * np.conj(evaluate(derivative(p), z))


def hessian_form(p, z, h):
    """h^T D^2W(z) h = 2|f'(z)|^2 |h|^2 + 2 Re(f''(z) conj(f(z)) h^2)."""
    dp = derivative(p)
    fz, f1, f2 = evaluate(p, z), evaluate(dp, z), evaluate(derivative(dp), z)
    h = np.asarray(h, dtype=complex)
    return 2.0 * np.abs(f1) ** 2 * np.abs(h) ** 2 + 2.0 * np.real(f2 * np.conj(fz) * h * h)


@dataclass(frozen=True)
class Sym2x2:
    """Symmetric 2x2 matrix [[m11, m12], [m12, m22]]; fields may be arrays."""

    m11: object
    m12: object
    m22: object

    def quad(self, h):
        h = np.asarray(h, dtype=complex)
        h1, h2 = h.real, h.imag
        return self.m11 * h1 * h1 + 2.0 * self.m12 * h1 * h2 + self.m22 * h2 * h2

    def eigvalsh(self):
        mean = 0.5 * (self.m11 + self.m22)
        rad = np.hypot(0.5 * (self.m11 - self.m22), self.m12)
        return mean - rad, mean + rad

    def spectral_norm(self):
        lo, hi = self.eigvalsh()
        return np.maximum(np.abs(lo), np.abs(hi))

    def as_array(self):
        return np.array([[self.m11, self.m12], [self.m12, self.m22]], dtype=float)


def hessian_matrix(p, z):
    """D^2W(z) in the real basis (1, i), from the closed form of the quadratic form."""
    dp = derivative(p)
    fz, f1, f2 = evaluate(p, z), evaluate(dp, z), evaluate(derivative(dp), z)
    iso = 2.0 * np.abs(f1) ** 2
    a = f2 * np.conj(fz)
    return Sym2x2(iso + 2.0 * a.real, -2.0 * a.imag, iso - 2.0 * a.real)
