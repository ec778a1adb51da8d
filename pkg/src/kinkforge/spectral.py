"""Discretized linearization L = -d^2/dx^2 + D^2W(e) and its lowest eigenpairs.

L is truncated to [-X, X] with Dirichlet conditions and the three-point
Laplacian, giving a symmetric block-tridiagonal matrix with 2x2 blocks.
Eigenvalues are located by bisection on the Sylvester inertia of the block
LDL^T factorization; eigenvectors come from shifted inverse iteration.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh, qr, solve_banded

from .errors import Breakdown, InvalidGrid, NonConvergence
from .holomorphic_potential import Sym2x2, derivative, evaluate, hessian_matrix

SPECTRAL_SEED = 0x5EED
ALIGNMENT_MIN = 0.9999


@dataclass
class DiscretizedOperator:
    """Block-tridiagonal L: diagonal blocks 2/dx^2 I + V_i, off-diagonal blocks -1/dx^2 I.

    Vectors are complex arrays of length ``n`` (h1 + i*h2 at each interior node).
    """

    dx: float
    V: Sym2x2

    @property
    def n(self):
        return np.size(self.V.m11)

    @property
    def coupling(self):
        return 1.0 / self.dx**2

    def matvec(self, v):
        v = np.asarray(v, dtype=complex)
        t = self.coupling
        out = 2.0 * t * v
        out[1:] -= t * v[:-1]
        out[:-1] -= t * v[1:]
        h1, h2 = v.real, v.imag
        out += (self.V.m11 * h1 + self.V.m12 * h2) + 1j * (self.V.m12 * h1 + self.V.m22 * h2)
        return out

    def banded(self, shift=0.0):
        """Interleaved real ordering (h1_0, h2_0, h1_1, ...) in LAPACK general-band form (2, 2)."""
        n2 = 2 * self.n
        ab = np.zeros((5, n2))
        d = np.empty(n2)
        d[0::2] = 2.0 * self.coupling + self.V.m11 - shift
        d[1::2] = 2.0 * self.coupling + self.V.m22 - shift
        ab[2] = d
        off1 = np.zeros(n2 - 1)
        off1[0::2] = self.V.m12
        ab[1, 1:] = off1
        ab[3, :-1] = off1
        ab[0, 2:] = -self.coupling
        ab[4, :-2] = -self.coupling
        return ab

    def dense(self):
        ab = self.banded()
        n2 = ab.shape[1]
        A = np.zeros((n2, n2))
        for j in range(n2):
            for i in range(max(0, j - 2), min(n2, j + 3)):
                A[i, j] = ab[2 + i - j, j]
        return A

    @property
    def potential_sup(self):
        return float(np.max(self.V.spectral_norm()))


def _to_real(v):
    r = np.empty(2 * v.size)
    r[0::2], r[1::2] = v.real, v.imag
    return r


def _to_complex(r):
    return r[0::2] + 1j * r[1::2]


def assemble(f, profile):
    """L on the interior nodes of ``profile`` (anything with ``e`` and ``dx``)."""
    e = np.asarray(profile.e)[1:-1]
    if e.size < 1:
        raise InvalidGrid("no interior nodes")
    V = hessian_matrix(f, e)
    V = Sym2x2(*(np.atleast_1d(np.asarray(c, dtype=float)) for c in (V.m11, V.m12, V.m22)))
    return DiscretizedOperator(float(profile.dx), V)


def _inertia_once(op, sigma):
    t2 = op.coupling**2
    d0 = 2.0 * op.coupling - sigma
    a11, a12, a22 = op.V.m11.tolist(), op.V.m12.tolist(), op.V.m22.tolist()
    # inverse of the previous pivot, as (p11, p12, p22)
    p11 = p12 = p22 = 0.0
    count = 0
    for i in range(len(a11)):
        d11 = d0 + a11[i] - t2 * p11
        d12 = a12[i] - t2 * p12
        d22 = d0 + a22[i] - t2 * p22
        det = d11 * d22 - d12 * d12
        scale = d11 * d11 + 2.0 * d12 * d12 + d22 * d22
        if abs(det) <= 1e-14 * scale:
            raise Breakdown(f"near-singular pivot at block {i} for shift {sigma!r}")
        if det < 0.0:
            count += 1
        elif d11 + d22 < 0.0:
            count += 2
        p11, p12, p22 = d22 / det, -d12 / det, d11 / det
    return count


def inertia(op, sigma, retries=3, jitter=1e-9):
    """Number of eigenvalues of ``op`` below ``sigma`` (Sylvester's law on block LDL^T).

    On a near-singular pivot the shift is nudged by ``jitter`` and the
    count retried; Breakdown is raised when every attempt fails.
    """
    for k in range(retries + 1):
        try:
            return _inertia_once(op, sigma + k * jitter)
        except Breakdown:
            if k == retries:
                raise


def gershgorin(op):
    t = op.coupling
    c1 = 2.0 * t + op.V.m11
    c2 = 2.0 * t + op.V.m22
    r = 2.0 * t + np.abs(op.V.m12)
    return float(min(np.min(c1 - r), np.min(c2 - r))), float(max(np.max(c1 + r), np.max(c2 + r)))


def bisect_eigenvalues(op, k):
    """The k smallest eigenvalues by inertia bisection, sharing every count across brackets."""
    lo0, hi0 = gershgorin(op)
    lo = np.full(k, lo0 - 1.0)
    hi = np.full(k, hi0 + 1.0)
    span = max(abs(lo0), abs(hi0), 1.0)
    tol = 8.0 * np.finfo(float).eps * span
    # each count halves one bracket; ~60 halvings reach rounding level
    for _ in range(100 * (k + 1)):
        width = hi - lo
        j = int(np.argmax(width - tol - 1e-15 * np.abs(lo)))
        if width[j] <= tol + 1e-15 * abs(lo[j]):
            return 0.5 * (lo + hi)
        sigma = 0.5 * (lo[j] + hi[j])
        c = inertia(op, sigma)
        below = np.arange(k) < c
        hi[below] = np.minimum(hi[below], sigma)
        lo[~below] = np.maximum(lo[~below], sigma)
    raise NonConvergence("eigenvalue bisection did not converge")


def _clusters(theta, rel):
    groups, cur = [], [0]
    for i in range(1, theta.size):
        if theta[i] - theta[cur[-1]] <= rel * max(1.0, abs(theta[i])):
            cur.append(i)
        else:
            groups.append(cur)
            cur = [i]
    groups.append(cur)
    return groups


@dataclass
class EigenResult:
    theta: np.ndarray
    vectors: list
    residuals: np.ndarray


def lowest_eigenpairs(op, k=4, tol=1e-8, max_iter=30, seed=SPECTRAL_SEED, cluster_rel=1e-9):
    """k smallest eigenpairs: bisection for values, inverse iteration for vectors.

    Eigenvalues closer than ``cluster_rel`` (relative) share a block inverse
    iteration from a seeded random start followed by Rayleigh-Ritz.
    Residuals are ||Lv - theta v|| / ||v||.
    """
    if k < 1:
        raise ValueError("k must be positive")
    k = min(k, 2 * op.n)
    theta = bisect_eigenvalues(op, k)
    rng = np.random.default_rng(seed)
    n2 = 2 * op.n
    vals, vecs, res = [], [], []
    for group in _clusters(theta, cluster_rel):
        p = len(group)
        # a shift just below the cluster keeps the banded system nonsingular
        gap = 1e-10 * max(1.0, abs(theta[group[0]]))
        ab = op.banded(shift=theta[group[0]] - gap)
        Q = np.linalg.qr(rng.standard_normal((n2, p)))[0]
        for _ in range(max_iter):
            Y = solve_banded((2, 2), ab, Q)
            Q = qr(Y, mode="economic")[0]
            AQ = np.column_stack([_to_real(op.matvec(_to_complex(q))) for q in Q.T])
            ritz, S = eigh(Q.T @ AQ)
            V = Q @ S
            R = AQ @ S - V * ritz
            r = np.linalg.norm(R, axis=0)
            if np.all(r <= tol):
                break
        else:
            raise NonConvergence(f"inverse iteration stalled near {theta[group[0]]:.6g} (residual {r.max():.3g})")
        for i in range(p):
            vals.append(ritz[i])
            vecs.append(_to_complex(V[:, i]))
            res.append(r[i])
    order = np.argsort(vals)
    return EigenResult(np.asarray(vals)[order], [vecs[i] for i in order], np.asarray(res)[order])


def essential_edge(f, a_minus, a_plus):
    """M = 2 min(|f'(a-)|^2, |f'(a+)|^2), the bottom of the essential spectrum."""
    dp = derivative(f)
    return float(2.0 * min(abs(evaluate(dp, a_minus)) ** 2, abs(evaluate(dp, a_plus)) ** 2))


@dataclass
class SpectralReport:
    theta: np.ndarray
    residuals: np.ndarray
    alignment: float
    M: float
    X: float
    N: int
    theta_zero_tol: float
    gap_threshold: float
    verdict: bool = False
    narrative: str = ""
    vectors: list = field(default_factory=list, repr=False)

    def as_dict(self):
        return {
            "theta": [float(t) for t in self.theta],
            "residuals": [float(r) for r in self.residuals],
            "alignment": float(self.alignment),
            "M": float(self.M),
            "verdict": bool(self.verdict),
            "X": float(self.X),
            "N": int(self.N),
        }


def theta_zero_tolerance(op):
    return max(1e-3, 10.0 * op.dx**2 * op.potential_sup)


def nondegeneracy_verdict(report, gap_threshold=None):
    """True iff theta_0 ~ 0 with eigenvector along e', and theta_1 clears the gap threshold."""
    gap = report.M / 4.0 if gap_threshold is None else gap_threshold
    tz = report.theta_zero_tol
    th = report.theta
    checks = [
        (abs(th[0]) <= tz, f"|theta_0| = {abs(th[0]):.3g} <= {tz:.3g}"),
        (th[0] > -tz, f"theta_0 = {th[0]:.3g} > -{tz:.3g} (nonnegative)"),
        (report.alignment >= ALIGNMENT_MIN, f"alignment(v_0, e') = {report.alignment:.6f} >= {ALIGNMENT_MIN}"),
        (th.size > 1 and th[1] >= gap, f"theta_1 = {th[1] if th.size > 1 else float('nan'):.6g} >= {gap:.6g}"),
    ]
    ok = all(c for c, _ in checks)
    lines = [("PASS " if c else "FAIL ") + msg for c, msg in checks]
    head = "nondegenerate: kernel spanned by e', spectral gap present" if ok else "nondegeneracy NOT certified"
    return ok, "\n".join([head] + lines)


def spectrum(f, profile, k=4, gap_threshold=None, tol=1e-8):
    """Assemble L along ``profile`` and report its lowest ``k`` eigenpairs with the verdict."""
    op = assemble(f, profile)
    eig = lowest_eigenpairs(op, k=k, tol=tol)
    de = np.asarray(profile.de)[1:-1]
    v0 = eig.vectors[0]
    norms = np.linalg.norm(v0) * np.linalg.norm(de)
    align = abs(np.sum(np.real(np.conj(v0) * de))) / norms if norms > 0 else 0.0
    M = essential_edge(f, profile.a_minus, profile.a_plus)
    report = SpectralReport(
        theta=eig.theta,
        residuals=eig.residuals,
        alignment=float(align),
        M=M,
        X=float(profile.X),
        N=int(profile.N),
        theta_zero_tol=theta_zero_tolerance(op),
        gap_threshold=M / 4.0 if gap_threshold is None else gap_threshold,
        vectors=eig.vectors,
    )
    report.verdict, report.narrative = nondegeneracy_verdict(report, report.gap_threshold)
    return report
