"""Spectra of reversible chains, relaxation time and mixing-time bounds.

A chain reversible with respect to ``pi`` is similar to the symmetric matrix
``A = D^{1/2} P D^{-1/2}`` (``D = diag(pi)``), so its eigenvalues are real and
are found here with a cyclic Jacobi eigensolver.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import errors
from .chain import as_matrix
from .stationary import DBE_TOL, check_reversible

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def jacobi_eigh(A, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS, vectors=False):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Iterates row-by-row sweeps over all pairs (p, q) until the Frobenius norm
    of the off-diagonal part drops below ``tol``.

    Returns the eigenvalues (unsorted, in diagonal order), and with
    ``vectors=True`` also the matrix whose columns are the eigenvectors.
    """
    A = np.array(A, dtype=np.float64)
    n = A.shape[0]
    A = 0.5 * (A + A.T)
    V = np.eye(n) if vectors else None

    def off_norm():
        # subtracting the diagonal from the full norm cancels badly near convergence
        return float(np.linalg.norm(A[~np.eye(n, dtype=bool)]))

    for _ in range(max_sweeps):
        if off_norm() < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                h = A[q, q] - A[p, p]
                if abs(h) + 100.0 * abs(apq) == abs(h):
                    t = apq / h  # theta^2 would overflow
                else:
                    theta = h / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                app, aqq = A[p, p], A[q, q]
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                A[p, :] = A[:, p]
                A[q, :] = A[:, q]
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                A[p, q] = A[q, p] = 0.0
                if V is not None:
                    vp = V[:, p].copy()
                    vq = V[:, q].copy()
                    V[:, p] = c * vp - s * vq
                    V[:, q] = s * vp + c * vq
    else:
        if off_norm() >= tol:
            raise errors.NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps "
                                       f"(off-diagonal norm {off_norm():.3g})")
    w = np.diag(A).copy()
    return (w, V) if vectors else w


def symmetrize(P, pi, tol=DBE_TOL):
    """A[x, y] = sqrt(pi_x / pi_y) P[x, y]; symmetric exactly when (P, pi) is reversible."""
    A = as_matrix(P)
    pi = np.asarray(pi, dtype=np.float64)
    if pi.shape != (len(A),):
        raise errors.DimensionMismatch(f"pi has length {len(pi)}, chain has {len(A)} states")
    if np.any(pi <= 0):
        raise errors.NonPositivePi(f"pi({int(np.argmin(pi))}) is not positive")
    rep = check_reversible(A, pi, tol)
    if not rep.reversible:
        raise errors.NotReversible(f"detailed balance fails at {rep.worst_pair} "
                                   f"(violation {rep.max_violation:.3g})")
    r = np.sqrt(pi)
    return r[:, None] * A / r[None, :]


@dataclass(frozen=True)
class SpectralData:
    eigenvalues: np.ndarray  # descending
    lambda_star: float
    gap: float
    t_rel: float
    eigenvectors: np.ndarray = None  # columns are right eigenvectors of P

    @classmethod
    def from_eigenvalues(cls, eigenvalues, eigenvectors=None):
        ev = np.asarray(eigenvalues, dtype=np.float64)
        order = np.argsort(-ev, kind="stable")
        ev = ev[order]
        if eigenvectors is not None:
            eigenvectors = eigenvectors[:, order]
        lam_star = float(np.max(np.abs(ev[1:]))) if len(ev) > 1 else 0.0
        gap = 1.0 - lam_star
        t_rel = 1.0 / gap if gap > 0 else math.inf
        return cls(ev, lam_star, gap, t_rel, eigenvectors)


def spectrum(P, pi, vectors=False):
    """Eigenvalues of a reversible chain and its gap and relaxation time.

    With ``vectors=True`` the right eigenvectors ``D^{-1/2} u`` of ``P`` are
    returned too, normalised to unit length in l2(pi).
    """
    A = symmetrize(P, pi)
    if vectors:
        w, U = jacobi_eigh(A, vectors=True)
        V = U / np.sqrt(np.asarray(pi, dtype=np.float64))[:, None]
        return SpectralData.from_eigenvalues(w, V)
    return SpectralData.from_eigenvalues(jacobi_eigh(A))


def mixing_bounds(spec, pi_min, eps):
    """(t_rel - 1) log(1/(2 eps)) <= t_mix(eps) <= log(1/(eps pi_min)) t_rel, natural logs."""
    if not 0 < eps < 1:
        raise ValueError(f"eps = {eps!r} must lie in (0, 1)")
    if not pi_min > 0:
        raise errors.NonPositivePi("pi_min must be positive")
    if not spec.gap > 0:
        raise errors.DegenerateGap(f"absolute spectral gap is {spec.gap!r}; the chain is periodic "
                                   "or reducible")
    lower = (spec.t_rel - 1.0) * math.log(1.0 / (2.0 * eps))
    upper = math.log(1.0 / (eps * pi_min)) * spec.t_rel
    return lower, upper


def closed_form_spectrum(kind, size):
    """Known spectra, descending: ``("cycle", n)`` and ``("lazy_hypercube", N)``."""
    if kind == "cycle":
        if size < 3:
            raise errors.SizeTooSmall("cycle needs n >= 3")
        ev = [math.cos(2 * math.pi * j / size) for j in range(size)]
    elif kind == "lazy_hypercube":
        if size < 1:
            raise errors.SizeTooSmall("hypercube dimension must be >= 1")
        ev = [1 - k / size for k in range(size + 1) for _ in range(math.comb(size, k))]
    else:
        raise ValueError(f"unknown spectrum kind {kind!r}")
    return np.sort(np.array(ev))[::-1]
