"""Dense complex matrix kernels: Kronecker products, Hermitian spectra, 3x3 SVD.

Matrices are plain ``numpy.ndarray`` objects of shape ``(dim, dim)``.  Every
function here is pure; inputs are never modified in place.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import BadShape, ConvergenceError, NotHermitian

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Ascending real eigenvalues plus the worst eigenpair residual."""

    values: np.ndarray
    residual: float

    def __len__(self) -> int:
        return len(self.values)

    @property
    def min(self) -> float:
        return float(self.values[0])


def as_square(m, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(m)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise BadShape(f"{name} must be a square 2-D array, got shape {arr.shape}")
    return arr


def kron(a, b) -> np.ndarray:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    return np.kron(as_square(a, "a"), as_square(b, "b"))


def kron_all(factors) -> np.ndarray:
    """Left-to-right Kronecker product of a non-empty sequence of matrices."""
    factors = list(factors)
    if not factors:
        raise ValueError("kron_all needs at least one factor")
    return reduce(np.kron, factors)


def allclose(a, b, atol: float) -> bool:
    """Entrywise comparison with an absolute tolerance only."""
    return bool(np.max(np.abs(np.asarray(a) - np.asarray(b)), initial=0.0) <= atol)


def hermiticity_error(m) -> float:
    m = as_square(m)
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def jacobi_eigh(m, tol: float = 1e-14, max_sweeps: int = 60):
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Each off-diagonal element ``m[p, q] = r e^{i phi}`` is first rotated onto
    the real axis by a diagonal phase, then annihilated by an ordinary real
    Jacobi rotation.  Returns ``(values, vectors)`` with eigenvectors as
    columns, values in the order the diagonal converged to.
    """
    a = np.array(as_square(m), dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(np.max(np.abs(a), initial=0.0), 1.0)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(a - np.diag(np.diag(a))) ** 2))
        if off <= tol * scale:
            return np.real(np.diag(a)).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                z = a[p, q]
                r = abs(z)
                if r <= 1e-300:
                    continue
                phase = z / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                u = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = u.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ u
    raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def hermitian_eigenvalues(m, tol: float = DEFAULT_TOL, method: str = "lapack") -> Spectrum:
    """Eigenvalues of a Hermitian matrix in ascending order.

    ``method`` selects LAPACK ``eigh`` (default) or :func:`jacobi_eigh`.
    Raises :class:`NotHermitian` when ``max|m - m^H| > tol`` and
    :class:`ConvergenceError` when an eigenpair residual exceeds ``tol``
    (scaled by the matrix norm for matrices with entries above one).
    """
    m = as_square(m)
    herr = hermiticity_error(m)
    if herr > tol:
        raise NotHermitian(f"matrix deviates from its adjoint by {herr:.3e} > {tol:.1e}")
    h = 0.5 * (m + m.conj().T)
    if method == "lapack":
        values, vectors = np.linalg.eigh(h)
    elif method == "jacobi":
        values, vectors = jacobi_eigh(h)
    else:
        raise ValueError(f"unknown eigensolver method {method!r}")
    order = np.argsort(values, kind="stable")
    values = np.asarray(values)[order]
    vectors = vectors[:, order]
    residual = float(np.max(np.linalg.norm(h @ vectors - vectors * values, axis=0), initial=0.0))
    scale = max(1.0, float(np.max(np.abs(h), initial=0.0)))
    if residual > tol * scale:
        raise ConvergenceError(f"eigenpair residual {residual:.3e} exceeds {tol:.1e}")
    return Spectrum(values=values, residual=residual)


def min_eigenvalue(m, tol: float = DEFAULT_TOL) -> float:
    return hermitian_eigenvalues(m, tol).min


def is_psd(m, tol: float = DEFAULT_TOL) -> bool:
    return min_eigenvalue(m, tol) >= -tol


def svd3(t):
    """SVD of a real 3x3 matrix: ``t = U @ diag(s) @ V.T`` with ``s >= 0``."""
    t = np.asarray(t, dtype=float)
    if t.shape != (3, 3):
        raise BadShape(f"svd3 expects a 3x3 matrix, got {t.shape}")
    u, s, vt = np.linalg.svd(t)
    return u, s, vt.T
