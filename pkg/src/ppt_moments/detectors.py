"""Named separability tests returning :class:`Certificate` records."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DimensionMismatch, NotBracketed, WrongArity
from .linalg import DEFAULT_TOL, hermitian_eigenvalues, svd3
from .moments import (
    m1_pair,
    m1_raw_pair,
    m1_schur,
    m2_pt_eigs,
    msigma_pair,
    msigma_pt_eigs,
    sigma_expectations,
    sr_check,
    srpt_check,
)
from .pauli import OrthonormalTriad, build_pt_sigma_set, build_sigma_set, standard_triads
from .pt import Bipartition, partial_transpose
from .states import DensityOperator, SchmidtParams, extract_two_qubit_data

DETECTORS = ("m1", "m2", "sigma", "horodecki", "peres", "sr", "srpt")
TWO_QUBIT_DETECTORS = ("m1", "m2", "horodecki")


@dataclass(frozen=True)
class Certificate:
    """Verdict of one detector on one bipartition.

    For eigenvalue-based detectors ``bound_satisfied`` is exactly
    ``min_eigenvalue >= -tolerance``.
    """

    detector: str
    bipartition: Bipartition
    min_eigenvalue: float
    bound_satisfied: bool
    witness_values: dict = field(default_factory=dict)
    tolerance: float = DEFAULT_TOL

    def to_dict(self) -> dict:
        return {
            "detector": self.detector,
            "bipartition": self.bipartition.to_dict(),
            "min_eigenvalue": float(self.min_eigenvalue),
            "bound_satisfied": bool(self.bound_satisfied),
            "witness_values": {k: float(v) for k, v in self.witness_values.items()},
            "tolerance": float(self.tolerance),
        }


def _certificate(name, b, min_eig, witness, tol) -> Certificate:
    return Certificate(name, b, float(min_eig), bool(min_eig >= -tol), witness, tol)


def _two_qubit(rho: DensityOperator, name: str):
    if rho.n_qubits != 2:
        raise WrongArity(f"detector {name!r} applies to two-qubit states only (got N = {rho.n_qubits})")


def _default_bipartition(rho, b):
    return Bipartition.first(rho.n_qubits) if b is None else b


# -- correlation-matrix normal form --------------------------------------------


def diagonalize_T(t):
    """Rotations ``O1, O2`` in SO(3) with ``O1 @ T @ O2.T = diag(t)``.

    Built from the SVD; a reflection left in either factor is removed by
    negating its third column together with ``t[2]``, so entries of ``t``
    may be negative.  Ordered by descending magnitude.
    """
    u, s, v = svd3(t)
    u, v = u.copy(), v.copy()
    diag = s.copy()
    if np.linalg.det(u) < 0:
        u[:, 2] *= -1
        diag[2] *= -1
    if np.linalg.det(v) < 0:
        v[:, 2] *= -1
        diag[2] *= -1
    return u.T, v.T, diag


def horodecki(rho: DensityOperator, tol: float = DEFAULT_TOL, b: Bipartition | None = None) -> Certificate:
    """The four combinations ``1 +/- t1 +/- t2 +/- t3`` of the diagonalized T.

    PT on either qubit negates T, so ``b`` only labels the certificate.
    """
    _two_qubit(rho, "horodecki")
    _, _, t = diagonalize_T(extract_two_qubit_data(rho).T)
    combos = [
        1 + t[0] - t[1] - t[2],
        1 - t[0] + t[1] - t[2],
        1 - t[0] - t[1] + t[2],
        1 + t[0] + t[1] + t[2],
    ]
    witness = {"t1": t[0], "t2": t[1], "t3": t[2]}
    witness.update({f"mu{i}": v for i, v in enumerate(combos, start=1)})
    return _certificate("horodecki", _default_bipartition(rho, b), min(combos), witness, tol)


# -- two-qubit moment detectors ------------------------------------------------


def m1_detector(rho: DensityOperator, b: Bipartition | None = None, tol: float = DEFAULT_TOL) -> Certificate:
    """PSD test of the real 7x7 ``M_1^PT``; the raw complex form is reported too."""
    _two_qubit(rho, "m1")
    b = _default_bipartition(rho, b)
    m, m_pt = m1_pair(rho, b.transposed)
    _, raw_pt = m1_raw_pair(rho, b.transposed)
    witness = {
        "m1_min_eigenvalue": hermitian_eigenvalues(m, tol).min,
        "schur_min_eigenvalue": hermitian_eigenvalues(m1_schur(m_pt), tol).min,
        "raw_pt_min_eigenvalue": hermitian_eigenvalues(raw_pt, tol).min,
    }
    return _certificate("m1", b, hermitian_eigenvalues(m_pt, tol).min, witness, tol)


def m2_detector(
    rho: DensityOperator,
    f1: OrthonormalTriad | None = None,
    f2: OrthonormalTriad | None = None,
    b: Bipartition | None = None,
    tol: float = DEFAULT_TOL,
) -> Certificate:
    _two_qubit(rho, "m2")
    b = _default_bipartition(rho, b)
    f1 = f1 or OrthonormalTriad.standard()
    f2 = f2 or OrthonormalTriad.standard()
    mu = m2_pt_eigs(rho, f1, f2)
    witness = {f"mu{i}": v for i, v in enumerate(mu, start=1)}
    return _certificate("m2", b, float(np.min(mu)), witness, tol)


# -- multiqubit Sigma bound ----------------------------------------------------


def sigma_bound(rho: DensityOperator, triads=None, r=1, tol: float = DEFAULT_TOL) -> Certificate:
    """Scalar bound ``<Sigma_0^PT> >= |(<Sigma_1>, <Sigma_2>, <Sigma_3^PT>)|``.

    ``min_eigenvalue`` is the left side minus the right side, which is the
    eigenvalue mu_1- of the Sigma PT moment matrix.  The smallest eigenvalue
    of the whole matrix is stored as ``matrix_min_eigenvalue``.
    ``r`` is a count of leading qubits, an index collection or a
    :class:`Bipartition`.
    """
    n = rho.n_qubits
    triads = tuple(triads) if triads is not None else standard_triads(n)
    if len(triads) != n:
        raise DimensionMismatch(f"{len(triads)} triads for a {n}-qubit state")
    if isinstance(r, Bipartition):
        r = r.transposed
    s = build_sigma_set(triads)
    ps = build_pt_sigma_set(s, r)
    e = sigma_expectations(rho, s, ps)
    norm = math.sqrt(e.sigma[0] ** 2 + e.sigma[1] ** 2 + e.sigma_pt[2] ** 2)
    _, m_pt = msigma_pair(rho, s, ps)
    mu = msigma_pt_eigs(m_pt)
    witness = {
        "sigma1": e.sigma[0],
        "sigma2": e.sigma[1],
        "sigma3": e.sigma[2],
        "sigma0": e.sigma0,
        "sigma1_pt": e.sigma_pt[0],
        "sigma2_pt": e.sigma_pt[1],
        "sigma3_pt": e.sigma_pt[2],
        "sigma0_pt": e.sigma0_pt,
        "mu1_plus": mu[0],
        "mu1_minus": mu[1],
        "mu2_plus": mu[2],
        "mu2_minus": mu[3],
        "matrix_min_eigenvalue": float(np.min(mu)),
    }
    return _certificate("sigma", Bipartition(n, ps.transposed), e.sigma0_pt - norm, witness, tol)


def tangle3(par: SchmidtParams) -> float:
    """Three-tangle ``4 lambda_0^2 lambda_4^2`` of the canonical form."""
    lam = par.lambdas
    return 4.0 * lam[0] ** 2 * lam[4] ** 2


# -- ground truth and uncertainty detectors ------------------------------------


def peres_oracle(rho: DensityOperator, b: Bipartition | None = None, tol: float = DEFAULT_TOL) -> Certificate:
    """Smallest eigenvalue of the matrix partial transpose."""
    b = _default_bipartition(rho, b)
    if b.n_qubits != rho.n_qubits:
        raise DimensionMismatch(f"bipartition of {b.n_qubits} qubits for a {rho.n_qubits}-qubit state")
    spectrum = hermitian_eigenvalues(partial_transpose(rho.matrix, b.normalized()), tol)
    return _certificate("peres", b, spectrum.min, {"max_eigenvalue": spectrum.values[-1]}, tol)


def _sr_certificate(name, check, b, tol) -> Certificate:
    block_min = hermitian_eigenvalues(check.block, tol).min
    witness = {"lhs": check.lhs, "rhs": check.rhs, "var1": check.var1, "var2": check.var2}
    return _certificate(name, b, block_min, witness, tol)


def sr_detector(rho, triads=None, b=None, tol: float = DEFAULT_TOL) -> Certificate:
    """Uncertainty relation for ``Sigma_1, Sigma_2``; PSD of the 3x3 moment block."""
    triads = tuple(triads) if triads is not None else standard_triads(rho.n_qubits)
    s = build_sigma_set(triads)
    return _sr_certificate("sr", sr_check(rho, s.sigma1, s.sigma2), _default_bipartition(rho, b), tol)


def srpt_detector(rho, triads=None, b=None, tol: float = DEFAULT_TOL) -> Certificate:
    triads = tuple(triads) if triads is not None else standard_triads(rho.n_qubits)
    s = build_sigma_set(triads)
    b = _default_bipartition(rho, b)
    return _sr_certificate("srpt", srpt_check(rho, s.sigma1, s.sigma2, b), b, tol)


def run_detector(name: str, rho: DensityOperator, b=None, triads=None, tol: float = DEFAULT_TOL) -> Certificate:
    """Dispatch by name; ``triads`` feed the frame-dependent detectors."""
    b = _default_bipartition(rho, b)
    if triads is not None:
        triads = tuple(triads)
    if name == "m1":
        return m1_detector(rho, b, tol)
    if name == "m2":
        f1, f2 = (triads[0], triads[1]) if triads else (None, None)
        return m2_detector(rho, f1, f2, b, tol)
    if name == "sigma":
        return sigma_bound(rho, triads, b, tol)
    if name == "horodecki":
        return horodecki(rho, tol, b)
    if name == "peres":
        return peres_oracle(rho, b, tol)
    if name == "sr":
        return sr_detector(rho, triads, b, tol)
    if name == "srpt":
        return srpt_detector(rho, triads, b, tol)
    raise ValueError(f"unknown detector {name!r}; expected one of {DETECTORS}")


# -- threshold search ----------------------------------------------------------


@dataclass(frozen=True)
class BisectResult:
    threshold: float
    iterations: int
    bracket: tuple

    @property
    def width(self) -> float:
        return self.bracket[1] - self.bracket[0]

    def __float__(self) -> float:
        return self.threshold


def threshold_bisect(
    family: Callable[[float], DensityOperator],
    detector: Callable[[DensityOperator], Certificate],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> BisectResult:
    """Locate the parameter where ``detector`` changes its verdict.

    Endpoint verdicts must differ (either orientation).  When the flip sits
    on an endpoint itself, i.e. the verdict is constant on the open
    interval, :class:`NotBracketed` is raised as well.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    verdict_lo = detector(family(lo)).bound_satisfied
    verdict_hi = detector(family(hi)).bound_satisfied
    if verdict_lo == verdict_hi:
        state = "satisfied" if verdict_lo else "violated"
        raise NotBracketed(f"bound is {state} at both ends of [{lo}, {hi}]")
    a, b = lo, hi
    iterations = 0
    while b - a > tol and iterations < max_iter:
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        iterations += 1
        if detector(family(mid)).bound_satisfied == verdict_lo:
            a = mid
        else:
            b = mid
    if a == lo or b == hi:
        end = lo if a == lo else hi
        raise NotBracketed(f"verdict is constant on the open interval; it changes only at {end}")
    return BisectResult(0.5 * (a + b), iterations, (a, b))
