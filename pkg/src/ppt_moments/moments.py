"""Moment matrices ``M = Tr[rho xi xi^H]`` and their partially transposed forms.

Partial transposes inside this module use the sign-flip convention
(``sigma -> -sigma`` on transposed qubits), see :mod:`ppt_moments.pt`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadShape, DimensionMismatch, NotHermitian, WrongArity
from .linalg import as_square, hermiticity_error
from .pauli import I2, PAULIS, OrthonormalTriad, PtSigmaSet, SigmaSet, sigma_dot
from .pt import Bipartition, state_pt
from .states import DensityOperator, extract_two_qubit_data

SR_TOL = 1e-12


def _matrix(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityOperator) else as_square(rho, "rho")


def _expect(m: np.ndarray, op: np.ndarray) -> complex:
    return complex(np.einsum("ij,ji->", m, op))


@dataclass(frozen=True, eq=False)
class OperatorColumn:
    """Operators ``(A_0 = I, A_1, ..., A_n)`` of a common dimension."""

    ops: tuple

    def __post_init__(self):
        ops = tuple(np.asarray(o, dtype=complex) for o in self.ops)
        if not ops:
            raise DimensionMismatch("operator column is empty")
        dim = ops[0].shape[0]
        for o in ops:
            if o.shape != (dim, dim):
                raise DimensionMismatch(f"operator of shape {o.shape} in a column of dim {dim}")
        if not np.array_equal(ops[0], np.eye(dim)):
            raise ValueError("first operator of a moment column must be the identity")
        object.__setattr__(self, "ops", ops)

    @classmethod
    def with_identity(cls, ops) -> "OperatorColumn":
        ops = [np.asarray(o, dtype=complex) for o in ops]
        dim = ops[0].shape[0] if ops else 1
        return cls((np.eye(dim, dtype=complex), *ops))

    @property
    def dim(self) -> int:
        return self.ops[0].shape[0]

    def __len__(self) -> int:
        return len(self.ops)


@dataclass(frozen=True, eq=False)
class MomentMatrix:
    entries: np.ndarray

    @property
    def hermitian_part(self) -> np.ndarray:
        """``(M + conj(M)) / 2``: the real symmetric part."""
        return np.real(self.entries + self.entries.conj()) / 2


def moment_matrix(rho, xi: OperatorColumn) -> MomentMatrix:
    """``M[a, b] = Tr[rho A_a A_b^H]``.

    ``rho`` may be a :class:`DensityOperator` or any square array, which
    lets the same routine evaluate moments in a partially transposed state.
    """
    m = _matrix(rho)
    if m.shape[0] != xi.dim:
        raise DimensionMismatch(f"state of dim {m.shape[0]} vs operators of dim {xi.dim}")
    n = len(xi)
    out = np.empty((n, n), dtype=complex)
    for a, op_a in enumerate(xi.ops):
        left = m @ op_a
        for b, op_b in enumerate(xi.ops):
            out[a, b] = np.einsum("ij,ij->", left, op_b.conj())
    return MomentMatrix(out)


# -- uncertainty relations -----------------------------------------------------


@dataclass(frozen=True)
class UncertaintyCheck:
    lhs: float
    rhs: float
    holds: bool
    var1: float
    var2: float
    block: np.ndarray


def _sr_from_state(m: np.ndarray, a1: np.ndarray, a2: np.ndarray, tol: float) -> UncertaintyCheck:
    for name, a in (("A1", a1), ("A2", a2)):
        if hermiticity_error(a) > tol:
            raise NotHermitian(f"{name} is not Hermitian")
    mean1 = _expect(m, a1).real
    mean2 = _expect(m, a2).real
    var1 = _expect(m, a1 @ a1).real - mean1**2
    var2 = _expect(m, a2 @ a2).real - mean2**2
    commutator = _expect(m, a1 @ a2 - a2 @ a1)
    anticommutator = _expect(m, a1 @ a2 + a2 @ a1).real - 2 * mean1 * mean2
    lhs = var1 * var2
    rhs = 0.25 * abs(commutator) ** 2 + 0.25 * anticommutator**2
    holds = lhs >= rhs - tol and var1 >= -tol and var2 >= -tol
    block = moment_matrix(m, OperatorColumn.with_identity([a1, a2])).entries
    return UncertaintyCheck(lhs, rhs, bool(holds), var1, var2, block)


def sr_check(rho, a1, a2, tol: float = SR_TOL) -> UncertaintyCheck:
    """Schrodinger-Robertson relation for ``a1``, ``a2`` in ``rho``.

    ``lhs`` is the product of variances, ``rhs`` the commutator plus
    covariance term.  ``holds`` also requires both variances to be
    non-negative, i.e. the full 3x3 moment block to be PSD.
    """
    return _sr_from_state(_matrix(rho), np.asarray(a1), np.asarray(a2), tol)


def srpt_check(rho, a1, a2, b: Bipartition, tol: float = SR_TOL) -> UncertaintyCheck:
    """The same relation with every moment replaced by its PT image.

    ``Tr[rho X^PT] = Tr[rho^PT X]``, so this is :func:`sr_check` in the
    partially transposed (possibly non-physical) state.
    """
    return _sr_from_state(state_pt(_matrix(rho), b, "flip"), np.asarray(a1), np.asarray(a2), tol)


# -- two-qubit matrices --------------------------------------------------------


def _require_two_qubits(rho):
    if not isinstance(rho, DensityOperator) or rho.n_qubits != 2:
        n = getattr(rho, "n_qubits", None)
        raise WrongArity(f"operation needs a two-qubit DensityOperator, got N = {n}")


def _pt_signs(transposed) -> tuple:
    transposed = (transposed,) if isinstance(transposed, int) else tuple(transposed)
    if not transposed or any(q not in (1, 2) for q in transposed) or len(set(transposed)) != 1:
        raise WrongArity(f"two-qubit PT must transpose exactly one of qubits 1, 2; got {transposed}")
    q = transposed[0]
    return (-1.0 if q == 1 else 1.0), (-1.0 if q == 2 else 1.0)


def m1_column() -> OperatorColumn:
    ops = [np.kron(s, I2) for s in PAULIS] + [np.kron(I2, s) for s in PAULIS]
    return OperatorColumn.with_identity(ops)


def _m1_block(s1, s2, t) -> np.ndarray:
    m = np.eye(7)
    m[0, 1:4] = m[1:4, 0] = s1
    m[0, 4:7] = m[4:7, 0] = s2
    m[1:4, 4:7] = t
    m[4:7, 1:4] = t.T
    return m


def m1_pair(rho: DensityOperator, transposed=1):
    """Real symmetric ``M_1`` and its PT counterpart, built from ``(s1, s2, T)``.

    PT on qubit ``q`` flips the sign of that qubit's Bloch vector and of ``T``.
    """
    _require_two_qubits(rho)
    sign1, sign2 = _pt_signs(transposed)
    d = extract_two_qubit_data(rho)
    m = _m1_block(d.s1, d.s2, d.T)
    m_pt = _m1_block(sign1 * d.s1, sign2 * d.s2, sign1 * sign2 * d.T)
    return m, m_pt


def m1_raw_pair(rho: DensityOperator, transposed=1):
    """Complex Hermitian ``M_1`` before discarding the ``i eps_ijk s_k`` parts."""
    _require_two_qubits(rho)
    b = Bipartition(2, (transposed,) if isinstance(transposed, int) else tuple(transposed))
    xi = m1_column()
    return moment_matrix(rho, xi).entries, moment_matrix(state_pt(rho, b, "flip"), xi).entries


def m1_schur(m) -> np.ndarray:
    """Schur complement ``B - C C^T`` of the leading 1 in a 7x7 ``M_1``."""
    m = np.asarray(m)
    if m.shape != (7, 7) or abs(m[0, 0] - 1.0) > 1e-12:
        raise BadShape(f"expected a 7x7 moment matrix with unit corner, got shape {m.shape}")
    c = m[1:, 0][:, None]
    return m[1:, 1:] - c @ c.conj().T


def m2_column(f1: OrthonormalTriad, f2: OrthonormalTriad) -> OperatorColumn:
    ops = [np.kron(sigma_dot(getattr(f1, a)), sigma_dot(getattr(f2, a))) for a in "klm"]
    return OperatorColumn.with_identity(ops)


def _frame_correlations(t: np.ndarray, f1: OrthonormalTriad, f2: OrthonormalTriad):
    return tuple(float(np.asarray(getattr(f1, a)) @ t @ np.asarray(getattr(f2, a))) for a in "klm")


def _m2_matrix(tk, tl, tm) -> np.ndarray:
    return np.array(
        [
            [1.0, tk, tl, tm],
            [tk, 1.0, -tm, -tl],
            [tl, -tm, 1.0, -tk],
            [tm, -tl, -tk, 1.0],
        ]
    )


def m2_pair(rho: DensityOperator, f1: OrthonormalTriad, f2: OrthonormalTriad):
    """``M_2`` and ``M_2^PT`` from the frame correlations ``t_kk, t_ll, t_mm``.

    PT on either qubit negates all three correlations.
    """
    _require_two_qubits(rho)
    tk, tl, tm = _frame_correlations(extract_two_qubit_data(rho).T, f1, f2)
    return _m2_matrix(tk, tl, tm), _m2_matrix(-tk, -tl, -tm)


def pptb_eigenvalues(tk: float, tl: float, tm: float) -> np.ndarray:
    return np.array(
        [
            1 + tk - tl - tm,
            1 - tk + tl - tm,
            1 - tk - tl + tm,
            1 + tk + tl + tm,
        ]
    )


def m2_pt_eigs(rho: DensityOperator, f1: OrthonormalTriad, f2: OrthonormalTriad) -> np.ndarray:
    """Closed-form eigenvalues of ``M_2^PT`` in the order mu_1..mu_4."""
    _require_two_qubits(rho)
    return pptb_eigenvalues(*_frame_correlations(extract_two_qubit_data(rho).T, f1, f2))


# -- Sigma moment matrix -------------------------------------------------------


def _sigma_display(first: np.ndarray, diag: float) -> np.ndarray:
    a1, a2, a3 = first
    return np.array(
        [
            [1.0, a1, a2, a3],
            [a1, diag, 1j * a3, -1j * a2],
            [a2, -1j * a3, diag, 1j * a1],
            [a3, 1j * a2, -1j * a1, diag],
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class SigmaExpectations:
    """``<Sigma_1..3>``, ``<Sigma_0>`` and their PT images in one state."""

    sigma: tuple
    sigma0: float
    sigma_pt: tuple
    sigma0_pt: float


def sigma_expectations(rho, s: SigmaSet, ps: PtSigmaSet) -> SigmaExpectations:
    m = _matrix(rho)
    if m.shape[0] != s.sigma1.shape[0]:
        raise DimensionMismatch(f"state of dim {m.shape[0]} vs Sigma operators of dim {s.sigma1.shape[0]}")
    return SigmaExpectations(
        sigma=tuple(_expect(m, op).real for op in s.sigmas),
        sigma0=_expect(m, s.sigma0).real,
        sigma_pt=tuple(_expect(m, op).real for op in ps.sigmas_pt),
        sigma0_pt=_expect(m, ps.sigma0_pt).real,
    )


def msigma_pair(rho, s: SigmaSet, ps: PtSigmaSet):
    """The 4x4 moment matrix of ``(I, Sigma_1, Sigma_2, Sigma_3)`` and its PT form.

    Off-diagonal entries follow from ``Sigma_i Sigma_j = i eps_ijk Sigma_k``.
    """
    e = sigma_expectations(rho, s, ps)
    return _sigma_display(np.array(e.sigma), e.sigma0), _sigma_display(np.array(e.sigma_pt), e.sigma0_pt)


def sigma_column(s: SigmaSet) -> OperatorColumn:
    return OperatorColumn.with_identity(s.sigmas)


def msigma_pt_eigs(m_pt) -> np.ndarray:
    """Closed-form spectrum ``(mu_1+, mu_1-, mu_2+, mu_2-)`` of a Sigma PT matrix."""
    m_pt = np.asarray(m_pt)
    if m_pt.shape != (4, 4):
        raise BadShape(f"expected a 4x4 matrix, got {m_pt.shape}")
    c = float(m_pt[1, 1].real)
    norm = math.sqrt(float(np.sum(np.real(m_pt[0, 1:]) ** 2)))
    half = 0.5 * (1 + c)
    root = 0.5 * math.sqrt((1 + c) ** 2 + 4 * (norm**2 - c))
    return np.array([c + norm, c - norm, half + root, half - root])

