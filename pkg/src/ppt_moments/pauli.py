"""Qubit operator families built from Pauli matrices and orthonormal frames.

Qubit 1 is the leftmost tensor factor and the computational basis is the
sigma_z eigenbasis with ``|0>`` at eigenvalue +1, so ``sigma_+ = |0><1|`` for
the standard frame.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import BadBipartition, InvalidTriad, NotUnit, TooManyQubits
from .linalg import kron_all

MAX_QUBITS = 8
FRAME_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)


def _vec3(v, name):
    arr = np.asarray(v, dtype=float).reshape(-1)
    if arr.shape != (3,):
        raise InvalidTriad(f"{name} must be a real 3-vector, got {v!r}")
    return arr


@dataclass(frozen=True)
class OrthonormalTriad:
    """Right-handed orthonormal frame ``(k, l, m)`` attached to one qubit.

    Near-orthonormal input is rejected, never repaired.
    """

    k: tuple
    l: tuple
    m: tuple

    def __post_init__(self):
        vecs = [_vec3(getattr(self, name), name) for name in "klm"]
        for name, v in zip("klm", vecs):
            object.__setattr__(self, name, tuple(float(x) for x in v))
            if abs(np.linalg.norm(v) - 1.0) > FRAME_TOL:
                raise InvalidTriad(f"{name} is not a unit vector (norm {np.linalg.norm(v)!r})")
        k, l, m = vecs
        for a, b, label in ((k, l, "k.l"), (k, m, "k.m"), (l, m, "l.m")):
            if abs(a @ b) > FRAME_TOL:
                raise InvalidTriad(f"frame vectors not orthogonal: {label} = {a @ b!r}")
        if np.max(np.abs(np.cross(k, l) - m)) > FRAME_TOL:
            raise InvalidTriad("frame is not right-handed: k x l != m")

    @classmethod
    def standard(cls) -> "OrthonormalTriad":
        return cls((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))

    @classmethod
    def from_rotation(cls, o) -> "OrthonormalTriad":
        """Frame whose k, l, m are the rows of a rotation matrix."""
        o = np.asarray(o, dtype=float)
        return cls(tuple(o[0]), tuple(o[1]), tuple(o[2]))

    def as_rows(self) -> np.ndarray:
        return np.array([self.k, self.l, self.m])


def standard_triads(n: int) -> tuple:
    return tuple(OrthonormalTriad.standard() for _ in range(n))


def random_triad(rng) -> OrthonormalTriad:
    """Frame from a Haar-random rotation (QR of a Gaussian matrix)."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 2] = -q[:, 2]
    return OrthonormalTriad.from_rotation(q.T)


def sigma_dot(n) -> np.ndarray:
    """``sigma . n`` for a real unit vector ``n``."""
    n = np.asarray(n, dtype=float).reshape(-1)
    if n.shape != (3,):
        raise NotUnit(f"expected a 3-vector, got shape {n.shape}")
    if abs(np.linalg.norm(n) - 1.0) > FRAME_TOL:
        raise NotUnit(f"|n| = {np.linalg.norm(n)!r} is not 1")
    return n[0] * SX + n[1] * SY + n[2] * SZ


def _sigma_dot_any(v) -> np.ndarray:
    v = np.asarray(v)
    return v[0] * SX + v[1] * SY + v[2] * SZ


def sigma_pm(triad: OrthonormalTriad, sign: int) -> np.ndarray:
    """Ladder operator ``(1/2) sigma . (k +/- i l)``; ``sign`` is +1 or -1."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    k = np.asarray(triad.k)
    l = np.asarray(triad.l)
    return 0.5 * _sigma_dot_any(k + sign * 1j * l)


def _m_projectors(triad: OrthonormalTriad):
    sm = sigma_dot(triad.m)
    return I2 + sm, I2 - sm


def _check_qubit_count(n: int):
    if n < 1:
        raise ValueError("need at least one qubit")
    if n > MAX_QUBITS:
        raise TooManyQubits(f"{n} qubits requested, at most {MAX_QUBITS} supported")


@dataclass(frozen=True, eq=False)
class SigmaSet:
    """The operators Sigma_1..3 and their common square Sigma_0."""

    triads: tuple
    sigma1: np.ndarray = field(repr=False)
    sigma2: np.ndarray = field(repr=False)
    sigma3: np.ndarray = field(repr=False)
    sigma0: np.ndarray = field(repr=False)

    @property
    def n_qubits(self) -> int:
        return len(self.triads)

    @property
    def sigmas(self) -> tuple:
        return (self.sigma1, self.sigma2, self.sigma3)


@dataclass(frozen=True, eq=False)
class PtSigmaSet:
    """Images of a :class:`SigmaSet` under the sign-flip PT on ``transposed``."""

    base: SigmaSet
    transposed: tuple
    sigma1_pt: np.ndarray = field(repr=False)
    sigma2_pt: np.ndarray = field(repr=False)
    sigma3_pt: np.ndarray = field(repr=False)
    sigma0_pt: np.ndarray = field(repr=False)

    @property
    def r(self) -> int:
        return len(self.transposed)

    @property
    def sigmas_pt(self) -> tuple:
        return (self.sigma1_pt, self.sigma2_pt, self.sigma3_pt)


def build_sigma_set(triads) -> SigmaSet:
    triads = tuple(triads)
    _check_qubit_count(len(triads))
    return _build_sigma_set(triads)


@lru_cache(maxsize=64)
def _build_sigma_set(triads: tuple) -> SigmaSet:
    up = kron_all(sigma_pm(t, +1) for t in triads)
    down = kron_all(sigma_pm(t, -1) for t in triads)
    n = len(triads)
    plus = kron_all(_m_projectors(t)[0] for t in triads)
    minus = kron_all(_m_projectors(t)[1] for t in triads)
    s1 = up + down
    s2 = -1j * (up - down)
    s3 = (plus - minus) / 2**n
    s0 = (plus + minus) / 2**n
    for m in (s1, s2, s3, s0):
        m.setflags(write=False)
    return SigmaSet(triads, s1, s2, s3, s0)


def _normalize_transposed(n: int, r) -> tuple:
    if isinstance(r, (int, np.integer)):
        if not 1 <= r < n:
            raise BadBipartition(f"r = {r} must satisfy 1 <= r < N = {n}")
        return tuple(range(1, r + 1))
    qubits = tuple(sorted(set(int(q) for q in r)))
    if not qubits or len(qubits) >= n or qubits[0] < 1 or qubits[-1] > n:
        raise BadBipartition(f"transposed qubits {qubits} must be a nonempty proper subset of 1..{n}")
    return qubits


def build_pt_sigma_set(s: SigmaSet, r=1) -> PtSigmaSet:
    """PT images of the Sigma operators.

    ``r`` is either the number of leading qubits transposed or an explicit
    collection of 1-based qubit indices.  Sigma_1, Sigma_2 pick up
    ``(-1)**r``; Sigma_3 and Sigma_0 swap the m-projectors on the transposed
    qubits, keeping the untransposed factors as they were.
    """
    transposed = _normalize_transposed(s.n_qubits, r)
    return _build_pt(s, transposed)


def _build_pt(s: SigmaSet, transposed: tuple) -> PtSigmaSet:
    n = s.n_qubits
    sign = (-1) ** len(transposed)
    a_factors, b_factors = [], []
    for q, triad in enumerate(s.triads, start=1):
        plus, minus = _m_projectors(triad)
        if q in transposed:
            a_factors.append(minus)
            b_factors.append(plus)
        else:
            a_factors.append(plus)
            b_factors.append(minus)
    a = kron_all(a_factors)
    b = kron_all(b_factors)
    return PtSigmaSet(
        base=s,
        transposed=transposed,
        sigma1_pt=sign * s.sigma1,
        sigma2_pt=sign * s.sigma2,
        sigma3_pt=(a - b) / 2**n,
        sigma0_pt=(a + b) / 2**n,
    )


LEVI_CIVITA = {(0, 1): (2, 1), (1, 2): (0, 1), (2, 0): (1, 1), (1, 0): (2, -1), (2, 1): (0, -1), (0, 2): (1, -1)}
"""Maps ``(i, j)`` (0-based, i != j) to ``(k, epsilon_ijk)``."""
