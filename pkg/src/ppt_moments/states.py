"""State families as validated density operators, plus two-qubit Bloch data."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    NotNormalized,
    NotPositive,
    RangeError,
    TooManyQubits,
    WrongArity,
)
from .linalg import DEFAULT_TOL, hermiticity_error, hermitian_eigenvalues, kron_all
from .pauli import I2, MAX_QUBITS, PAULIS

STATE_TOL = DEFAULT_TOL


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Hermitian, unit-trace, PSD matrix on ``n_qubits`` qubits.

    Construction validates all three properties to ``tol`` and raises
    :class:`NotPositive` (or :class:`NotNormalized`) otherwise.
    """

    matrix: np.ndarray = field(repr=False)
    n_qubits: int
    tol: float = STATE_TOL

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] != 2**self.n_qubits:
            raise DimensionMismatch(f"matrix shape {m.shape} does not match {self.n_qubits} qubits")
        herr = hermiticity_error(m)
        if herr > self.tol:
            raise NotPositive(f"density matrix is not Hermitian (deviation {herr:.3e})")
        tr = np.trace(m)
        if abs(tr - 1.0) > self.tol:
            raise NotNormalized(f"trace is {tr.real:.12g}, expected 1")
        lo = hermitian_eigenvalues(m, self.tol).min
        if lo < -self.tol:
            raise NotPositive(f"minimum eigenvalue {lo:.3e} is negative")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_matrix(cls, m) -> "DensityOperator":
        m = np.asarray(m)
        dim = m.shape[0] if m.ndim == 2 else 0
        n = max(dim, 1).bit_length() - 1
        if dim < 2 or 2**n != dim:
            raise DimensionMismatch(f"dimension {dim} is not a power of two >= 2")
        return cls(m, n)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def expect(self, op) -> complex:
        """``Tr[rho op]``."""
        return complex(np.einsum("ij,ji->", self.matrix, op))

    def purity(self) -> float:
        return float(np.real(np.einsum("ij,ji->", self.matrix, self.matrix)))


def pure_state(psi, n_qubits: int | None = None) -> DensityOperator:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-12:
        raise NotNormalized(f"state vector has norm {norm!r}")
    n = n_qubits if n_qubits is not None else len(psi).bit_length() - 1
    return DensityOperator(np.outer(psi, psi.conj()), n)


def _check_n(n: int, lo: int = 2):
    if n > MAX_QUBITS:
        raise TooManyQubits(f"{n} qubits requested, at most {MAX_QUBITS} supported")
    if n < lo:
        raise RangeError(f"need at least {lo} qubits, got {n}")


def _check_unit_interval(name: str, x: float):
    if not 0.0 <= x <= 1.0:
        raise RangeError(f"{name} = {x!r} outside [0, 1]")


# -- two-qubit parametrization -------------------------------------------------


@dataclass(frozen=True, eq=False)
class TwoQubitData:
    """Bloch vectors of both qubits and the 3x3 correlation matrix."""

    s1: np.ndarray
    s2: np.ndarray
    T: np.ndarray

    def __post_init__(self):
        s1 = np.asarray(self.s1, dtype=float).reshape(3)
        s2 = np.asarray(self.s2, dtype=float).reshape(3)
        t = np.asarray(self.T, dtype=float).reshape(3, 3)
        if max(np.linalg.norm(s1), np.linalg.norm(s2)) > 1 + 1e-10 or np.max(np.abs(t)) > 1 + 1e-10:
            raise RangeError("Bloch vectors must have norm <= 1 and correlations |t_ij| <= 1")
        object.__setattr__(self, "s1", s1)
        object.__setattr__(self, "s2", s2)
        object.__setattr__(self, "T", t)


def two_qubit_from_data(d: TwoQubitData) -> DensityOperator:
    m = np.kron(I2, I2).astype(complex)
    for i, sigma in enumerate(PAULIS):
        m = m + d.s1[i] * np.kron(sigma, I2) + d.s2[i] * np.kron(I2, sigma)
        for j, tau in enumerate(PAULIS):
            m = m + d.T[i, j] * np.kron(sigma, tau)
    return DensityOperator(m / 4.0, 2)


def extract_two_qubit_data(rho: DensityOperator) -> TwoQubitData:
    if rho.n_qubits != 2:
        raise WrongArity(f"two-qubit data needs N = 2, got N = {rho.n_qubits}")
    s1 = np.array([rho.expect(np.kron(s, I2)).real for s in PAULIS])
    s2 = np.array([rho.expect(np.kron(I2, s)).real for s in PAULIS])
    t = np.array([[rho.expect(np.kron(a, b)).real for b in PAULIS] for a in PAULIS])
    return TwoQubitData(s1, s2, t)


# -- families ------------------------------------------------------------------

SINGLET = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def werner_two_qubit(x: float) -> DensityOperator:
    """Singlet mixed with white noise: ``(1-x)/4 I + x |Psi-><Psi-|``."""
    _check_unit_interval("x", x)
    return DensityOperator((1 - x) / 4 * np.eye(4) + x * np.outer(SINGLET, SINGLET), 2)


def ghz_vector(n: int) -> np.ndarray:
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = psi[-1] = 1 / np.sqrt(2)
    return psi


def werner_n_qubit(n: int, x: float) -> DensityOperator:
    """GHZ mixed with white noise: ``x |GHZ><GHZ| + (1-x)/2^n I``."""
    _check_n(n)
    _check_unit_interval("x", x)
    psi = ghz_vector(n)
    dim = 2**n
    return DensityOperator(x * np.outer(psi, psi.conj()) + (1 - x) / dim * np.eye(dim), n)


def ghz_like(n: int, p: float, phi: float = 0.0) -> DensityOperator:
    """Pure ``sqrt(p)|0..0> + e^{i phi} sqrt(1-p)|1..1>``."""
    _check_n(n)
    _check_unit_interval("p", p)
    if not 0.0 <= phi <= 2 * math.pi:
        raise RangeError(f"phi = {phi!r} outside [0, 2 pi]")
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = math.sqrt(p)
    psi[-1] = np.exp(1j * phi) * math.sqrt(1 - p)
    return pure_state(psi, n)


@dataclass(frozen=True)
class SchmidtParams:
    """Five non-negative amplitudes and one phase of the canonical 3-qubit form."""

    lambdas: tuple
    phi: float = 0.0

    def __post_init__(self):
        lam = tuple(float(v) for v in self.lambdas)
        object.__setattr__(self, "lambdas", lam)
        if len(lam) != 5:
            raise RangeError(f"need five amplitudes, got {len(lam)}")
        if min(lam) < 0:
            raise RangeError(f"amplitudes must be non-negative: {lam}")
        if not 0.0 <= self.phi <= math.pi:
            raise RangeError(f"phi = {self.phi!r} outside [0, pi]")
        norm2 = sum(v * v for v in lam)
        if abs(norm2 - 1.0) > 1e-12:
            raise NotNormalized(f"sum of squared amplitudes is {norm2!r}")

    @classmethod
    def normalized(cls, lambdas, phi: float = 0.0) -> "SchmidtParams":
        lam = np.asarray(lambdas, dtype=float)
        norm = np.linalg.norm(lam)
        if norm == 0:
            raise NotNormalized("all amplitudes are zero")
        return cls(tuple(lam / norm), phi)

    @classmethod
    def random(cls, rng, zero_prob: float = 0.0) -> "SchmidtParams":
        """Uniform direction on the positive orthant of S^4 with optional sparsity."""
        while True:
            lam = np.abs(rng.normal(size=5))
            if zero_prob:
                lam[rng.random(5) < zero_prob] = 0.0
            if lam.any():
                return cls.normalized(lam, float(rng.uniform(0.0, math.pi)))


# basis indices |q1 q2 q3> -> 4 q1 + 2 q2 + q3
_SCHMIDT_INDEX = (0b000, 0b100, 0b101, 0b110, 0b111)


def schmidt_vector(par: SchmidtParams) -> np.ndarray:
    psi = np.zeros(8, dtype=complex)
    for idx, lam in zip(_SCHMIDT_INDEX, par.lambdas):
        psi[idx] = lam
    psi[0b100] *= np.exp(1j * par.phi)
    return psi


def schmidt_three_qubit(par: SchmidtParams) -> DensityOperator:
    return pure_state(schmidt_vector(par), 3)


def haar_qubit(rng) -> np.ndarray:
    """Haar-uniform single-qubit pure state from a normalized complex Gaussian pair."""
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)


def random_separable(n: int, terms: int, seed=0) -> DensityOperator:
    """Convex mixture of ``terms`` random pure product states.

    ``seed`` is an int or a ``numpy.random.Generator``.  All product vectors
    are drawn first (qubit 1 to N within a term), then one flat Dirichlet
    weight vector, so a given seed reproduces bit-identically.
    """
    _check_n(n, lo=1)
    if terms < 1:
        raise RangeError("terms must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    dim = 2**n
    rho = np.zeros((dim, dim), dtype=complex)
    vecs = [kron_all(haar_qubit(rng)[:, None] for _ in range(n)).reshape(-1) for _ in range(terms)]
    weights = rng.dirichlet(np.ones(terms)) if terms > 1 else np.ones(1)
    for w, v in zip(weights, vecs):
        rho += w * np.outer(v, v.conj())
    return DensityOperator(rho, n)


def random_density(n: int, rng, rank: int | None = None) -> DensityOperator:
    """Random mixed state ``G G^H / Tr`` from a complex Ginibre matrix."""
    dim = 2**n
    k = rank or dim
    g = rng.normal(size=(dim, k)) + 1j * rng.normal(size=(dim, k))
    m = g @ g.conj().T
    return DensityOperator(m / np.trace(m).real, n)


def maximally_mixed(n: int) -> DensityOperator:
    return DensityOperator(np.eye(2**n) / 2**n, n)


# -- JSON state specs ----------------------------------------------------------


class StateSpecError(ValueError):
    """Malformed state description; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        super().__init__(f"state field {field!r}: {message}")
        self.field = field


def _num(spec: dict, key: str, default=None, kind=float):
    if key not in spec:
        if default is None:
            raise StateSpecError(key, "missing")
        return default
    value = spec[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise StateSpecError(key, f"expected a number, got {value!r}")
    if kind is int:
        if int(value) != value:
            raise StateSpecError(key, f"expected an integer, got {value!r}")
        return int(value)
    return float(value)


def _vector(spec: dict, key: str, length: int):
    value = spec.get(key, [0.0] * length)
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise StateSpecError(key, f"expected {length} numbers") from None
    if arr.shape != (length,):
        raise StateSpecError(key, f"expected {length} numbers, got shape {arr.shape}")
    return arr


def _raw_matrix(spec: dict) -> np.ndarray:
    rows = spec.get("matrix")
    if not isinstance(rows, list) or not rows:
        raise StateSpecError("matrix", "expected a non-empty list of rows")
    try:
        arr = np.asarray(rows, dtype=float)
    except (TypeError, ValueError):
        raise StateSpecError("matrix", "rows must hold [re, im] pairs") from None
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise StateSpecError("matrix", f"expected shape (d, d, 2), got {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


SCHMIDT_KEYS = ("lambda0", "lambda1", "lambda2", "lambda3", "lambda4")

# numeric keys a sweep may override, per family
SWEEPABLE = {
    "werner2": ("x",),
    "werner_n": ("x",),
    "ghz": ("p", "phi"),
    "schmidt3": SCHMIDT_KEYS + ("phi",),
    "two_qubit_data": (),
    "raw": (),
    "random_separable": ("seed",),
}


def state_from_spec(spec: dict) -> DensityOperator:
    """Build a state from its JSON description.

    Families: ``werner2`` (x), ``werner_n`` (n, x), ``ghz`` (n, p, phi),
    ``schmidt3`` (lambda0..lambda4, phi, normalize), ``two_qubit_data``
    (s1, s2, T), ``raw`` (matrix of [re, im] pairs, row major) and
    ``random_separable`` (n, terms, seed).  Validation failures of the
    parameters themselves raise :class:`StateSpecError` naming the key.
    """
    if not isinstance(spec, dict):
        raise StateSpecError("family", "state spec must be a JSON object")
    family = spec.get("family")
    if family not in SWEEPABLE:
        raise StateSpecError("family", f"unknown family {family!r}; expected one of {sorted(SWEEPABLE)}")
    try:
        if family == "werner2":
            return werner_two_qubit(_num(spec, "x"))
        if family == "werner_n":
            return werner_n_qubit(_num(spec, "n", kind=int), _num(spec, "x"))
        if family == "ghz":
            return ghz_like(_num(spec, "n", kind=int), _num(spec, "p"), _num(spec, "phi", 0.0))
        if family == "schmidt3":
            lam = [_num(spec, key, 0.0) for key in SCHMIDT_KEYS]
            phi = _num(spec, "phi", 0.0)
            if spec.get("normalize", False):
                return schmidt_three_qubit(SchmidtParams.normalized(lam, phi))
            return schmidt_three_qubit(SchmidtParams(tuple(lam), phi))
        if family == "two_qubit_data":
            t = spec.get("T", [[0.0] * 3] * 3)
            try:
                t = np.asarray(t, dtype=float).reshape(3, 3)
            except (TypeError, ValueError):
                raise StateSpecError("T", "expected a 3x3 array of numbers") from None
            data = TwoQubitData(_vector(spec, "s1", 3), _vector(spec, "s2", 3), t)
            return two_qubit_from_data(data)
        if family == "raw":
            return DensityOperator.from_matrix(_raw_matrix(spec))
        return random_separable(
            _num(spec, "n", kind=int), _num(spec, "terms", 1.0, kind=int), _num(spec, "seed", 0.0, kind=int)
        )
    except StateSpecError:
        raise
    except (RangeError, NotNormalized, NotPositive, DimensionMismatch, TooManyQubits) as exc:
        raise StateSpecError(family, str(exc)) from exc
