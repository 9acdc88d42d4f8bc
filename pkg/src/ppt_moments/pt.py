"""Partial transposition of multiqubit matrices and observables.

Two maps are provided.  :func:`partial_transpose` swaps row and column
indices of the transposed qubits (the literal matrix operation).
:func:`partial_time_reversal` additionally conjugates each transposed factor
by sigma_y, which sends every Pauli vector ``sigma -> -sigma``.  The two
differ by a local unitary, so they share spectra and every PSD verdict.
The moment constructions use the sign-flip map because their closed forms
are written in that convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import BadBipartition, DimensionMismatch
from .linalg import as_square, kron_all
from .pauli import I2, SY

CONVENTIONS = ("transpose", "flip")


@dataclass(frozen=True)
class Bipartition:
    """Qubits (1-based) that get transposed; the rest form the other party."""

    n_qubits: int
    transposed: tuple

    def __post_init__(self):
        qubits = tuple(sorted(set(int(q) for q in self.transposed)))
        object.__setattr__(self, "transposed", qubits)
        if self.n_qubits < 2:
            raise BadBipartition("a bipartition needs at least two qubits")
        if not qubits or len(qubits) >= self.n_qubits:
            raise BadBipartition(f"transposed set {qubits} must be a nonempty proper subset")
        if qubits[0] < 1 or qubits[-1] > self.n_qubits:
            raise BadBipartition(f"qubit indices {qubits} out of range 1..{self.n_qubits}")

    @classmethod
    def first(cls, n_qubits: int, r: int = 1) -> "Bipartition":
        return cls(n_qubits, tuple(range(1, r + 1)))

    def complement(self) -> "Bipartition":
        rest = tuple(q for q in range(1, self.n_qubits + 1) if q not in self.transposed)
        return Bipartition(self.n_qubits, rest)

    def normalized(self) -> "Bipartition":
        """The smaller side; for equal halves, the side holding qubit 1."""
        comp = self.complement()
        size, csize = len(self.transposed), len(comp.transposed)
        if csize < size or (csize == size and comp.transposed[0] < self.transposed[0]):
            return comp
        return self

    def label(self) -> str:
        return ",".join(str(q) for q in self.transposed)

    def to_dict(self) -> dict:
        return {"n_qubits": self.n_qubits, "transposed": list(self.transposed)}


def all_bipartitions(n_qubits: int, up_to_complement: bool = False) -> list:
    """Every nonempty proper subset, optionally one representative per cut."""
    cuts = []
    for size in range(1, n_qubits):
        for combo in combinations(range(1, n_qubits + 1), size):
            b = Bipartition(n_qubits, combo)
            if up_to_complement and b.normalized() != b:
                continue
            cuts.append(b)
    return cuts


def n_qubits_of(m) -> int:
    dim = as_square(m).shape[0]
    n = dim.bit_length() - 1
    if dim < 1 or 2**n != dim:
        raise DimensionMismatch(f"dimension {dim} is not a power of two")
    return n


def _check(m, b: Bipartition) -> np.ndarray:
    m = as_square(m)
    if m.shape[0] != 2**b.n_qubits:
        raise DimensionMismatch(f"matrix of dim {m.shape[0]} does not act on {b.n_qubits} qubits")
    return m


def partial_transpose(m, b: Bipartition) -> np.ndarray:
    """Transpose the tensor factors listed in ``b.transposed``.

    Pure index permutation, so it is exactly involutive and trace preserving.
    """
    m = _check(m, b)
    n = b.n_qubits
    t = m.reshape((2,) * (2 * n))
    axes = list(range(2 * n))
    for q in b.transposed:
        i = q - 1
        axes[i], axes[n + i] = axes[n + i], axes[i]
    return t.transpose(axes).reshape(m.shape).copy()


def _sigma_y_string(b: Bipartition) -> np.ndarray:
    return kron_all(SY if q in b.transposed else I2 for q in range(1, b.n_qubits + 1))


def partial_time_reversal(m, b: Bipartition) -> np.ndarray:
    """Sign-flip PT: ``Y_S m^{T_S} Y_S`` with ``Y_S`` = sigma_y on each transposed qubit."""
    y = _sigma_y_string(b)
    return y @ partial_transpose(m, b) @ y


def state_pt(rho, b: Bipartition, convention: str = "transpose") -> np.ndarray:
    rho = getattr(rho, "matrix", rho)
    if convention == "transpose":
        return partial_transpose(rho, b)
    if convention == "flip":
        return partial_time_reversal(rho, b)
    raise ValueError(f"convention must be one of {CONVENTIONS}")


def observable_pt(o, b: Bipartition, convention: str = "transpose") -> np.ndarray:
    """Dual of :func:`state_pt`: ``Tr[rho^PT o] == Tr[rho o^PT]``.

    Both maps are self-dual under the trace pairing, so the observable image
    is the same map applied to ``o``.
    """
    return state_pt(o, b, convention)
