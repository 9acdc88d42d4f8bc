"""Moment-matrix separability bounds from positivity under partial transpose."""

from .detectors import (
    Certificate,
    diagonalize_T,
    horodecki,
    peres_oracle,
    run_detector,
    sigma_bound,
    tangle3,
    threshold_bisect,
)
from .pauli import OrthonormalTriad, build_pt_sigma_set, build_sigma_set
from .pt import Bipartition, observable_pt, partial_time_reversal, partial_transpose
from .states import (
    DensityOperator,
    SchmidtParams,
    ghz_like,
    schmidt_three_qubit,
    werner_n_qubit,
    werner_two_qubit,
)

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "Certificate",
    "DensityOperator",
    "OrthonormalTriad",
    "SchmidtParams",
    "build_pt_sigma_set",
    "build_sigma_set",
    "diagonalize_T",
    "ghz_like",
    "horodecki",
    "observable_pt",
    "partial_time_reversal",
    "partial_transpose",
    "peres_oracle",
    "run_detector",
    "schmidt_three_qubit",
    "sigma_bound",
    "tangle3",
    "threshold_bisect",
    "werner_n_qubit",
    "werner_two_qubit",
]
