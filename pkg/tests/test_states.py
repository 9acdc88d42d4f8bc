import math

import numpy as np
import pytest

from ppt_moments.errors import NotNormalized, NotPositive, RangeError, TooManyQubits, WrongArity
from ppt_moments.linalg import hermitian_eigenvalues
from ppt_moments.pauli import build_pt_sigma_set, build_sigma_set, standard_triads
from ppt_moments.pt import Bipartition, all_bipartitions, partial_transpose
from ppt_moments.states import (
    DensityOperator,
    SchmidtParams,
    StateSpecError,
    TwoQubitData,
    extract_two_qubit_data,
    ghz_like,
    random_density,
    random_separable,
    schmidt_three_qubit,
    state_from_spec,
    two_qubit_from_data,
    werner_n_qubit,
    werner_two_qubit,
)

SINGLET = np.array([0, 1, -1, 0]) / math.sqrt(2)


def test_maximally_mixed_from_data():
    rho = two_qubit_from_data(TwoQubitData(np.zeros(3), np.zeros(3), np.zeros((3, 3))))
    assert np.allclose(rho.matrix, np.eye(4) / 4)


def test_werner_from_data():
    x = 0.37
    rho = two_qubit_from_data(TwoQubitData(np.zeros(3), np.zeros(3), np.diag([-x, -x, -x])))
    assert np.allclose(rho.matrix, werner_two_qubit(x).matrix, atol=1e-15)


def test_ket00_from_data():
    z = np.array([0, 0, 1.0])
    rho = two_qubit_from_data(TwoQubitData(z, z, np.diag([0, 0, 1.0])))
    expected = np.zeros((4, 4))
    expected[0, 0] = 1
    assert np.allclose(rho.matrix, expected, atol=1e-15)


def test_unphysical_data_rejected():
    with pytest.raises(NotPositive):
        two_qubit_from_data(TwoQubitData(np.zeros(3), np.zeros(3), np.eye(3)))


def test_extract_werner_and_singlet():
    d = extract_two_qubit_data(werner_two_qubit(0.6))
    assert np.allclose(d.T, np.diag([-0.6] * 3), atol=1e-15)
    assert np.allclose(d.s1, 0) and np.allclose(d.s2, 0)
    singlet = DensityOperator(np.outer(SINGLET, SINGLET), 2)
    assert np.allclose(extract_two_qubit_data(singlet).T, -np.eye(3), atol=1e-15)


def test_extract_product_state(rng):
    a = random_density(1, rng)
    b = random_density(1, rng)
    d = extract_two_qubit_data(DensityOperator(np.kron(a.matrix, b.matrix), 2))
    assert np.allclose(d.T, np.outer(d.s1, d.s2), atol=1e-14)


def test_extract_wrong_arity():
    with pytest.raises(WrongArity):
        extract_two_qubit_data(werner_n_qubit(3, 0.1))


def test_round_trip(rng):
    for _ in range(100):
        rho = random_density(2, rng)
        d = extract_two_qubit_data(rho)
        back = extract_two_qubit_data(two_qubit_from_data(d))
        assert np.max(np.abs(back.T - d.T)) < 1e-12
        assert np.max(np.abs(back.s1 - d.s1)) < 1e-12
        assert np.max(np.abs(back.s2 - d.s2)) < 1e-12
        assert np.max(np.abs(two_qubit_from_data(d).matrix - rho.matrix)) < 1e-12


def test_werner_two_qubit_endpoints():
    assert np.allclose(werner_two_qubit(0).matrix, np.eye(4) / 4)
    assert np.allclose(werner_two_qubit(1).matrix, np.outer(SINGLET, SINGLET))
    with pytest.raises(RangeError):
        werner_two_qubit(1.2)


def test_werner_two_qubit_boundary_pt_eigenvalue():
    rho = werner_two_qubit(1 / 3)
    lo = hermitian_eigenvalues(partial_transpose(rho.matrix, Bipartition.first(2))).min
    assert abs(lo) < 1e-15


def test_werner_n_matches_definition():
    x = 0.3
    ghz = np.array([1, 0, 0, 1]) / math.sqrt(2)
    expected = x * np.outer(ghz, ghz) + (1 - x) / 4 * np.eye(4)
    assert np.allclose(werner_n_qubit(2, x).matrix, expected)


def test_werner_families_share_spectrum():
    for x in np.linspace(0, 1, 11):
        a = hermitian_eigenvalues(werner_n_qubit(2, x).matrix).values
        b = hermitian_eigenvalues(werner_two_qubit(x).matrix).values
        assert np.allclose(a, b, atol=1e-14)


@pytest.mark.parametrize("x", [0.0, 0.15, 0.5, 1.0])
def test_werner_n_sigma_expectations(x):
    rho = werner_n_qubit(3, x)
    ps = build_pt_sigma_set(build_sigma_set(standard_triads(3)), 1)
    assert abs(rho.expect(ps.sigma1_pt) - (-x)) < 1e-12
    assert abs(rho.expect(ps.sigma2_pt)) < 1e-12
    assert abs(rho.expect(ps.sigma3_pt)) < 1e-12
    assert abs(rho.expect(ps.sigma0_pt) - (1 - x) / 4) < 1e-12


def test_werner_n_limits():
    with pytest.raises(TooManyQubits):
        werner_n_qubit(9, 0.1)
    with pytest.raises(RangeError):
        werner_n_qubit(3, -0.1)


def test_ghz_like_standard_ghz():
    rho = ghz_like(3, 0.5)
    ghz = np.zeros(8)
    ghz[0] = ghz[7] = 1 / math.sqrt(2)
    assert np.allclose(rho.matrix, np.outer(ghz, ghz))
    assert abs(rho.purity() - 1) < 1e-12


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("p,phi", [(0.2, 0.0), (0.5, 1.0), (0.9, 4.0)])
def test_ghz_like_sigma1(n, p, phi):
    rho = ghz_like(n, p, phi)
    s = build_sigma_set(standard_triads(n))
    assert abs(rho.expect(s.sigma1) - 2 * math.sqrt(p * (1 - p)) * math.cos(phi)) < 1e-12
    assert abs(rho.expect(s.sigma2) - 2 * math.sqrt(p * (1 - p)) * math.sin(phi)) < 1e-12


def test_ghz_like_p0_is_product():
    rho = ghz_like(3, 0.0)
    assert rho.matrix[7, 7] == 1
    with pytest.raises(RangeError):
        ghz_like(3, 0.5, 7.0)


def test_schmidt_ghz():
    r = 1 / math.sqrt(2)
    assert np.allclose(schmidt_three_qubit(SchmidtParams((r, 0, 0, 0, r))).matrix, ghz_like(3, 0.5).matrix)


def test_schmidt_expectations():
    par = SchmidtParams.normalized([0.4, 0.3, 0.5, 0.2, 0.6], 2.0)
    rho = schmidt_three_qubit(par)
    lam = par.lambdas
    s = build_sigma_set(standard_triads(3))
    ps = build_pt_sigma_set(s, 1)
    # <Sigma_1> = 2 Re(conj(psi_000) psi_111)
    assert abs(rho.expect(s.sigma1) - 2 * lam[0] * lam[4]) < 1e-12
    assert abs(rho.expect(s.sigma2)) < 1e-12
    assert abs(rho.expect(ps.sigma3_pt) - lam[1] ** 2) < 1e-12
    assert abs(rho.expect(ps.sigma0_pt) - lam[1] ** 2) < 1e-12


def test_schmidt_product_case():
    par = SchmidtParams.normalized([0.6, 0.8, 0, 0, 0], 0.5)
    rho = schmidt_three_qubit(par)
    first = np.array([0.6, 0.8 * np.exp(0.5j)])
    expected = np.kron(np.outer(first, first.conj()), np.diag([1, 0, 0, 0]))
    assert np.allclose(rho.matrix, expected)


def test_schmidt_validation():
    with pytest.raises(NotNormalized):
        SchmidtParams((0.5, 0.5, 0, 0, 0))
    with pytest.raises(RangeError):
        SchmidtParams((1, 0, 0, 0, 0), phi=4.0)


def test_random_separable_single_term_is_pure_product():
    rho = random_separable(3, 1, seed=4)
    assert abs(rho.purity() - 1) < 1e-12
    psi = np.linalg.eigh(rho.matrix)[1][:, -1].reshape(2, 4)
    assert np.linalg.matrix_rank(psi, tol=1e-10) == 1


def test_random_separable_deterministic_and_ppt():
    a = random_separable(3, 4, seed=11)
    b = random_separable(3, 4, seed=11)
    assert np.array_equal(a.matrix, b.matrix)
    assert abs(np.trace(a.matrix) - 1) < 1e-14
    for seed in range(20):
        rho = random_separable(3, 5, seed=seed)
        for cut in all_bipartitions(3):
            assert hermitian_eigenvalues(partial_transpose(rho.matrix, cut)).min >= -1e-10


def test_random_separable_weights_sum_to_one():
    rng = np.random.default_rng(5)
    w = rng.dirichlet(np.ones(7))
    assert abs(w.sum() - 1) < 1e-14


def test_state_spec_families():
    assert np.allclose(state_from_spec({"family": "werner2", "x": 0.2}).matrix, werner_two_qubit(0.2).matrix)
    assert state_from_spec({"family": "werner_n", "n": 4, "x": 0.1}).n_qubits == 4
    assert state_from_spec({"family": "ghz", "n": 3, "p": 0.3}).n_qubits == 3
    rho = state_from_spec({"family": "schmidt3", "lambda0": 1, "lambda4": 1, "normalize": True})
    assert np.allclose(rho.matrix, ghz_like(3, 0.5).matrix)
    raw = [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]
    assert np.allclose(state_from_spec({"family": "raw", "matrix": raw}).matrix, np.eye(2) / 2)
    rho = state_from_spec({"family": "two_qubit_data", "T": np.diag([-0.5] * 3).tolist()})
    assert np.allclose(rho.matrix, werner_two_qubit(0.5).matrix)


@pytest.mark.parametrize(
    "spec,field",
    [
        ({"family": "nope"}, "family"),
        ({"family": "werner2"}, "x"),
        ({"family": "werner2", "x": "a"}, "x"),
        ({"family": "werner_n", "n": 2.5, "x": 0.1}, "n"),
        ({"family": "raw", "matrix": [[1, 2]]}, "matrix"),
        ({"family": "two_qubit_data", "s1": [1, 2]}, "s1"),
        ({"family": "werner2", "x": 2.0}, "werner2"),
    ],
)
def test_state_spec_errors_name_field(spec, field):
    with pytest.raises(StateSpecError) as info:
        state_from_spec(spec)
    assert info.value.field == field
