"""End-to-end acceptance checks, one test per criterion.

Each test records PASS or FAIL in ``conftest.ACCEPTANCE_RESULTS``; the
terminal summary prints one line per criterion.
"""

import contextlib
import itertools
import json
import math

import numpy as np

from conftest import ACCEPTANCE_RESULTS, random_disordered_state, random_hermitian
from ppt_moments.cli import main
from ppt_moments.detectors import (
    horodecki,
    m1_detector,
    peres_oracle,
    run_detector,
    sigma_bound,
    tangle3,
)
from ppt_moments.errors import NotPositive
from ppt_moments.linalg import hermitian_eigenvalues
from ppt_moments.moments import m2_pair, m2_pt_eigs, m1_pair, m1_schur, msigma_pair, msigma_pt_eigs
from ppt_moments.pauli import LEVI_CIVITA, build_pt_sigma_set, build_sigma_set, random_triad, standard_triads
from ppt_moments.pt import all_bipartitions, observable_pt, state_pt
from ppt_moments.states import (
    SchmidtParams,
    TwoQubitData,
    ghz_like,
    random_density,
    random_separable,
    schmidt_three_qubit,
    two_qubit_from_data,
    werner_n_qubit,
)

TITLES = {
    1: "two-qubit Werner boundary at 1/3 via m2",
    2: "N-qubit Werner thresholds 1/(2^(N-1)+1) for N = 2..6",
    3: "sigma bound violated iff three-tangle > 1e-12 (500 Schmidt states)",
    4: "GHZ-like violation on the open interval, satisfied at p = 0, 1",
    5: "Horodecki verdict equals Peres verdict on the Bell-diagonal grid",
    6: "separable samples satisfy every moment detector",
    7: "operator algebra, PT identities and closed-form spectra",
    8: "M1 blind to entangled states with disordered subsystems",
    9: "Schur complement verdict equals the direct 7x7 verdict",
}


@contextlib.contextmanager
def criterion(number):
    try:
        yield
    except BaseException:
        ACCEPTANCE_RESULTS[number] = ("FAIL", TITLES[number])
        raise
    ACCEPTANCE_RESULTS[number] = ("PASS", TITLES[number])


def cli_json(capsys, *argv):
    code = main(list(argv))
    out, _ = capsys.readouterr()
    return code, json.loads(out)


def test_criterion_1_werner_two_qubit(capsys):
    with criterion(1):
        code, report = cli_json(capsys, "certify", "--state", '{"family": "werner2", "x": 0}',
                                "--detector", "m2", "--bracket", "x:0:1")
        assert code == 0
        assert abs(report["threshold"] - 1 / 3) <= 1e-9
        _, rows = cli_json(capsys, "sweep", "--state", '{"family": "werner2", "x": 0}', "--detector", "m2",
                           "--grid", "x:0:1:0.01", "--format", "json")
        assert len(rows) == 101
        for row in rows:
            assert abs(row["m2@1_min_eigenvalue"] - (1 - 3 * row["x"])) <= 1e-12


def test_criterion_2_werner_n_thresholds(capsys):
    with criterion(2):
        for n in range(2, 7):
            code, report = cli_json(capsys, "certify", "--state", json.dumps({"family": "werner_n", "n": n, "x": 0}),
                                    "--detector", "sigma", "--bracket", "x:0:1")
            assert code == 0
            assert abs(report["threshold"] - 1 / (2 ** (n - 1) + 1)) <= 1e-9, n


def test_criterion_3_tangle_equivalence():
    with criterion(3):
        rng = np.random.default_rng(3)
        disagreements = 0
        zero_tangle = 0
        for _ in range(500):
            par = SchmidtParams.random(rng, zero_prob=0.3)
            tau = tangle3(par)
            zero_tangle += tau <= 1e-12
            violated = not sigma_bound(schmidt_three_qubit(par), standard_triads(3), 1).bound_satisfied
            disagreements += violated != (tau > 1e-12)
        assert disagreements == 0
        # both sides of the equivalence are exercised
        assert 50 < zero_tangle < 450


def test_criterion_4_ghz_violation():
    with criterion(4):
        grid = np.linspace(0, 1, 101)[1:-1]
        for n in (2, 3, 4):
            for phi in (0.0, math.pi / 4, math.pi / 2):
                for p in grid:
                    assert not sigma_bound(ghz_like(n, p, phi)).bound_satisfied, (n, phi, p)
                for p in (0.0, 1.0):
                    assert sigma_bound(ghz_like(n, p, phi)).bound_satisfied, (n, phi, p)


def test_criterion_5_horodecki_vs_peres():
    with criterion(5):
        values = np.linspace(-1, 1, 21)
        checked = entangled = 0
        zero = np.zeros(3)
        for t in itertools.product(values, repeat=3):
            try:
                rho = two_qubit_from_data(TwoQubitData(zero, zero, np.diag(t)))
            except NotPositive:
                continue
            checked += 1
            h = horodecki(rho).bound_satisfied
            p = peres_oracle(rho).bound_satisfied
            assert h == p, t
            entangled += not p
        assert checked > 1000 and entangled > 100


def test_criterion_6_separable_safety():
    with criterion(6):
        rng = np.random.default_rng(6)
        for n in (2, 3):
            names = ("m1", "m2", "sigma", "horodecki", "srpt") if n == 2 else ("sigma", "srpt")
            cuts = all_bipartitions(n)
            for _ in range(1000):
                rho = random_separable(n, int(rng.integers(1, 6)), seed=rng)
                for b in cuts:
                    for name in names:
                        c = run_detector(name, rho, b)
                        assert c.bound_satisfied and c.min_eigenvalue >= -1e-10, (name, b, c.min_eigenvalue)


def test_criterion_7_operator_algebra():
    with criterion(7):
        rng = np.random.default_rng(7)
        for i in range(200):
            n = 1 + i % 4
            s = build_sigma_set(tuple(random_triad(rng) for _ in range(n)))
            ops = s.sigmas
            for a in range(3):
                assert np.max(np.abs(ops[a] @ ops[a] - s.sigma0)) <= 1e-10
            for (a, b), (c, eps) in LEVI_CIVITA.items():
                assert np.max(np.abs(ops[a] @ ops[b] - 1j * eps * ops[c])) <= 1e-10
        for i in range(200):
            n = 2 + i % 3
            cuts = all_bipartitions(n)
            b = cuts[rng.integers(len(cuts))]
            rho = random_density(n, rng)
            o = random_hermitian(rng, 2**n)
            for conv in ("transpose", "flip"):
                lhs = np.trace(state_pt(rho, b, conv) @ o)
                rhs = np.trace(rho.matrix @ observable_pt(o, b, conv))
                assert abs(lhs - rhs) <= 1e-10
                assert np.max(np.abs(state_pt(state_pt(o, b, conv), b, conv) - o)) <= 1e-10
        for _ in range(200):
            rho = random_density(2, rng)
            f1, f2 = random_triad(rng), random_triad(rng)
            _, m_pt = m2_pair(rho, f1, f2)
            numeric = hermitian_eigenvalues(m_pt).values
            assert np.max(np.abs(np.sort(m2_pt_eigs(rho, f1, f2)) - numeric)) <= 1e-10
        s = build_sigma_set(standard_triads(3))
        ps = build_pt_sigma_set(s, 1)
        for i in range(200):
            if i % 2:
                rho = schmidt_three_qubit(SchmidtParams.random(rng))
                _, m_pt = msigma_pair(rho, s, ps)
            else:
                n = 2 + i % 5
                sn = build_sigma_set(standard_triads(n))
                _, m_pt = msigma_pair(werner_n_qubit(n, rng.uniform()), sn, build_pt_sigma_set(sn, 1))
            numeric = hermitian_eigenvalues(m_pt).values
            assert np.max(np.abs(np.sort(msigma_pt_eigs(m_pt)) - numeric)) <= 1e-10


def test_criterion_8_m1_blind_spot():
    with criterion(8):
        rng = np.random.default_rng(8)
        found = 0
        while found < 100:
            rho = random_disordered_state(rng)
            if peres_oracle(rho).bound_satisfied:
                continue
            found += 1
            assert m1_detector(rho).bound_satisfied
            # sanity: a detector that sees correlations does catch these states
            assert not horodecki(rho).bound_satisfied


def test_criterion_9_schur_equivalence():
    with criterion(9):
        rng = np.random.default_rng(9)
        for _ in range(200):
            rho = random_density(2, rng)
            for m in m1_pair(rho):
                direct = hermitian_eigenvalues(m).min >= -1e-10
                schur = hermitian_eigenvalues(m1_schur(m)).min >= -1e-10
                assert direct == schur
