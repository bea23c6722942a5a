import numpy as np
import pytest

import noonsim as ns
from noonsim.measurement import arm_projector
from noonsim.metrics import bell_phi, bell_psi
from noonsim.tomography import project_to_physical

from oracles import random_density_matrix


def proj(v):
    return np.outer(v, v.conj())


SETTINGS = ns.standard_settings()
CALIBRATION = 0.62 * proj(bell_phi(+1)) + 0.38 * proj(bell_psi(+1))


class TestSettings:
    def test_thirty_six(self):
        assert len(SETTINGS) == 36

    def test_contains_rl_pairing(self):
        assert any(s.arm1 == "R" and s.arm2 == "L" for s in SETTINGS)

    def test_deterministic_order(self):
        again = ns.standard_settings()
        assert [s.label for s in again] == [s.label for s in SETTINGS]

    def test_projector_set_is_tomographically_complete(self):
        # the 6 single-photon projectors must span the single-qubit
        # operator space: Gram matrix of their vectorizations has rank 4
        vecs = np.stack([arm_projector(a).flatten() for a in "HVDARL"])
        gram = vecs @ vecs.conj().T
        assert np.linalg.matrix_rank(gram) == 4


class TestPredictedCounts:
    def test_maximally_mixed(self):
        mu = ns.predicted_counts(np.eye(4) / 4, SETTINGS, 400.0)
        assert np.allclose(mu, 100.0, atol=1e-9)

    def test_pure_pp_at_circular_setting(self):
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = 1.0
        idx = next(i for i, s in enumerate(SETTINGS) if s.arm1 == "R" and s.arm2 == "R")
        mu = ns.predicted_counts(rho, SETTINGS, 100.0)
        assert mu[idx] == pytest.approx(100.0, abs=1e-9)

    def test_bell_at_hh(self):
        rho = proj(bell_phi(+1))
        idx = next(i for i, s in enumerate(SETTINGS) if s.arm1 == "H" and s.arm2 == "H")
        mu = ns.predicted_counts(rho, SETTINGS, 100.0)
        assert mu[idx] == pytest.approx(50.0, abs=1e-9)


class TestLinearInversion:
    def test_exact_maximally_mixed(self):
        counts = ns.predicted_counts(np.eye(4) / 4, SETTINGS, 1e4)
        res = ns.linear_inversion(counts, SETTINGS)
        assert np.allclose(res.matrix, np.eye(4) / 4, atol=1e-10)
        assert res.is_physical

    def test_exact_bell(self):
        rho = proj(bell_phi(+1))
        counts = ns.predicted_counts(rho, SETTINGS, 1e4)
        res = ns.linear_inversion(counts, SETTINGS)
        assert np.allclose(res.matrix, rho, atol=1e-10)

    def test_poisson_counts_close(self):
        rng = np.random.default_rng(12)
        expected = ns.predicted_counts(CALIBRATION, SETTINGS, 1e3)
        counts = rng.poisson(expected)
        res = ns.linear_inversion(counts, SETTINGS)
        est = project_to_physical(res.matrix)
        assert ns.trace_distance(est, CALIBRATION) < 0.1

    def test_negative_eigenvalues_flagged(self):
        rng = np.random.default_rng(3)
        # near-pure truth with few counts: inversion typically non-physical
        expected = ns.predicted_counts(proj(bell_phi(+1)), SETTINGS, 200)
        counts = rng.poisson(expected)
        res = ns.linear_inversion(counts, SETTINGS)
        assert res.is_physical == (res.min_eigenvalue >= 0.0)

    def test_rank_deficient_settings_rejected(self):
        subset = [s for s in SETTINGS if s.arm1 in ("H", "V") and s.arm2 in ("H", "V")]
        counts = [100.0] * len(subset)
        with pytest.raises(ValueError):
            ns.linear_inversion(counts, subset)

    def test_zero_basis_rejected(self):
        counts = np.zeros(36)
        counts[:4] = 100.0
        with pytest.raises(ValueError):
            ns.linear_inversion(counts, SETTINGS)


class TestMle:
    def test_noiseless_calibration_roundtrip(self):
        counts = ns.predicted_counts(CALIBRATION, SETTINGS, 1e6)
        res = ns.mle_reconstruct(counts, SETTINGS)
        assert ns.fidelity(res.rho.matrix, CALIBRATION) >= 0.999
        res.rho.validate()

    def test_noiseless_maximally_mixed(self):
        counts = ns.predicted_counts(np.eye(4) / 4, SETTINGS, 1e6)
        res = ns.mle_reconstruct(counts, SETTINGS)
        assert ns.trace_distance(res.rho.matrix, np.eye(4) / 4) < 0.01

    def test_agrees_with_physical_linear_inversion(self):
        rng = np.random.default_rng(21)
        truth = random_density_matrix(rng)  # full rank
        counts = rng.poisson(ns.predicted_counts(truth, SETTINGS, 1e6))
        lin = ns.linear_inversion(counts, SETTINGS)
        res = ns.mle_reconstruct(counts, SETTINGS)
        if lin.is_physical:
            assert ns.trace_distance(res.rho.matrix, lin.matrix) < 0.01

    def test_estimator_agreement_noiseless_full_rank(self):
        rng = np.random.default_rng(8)
        truth = random_density_matrix(rng)
        counts = ns.predicted_counts(truth, SETTINGS, 1e6)
        lin = ns.linear_inversion(counts, SETTINGS)
        res = ns.mle_reconstruct(counts, SETTINGS)
        assert lin.is_physical
        assert ns.trace_distance(res.rho.matrix, lin.matrix) < 1e-3

    def test_likelihood_trace_monotone(self):
        rng = np.random.default_rng(5)
        counts = rng.poisson(ns.predicted_counts(CALIBRATION, SETTINGS, 1e4))
        res = ns.mle_reconstruct(counts, SETTINGS)
        diffs = np.diff(res.ll_trace)
        assert np.all(diffs >= -1e-9)

    def test_consistency_scaling(self):
        medians = []
        for scale in (1e3, 1e4, 1e5):
            dists = []
            for seed in range(20):
                rng = np.random.default_rng(1000 + seed)
                counts = rng.poisson(ns.predicted_counts(CALIBRATION, SETTINGS, scale))
                res = ns.mle_reconstruct(counts, SETTINGS)
                dists.append(ns.trace_distance(res.rho.matrix, CALIBRATION))
            medians.append(float(np.median(dists)))
        assert medians[0] >= medians[1] >= medians[2]

    def test_physicality_always(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            truth = random_density_matrix(rng)
            counts = rng.poisson(ns.predicted_counts(truth, SETTINGS, 500))
            res = ns.mle_reconstruct(counts, SETTINGS)
            res.rho.validate()
            eigs = np.linalg.eigvalsh(res.rho.matrix)
            assert eigs.min() >= -1e-12
            assert np.real(np.trace(res.rho.matrix)) == pytest.approx(1.0, abs=1e-10)

    def test_all_zero_counts_rejected(self):
        with pytest.raises(ValueError):
            ns.mle_reconstruct(np.zeros(36), SETTINGS)

    def test_count_records_accepted(self):
        counts = ns.predicted_counts(CALIBRATION, SETTINGS, 1e4)
        records = [
            ns.CountRecord(s.label, int(round(n)), 1.0)
            for s, n in zip(SETTINGS, counts)
        ]
        res = ns.mle_reconstruct(records, SETTINGS)
        assert ns.fidelity(res.rho.matrix, CALIBRATION) > 0.999


class TestBootstrap:
    METRICS = {
        "concurrence": ns.concurrence,
        "fidelity": lambda r: ns.fidelity_to_pure(r, bell_phi(+1)),
    }

    def test_deterministic_under_seed(self):
        rng = np.random.default_rng(17)
        counts = rng.poisson(ns.predicted_counts(CALIBRATION, SETTINGS, 1e4))
        a = ns.bootstrap_errors(counts, SETTINGS, self.METRICS, 10, seed=3)
        b = ns.bootstrap_errors(counts, SETTINGS, self.METRICS, 10, seed=3)
        assert a.stds == b.stds

    def test_constant_metric_zero_std(self):
        rng = np.random.default_rng(17)
        counts = rng.poisson(ns.predicted_counts(CALIBRATION, SETTINGS, 1e4))
        res = ns.bootstrap_errors(counts, SETTINGS, {"const": lambda r: 1.0}, 5, seed=0)
        assert res.stds["const"] == 0.0

    def test_scaling_with_counts(self):
        rng = np.random.default_rng(23)
        stds = {}
        for scale in (1e5, 1e6):
            counts = rng.poisson(ns.predicted_counts(CALIBRATION, SETTINGS, scale))
            res = ns.bootstrap_errors(counts, SETTINGS, self.METRICS, 30, seed=11)
            stds[scale] = res.stds["fidelity"]
        ratio = stds[1e5] / stds[1e6]
        expected = np.sqrt(10)
        assert expected / 2 < ratio < expected * 2

    def test_needs_two_resamples(self):
        with pytest.raises(ValueError):
            ns.bootstrap_errors(np.ones(36), SETTINGS, self.METRICS, 1, seed=0)
