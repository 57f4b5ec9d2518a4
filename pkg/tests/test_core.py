import numpy as np
import pytest

from mwkmeans import (
    ClusteringState,
    MwkConfig,
    compute_dispersions,
    run,
    validate_dataset,
)
from mwkmeans.errors import (
    EmptyMatrixError,
    InvalidConfigError,
    NonFiniteError,
    RaggedRowsError,
)


class TestValidateDataset:
    def test_well_formed(self):
        d = validate_dataset([[0, 1], [1, 0]])
        assert d.n == 2 and d.m == 2

    def test_nan_reports_first_cell(self):
        with pytest.raises(NonFiniteError) as exc:
            validate_dataset([[0.0, float("nan")], [1.0, 2.0]])
        assert (exc.value.row, exc.value.col) == (0, 1)

    def test_inf_rejected(self):
        with pytest.raises(NonFiniteError):
            validate_dataset([[float("inf")]])

    def test_empty_matrix(self):
        with pytest.raises(EmptyMatrixError):
            validate_dataset([])

    def test_ragged_rows(self):
        with pytest.raises(RaggedRowsError):
            validate_dataset([[1, 2], [3]])

    def test_labels_length_checked(self):
        with pytest.raises(RaggedRowsError):
            validate_dataset([[1, 2]], labels=[0, 1])

    def test_values_are_read_only(self):
        d = validate_dataset([[1.0, 2.0]])
        with pytest.raises(ValueError):
            d.values[0, 0] = 5.0


class TestMwkConfig:
    def test_rejects_p_at_one(self):
        with pytest.raises(InvalidConfigError):
            MwkConfig(k=2, p=1.0)

    def test_rejects_p_just_above_one(self):
        with pytest.raises(InvalidConfigError):
            MwkConfig(k=2, p=1.0 + 1e-10)

    def test_rejects_bad_k(self):
        with pytest.raises(InvalidConfigError):
            MwkConfig(k=0, p=2.0)

    def test_accepts_small_p(self):
        MwkConfig(k=2, p=1.01)

    def test_rejects_negative_tol(self):
        with pytest.raises(InvalidConfigError):
            MwkConfig(k=2, p=2.0, tol_objective=-1.0)


class TestDispersions:
    def test_matches_definition(self):
        rng = np.random.default_rng(0)
        x = rng.normal(size=(12, 3))
        assignments = rng.integers(0, 2, size=12)
        centroids = rng.normal(size=(2, 3))
        p = 2.5
        d = compute_dispersions(x, assignments, centroids, p).d
        for l in range(2):
            for v in range(3):
                expected = sum(abs(xi[v] - centroids[l, v]) ** p for xi in x[assignments == l])
                assert d[l, v] == pytest.approx(expected, rel=1e-12)

    def test_round_trip_from_run(self):
        rng = np.random.default_rng(1)
        x = rng.normal(size=(30, 4))
        report = run(validate_dataset(x), MwkConfig(k=3, p=1.5, seed=2))
        state = report.final_state
        recomputed = compute_dispersions(x, state.assignments, state.centroids, 1.5).d
        np.testing.assert_allclose(recomputed, report.dispersions.d, rtol=1e-12)


class TestStateInvariants:
    @pytest.mark.parametrize("p", [1.1, 1.5, 2.0, 5.0])
    def test_weight_simplex(self, p):
        rng = np.random.default_rng(3)
        x = rng.normal(size=(40, 5))
        report = run(validate_dataset(x), MwkConfig(k=4, p=p, seed=4))
        w = report.final_state.weights
        np.testing.assert_allclose(w.sum(axis=1), 1.0, atol=1e-9)
        assert (w > 0).all() if (report.dispersions.d > 0).all() else True
        assert (w <= 1.0).all()

    def test_no_empty_clusters_in_final_state(self):
        rng = np.random.default_rng(5)
        x = rng.normal(size=(25, 2))
        report = run(validate_dataset(x), MwkConfig(k=5, p=2.0, seed=6))
        counts = np.bincount(report.final_state.assignments, minlength=5)
        assert (counts > 0).all()

    def test_state_is_frozen(self):
        state = ClusteringState(
            assignments=[0, 1],
            centroids=[[0.0], [1.0]],
            weights=[[1.0], [1.0]],
            objective=0.0,
        )
        with pytest.raises(ValueError):
            state.weights[0, 0] = 0.5
