"""Smoke tests for the python module; runnable under pytest or standalone."""

import numpy as np

import mofs


def test_datagen_is_deterministic():
    a = mofs.generate_synthetic(samples=50, informative=2, redundant=1, noise=2,
                                delta=2.0, rho=0.5, seed=9)
    b = mofs.generate_synthetic(samples=50, informative=2, redundant=1, noise=2,
                                delta=2.0, rho=0.5, seed=9)
    assert a.n_samples == 50 and a.n_features == 5
    assert np.array_equal(a.x, b.x)
    assert np.array_equal(a.y, b.y)
    assert list(a.feature_names) == [f"f{i}" for i in range(5)]


def test_auc_matches_hand_count():
    assert mofs.auc([0.9, 0.4, 0.6, 0.1], [1, 1, 0, 0]) == 0.75
    assert mofs.auc([1.0, 1.0], [1, 0]) == 0.5


def test_correlation_matrix_shape_and_diagonal():
    data = mofs.generate_synthetic(samples=30, informative=2, redundant=1, noise=1,
                                   delta=1.0, rho=0.9, seed=4)
    corr = mofs.correlation_matrix(data)
    assert corr.shape == (4, 4)
    assert np.allclose(np.diag(corr), 1.0)
    assert np.allclose(corr, corr.T)


def test_evaluate_mask_on_a_strong_feature():
    data = mofs.generate_synthetic(samples=80, informative=1, redundant=0, noise=3,
                                   delta=6.0, rho=0.0, seed=7)
    fit = mofs.evaluate_mask(data, [1, 0, 0, 0], cv_folds=2, seed=3)
    assert fit.auc >= 0.95
    assert 0.0 <= fit.sensitivity <= 1.0


def test_run_returns_a_deterministic_report():
    data = mofs.generate_synthetic(samples=50, informative=1, redundant=1, noise=3,
                                   delta=4.0, rho=0.6, seed=12)
    config = {"population_size": 10, "max_generations": 6, "seed": 5}
    report = mofs.run(data, config)
    assert list(report) == ["run_id", "seed", "config", "generations_run",
                            "terminated_by", "dissimilarity_trace", "pareto_front",
                            "selected", "confusion"]
    assert report["selected"]["index"] < len(report["pareto_front"])
    assert report == mofs.run(data, config)


def test_run_with_heldout_data():
    train = mofs.generate_synthetic(samples=50, informative=1, redundant=0, noise=3,
                                    delta=4.0, rho=0.0, seed=21)
    test = mofs.generate_synthetic(samples=40, informative=1, redundant=0, noise=3,
                                   delta=4.0, rho=0.0, seed=22)
    report = mofs.run(train, {"population_size": 8, "max_generations": 4, "seed": 2},
                      test=test)
    cm = report["confusion"]
    assert cm["tp"] + cm["fp"] + cm["tn"] + cm["fn"] == 40


def test_sweep_rows():
    data = mofs.generate_synthetic(samples=50, informative=1, redundant=0, noise=3,
                                   delta=3.0, rho=0.0, seed=2)
    config = {"population_size": 8, "max_generations": 4, "seed": 1}
    assert len(mofs.sweep(data, "weights", config)["rows"]) == 4
    assert len(mofs.sweep(data, "refpoints", config)["rows"]) == 7


def test_er_combine_consensus():
    beta = [[0.0, 0.0, 1.0, 0.0, 0.0]] * 4
    combined = mofs.er_combine(beta, [0.3, 0.3, 0.2, 0.2])
    assert abs(combined[2] - 1.0) < 1e-12
    assert abs(sum(combined) - 1.0) < 1e-9


def test_select_solution_prefers_rule_dominance():
    index, utility, utilities = mofs.select_solution(
        sen=[0.9, 0.6], spe=[0.9, 0.5], auc=[0.95, 0.7], acc=[0.9, 0.55],
        masks=[[1, 1, 0], [1, 1, 1]], omega=[0.3, 0.3, 0.2, 0.2], n_ref=5)
    assert index == 0
    assert abs(utility - 1.0) < 1e-9
    assert len(utilities) == 2


def test_baselines_run():
    data = mofs.generate_synthetic(samples=60, informative=1, redundant=0, noise=4,
                                   delta=8.0, rho=0.0, seed=3)
    assert mofs.sfs_auc(data, max_features=1, cv_folds=2, seed=1) == [0]
    weights, order = mofs.relief_rank(data, seed=1)
    assert order[0] == 0 and len(weights) == 5


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"  [ok] {name}")
            except AssertionError as exc:
                failures += 1
                print(f"  [FAIL] {name}: {exc}")
    raise SystemExit(1 if failures else 0)
