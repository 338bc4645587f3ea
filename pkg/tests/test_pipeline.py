import numpy as np
import pytest

from ps2c.dataset import LabeledDataset, znormalize_dataset
from ps2c.discretizer import SaxParams, discretize
from ps2c.pattern_index import PatternIndex
from ps2c.pipeline import (
    MergedFeatureSet,
    NoPatternsError,
    PipelineConfig,
    build_report,
    evaluate,
    fit_transform,
    merge,
    run_experiment,
    train_classifier,
)
from ps2c.sampler_trie import fit_sampler
from ps2c.shapelet_transform import FeatureMatrix, Shapelet, create_feature_sets
from ps2c.synthgen import SynthSpec, generate


def _planted(n_per_class=12, length=64, seed=0):
    return (
        generate(SynthSpec(n_per_class=n_per_class, length=length, seed=seed)),
        generate(SynthSpec(n_per_class=n_per_class, length=length, seed=seed + 1)),
    )


def _shapelet(values, pattern="ab", alpha=2, omega=2):
    return Shapelet(
        np.asarray(values, float), alpha=alpha, omega=omega, pattern=pattern,
        source_index=0, symbol_offset=0,
    )


def test_config_defaults():
    cfg = PipelineConfig()
    assert cfg.alphas == (2, 3, 4, 5, 6, 7, 8)
    assert cfg.omegas == (2, 3, 4, 5, 6)
    assert (cfg.l_max, cfg.s_min, cfg.tau, cfg.k) == (20, 0.05, 0.5, 4)


def test_config_validation():
    with pytest.raises(ValueError):
        PipelineConfig(alphas=())
    with pytest.raises(ValueError):
        PipelineConfig(alphas=(1, 2))
    with pytest.raises(ValueError):
        PipelineConfig(omegas=(0,))
    with pytest.raises(ValueError):
        PipelineConfig(tau=0.0)
    with pytest.raises(ValueError):
        PipelineConfig(k=0)
    with pytest.raises(ValueError):
        PipelineConfig(l_max=1)
    with pytest.raises(ValueError):
        PipelineConfig(seed=-1)


def test_full_grid_gives_140_columns():
    # |A|=7 x |Omega|=5 x K=4 when no cell is empty or short-sampled
    train, test = _planted()
    merged = fit_transform(train, test, PipelineConfig())
    assert merged.train.n_columns == 140
    assert merged.test.n_columns == 140
    assert merged.skipped == ()


def test_single_cell_config_equals_direct_cell():
    train, test = _planted(8, 48)
    cfg = PipelineConfig(alphas=(3,), omegas=(4,))
    merged = fit_transform(train, test, cfg)

    ztrain, ztest = znormalize_dataset(train), znormalize_dataset(test)
    d = discretize(ztrain, SaxParams(3, 4))
    index = PatternIndex.build(d, cfg.l_max)
    trie = fit_sampler(d, index, ztrain.labels, cfg.l_max, cfg.s_min, cfg.tau)
    rng = np.random.default_rng([cfg.seed, 3, 4])
    ftr, fte = create_feature_sets(ztrain, ztest, d, index, trie, cfg.k, rng)
    assert np.array_equal(merged.train.values, ftr.values)
    assert np.array_equal(merged.test.values, fte.values)


def test_fit_transform_deterministic():
    train, test = _planted(8, 48)
    cfg = PipelineConfig(alphas=(2, 4), omegas=(3, 5), seed=11)
    a = fit_transform(train, test, cfg)
    b = fit_transform(train, test, cfg)
    assert np.array_equal(a.train.values, b.train.values)
    assert np.array_equal(a.test.values, b.test.values)


def test_threads_do_not_change_output():
    train, test = _planted(10, 64)
    cfg = PipelineConfig()
    seq = fit_transform(train, test, cfg, n_threads=1)
    par = fit_transform(train, test, cfg, n_threads=4)
    assert np.array_equal(seq.train.values, par.train.values)
    assert np.array_equal(seq.test.values, par.test.values)
    assert seq.train.column_tags() == par.train.column_tags()


def test_block_order_ascending_alpha_omega():
    train, test = _planted(8, 48)
    cfg = PipelineConfig(alphas=(3, 2), omegas=(3, 2), k=1)
    merged = fit_transform(train, test, cfg)
    cells = []
    for tag in merged.train.column_tags():
        a, w = tag.split("_")[:2]
        cells.append((int(a[1:]), int(w[1:])))
    assert cells == sorted(cells)
    # (2,2) and (2,3) must precede (3,2)
    assert cells.index((2, 2)) < cells.index((3, 2))
    assert cells.index((2, 3)) < cells.index((3, 2))


def test_window_too_long_cells_are_skipped():
    train, test = _planted(6, 24)
    cfg = PipelineConfig(alphas=(3,), omegas=(2, 24, 30))
    merged = fit_transform(train, test, cfg)
    skipped = {(c.alpha, c.omega) for c in merged.skipped}
    assert (3, 24) in skipped and (3, 30) in skipped
    assert merged.train.n_columns >= 1


def test_no_patterns_error():
    # both classes share identical series: nothing can discriminate
    base = np.sin(np.linspace(0, 6, 32))
    train = LabeledDataset((base, base.copy(), base.copy(), base.copy()),
                           ("1", "1", "2", "2"))
    with pytest.raises(NoPatternsError, match="no discriminative patterns"):
        fit_transform(train, train, PipelineConfig(alphas=(2, 3), omegas=(2,)))


def test_fit_transform_requires_two_classes():
    ds = generate(SynthSpec(n_per_class=4, length=32, seed=0))
    ones = ds.subset([i for i, c in enumerate(ds.labels) if c == "1"])
    with pytest.raises(ValueError, match="two classes"):
        fit_transform(ones, ds, PipelineConfig())


def test_merge_examples():
    a = FeatureMatrix(np.ones((5, 4)), [_shapelet([1, 2])] * 4)
    b = FeatureMatrix(np.zeros((5, 4)), [_shapelet([3, 4])] * 4)
    out = merge([a, b])
    assert out.values.shape == (5, 8)
    assert np.array_equal(out.values[:, :4], a.values)
    with pytest.raises(ValueError, match="row count"):
        merge([a, FeatureMatrix(np.ones((4, 2)), [_shapelet([1, 2])] * 2)])
    with pytest.raises(ValueError):
        merge([])


def test_train_and_evaluate_perfectly_separable():
    X = np.array([[0.0], [0.0], [1.0], [2.0]])
    y = ["A", "A", "B", "B"]
    model = train_classifier(FeatureMatrix(X, [_shapelet([1, 2])]), y, seed=0)
    assert evaluate(model, FeatureMatrix(X, [_shapelet([1, 2])]), y) == 1.0
    assert evaluate(model, X, ["B", "B", "A", "A"]) == 0.0
    assert evaluate(model, X, ["A", "B", "A", "B"]) == 0.5


def test_evaluate_schema_mismatch():
    X = np.array([[0.0, 1.0], [1.0, 0.0], [0.0, 1.0], [1.0, 0.0]])
    model = train_classifier(X, ["A", "B", "A", "B"], seed=0)
    with pytest.raises(ValueError):
        evaluate(model, np.zeros((2, 5)), ["A", "B"])
    with pytest.raises(ValueError, match="align"):
        evaluate(model, X, ["A", "B"])


def test_run_experiment_single_resample_is_original_split():
    train, test = _planted(8, 48)
    cfg = PipelineConfig(alphas=(3, 4), omegas=(3,), seed=5)
    res = run_experiment(train, test, cfg, n_resamples=1)
    assert len(res.accuracies) == 1

    merged = fit_transform(train, test, cfg, master_seed=cfg.seed)
    model = train_classifier(merged.train, train.labels, seed=cfg.seed)
    assert res.accuracies[0] == evaluate(model, merged.test, test.labels)


def test_run_experiment_deterministic_vector():
    train, test = _planted(8, 48)
    cfg = PipelineConfig(alphas=(2, 5), omegas=(2, 4), seed=9)
    r1 = run_experiment(train, test, cfg, n_resamples=4)
    r2 = run_experiment(train, test, cfg, n_resamples=4)
    assert r1.accuracies == r2.accuracies
    assert r1.n_columns == r2.n_columns


def test_run_experiment_resamples_vary_split():
    train, test = _planted(8, 48)
    cfg = PipelineConfig(alphas=(3,), omegas=(3,), seed=1)
    seen = []

    def capture(i, split, merged):
        seen.append((i, split.seed, split.train.labels))

    run_experiment(train, test, cfg, n_resamples=3, on_resample=capture)
    assert [s[0] for s in seen] == [0, 1, 2]
    assert seen[0][1] == 0  # resample 0 keeps the original split
    assert seen[1][1] == cfg.seed + 1
    assert seen[2][1] == cfg.seed + 2


def test_run_experiment_validates_n_resamples():
    train, test = _planted(6, 32)
    with pytest.raises(ValueError):
        run_experiment(train, test, PipelineConfig(), n_resamples=0)


def test_timing_breakdown_covers_total():
    train, test = _planted(30, 128)
    cfg = PipelineConfig()
    res = run_experiment(train, test, cfg, n_resamples=1, n_threads=1)
    attributed = sum(res.timings.values())
    assert attributed <= res.total_seconds * 1.001
    assert attributed >= 0.95 * res.total_seconds


def test_build_report_is_json_stable():
    import json

    train, test = _planted(6, 32)
    cfg = PipelineConfig(alphas=(3,), omegas=(3,))
    res = run_experiment(train, test, cfg, n_resamples=2)
    rep = build_report(cfg, res, 2)
    text1 = json.dumps(rep, sort_keys=True)
    res2 = run_experiment(train, test, cfg, n_resamples=2)
    text2 = json.dumps(build_report(cfg, res2, 2), sort_keys=True)
    assert text1 == text2
    assert "accuracies" in rep and "config" in rep and "skipped_cells" in rep


def test_leakage_guard_permuted_test_labels():
    train, test = _planted(8, 48)
    cfg = PipelineConfig(alphas=(2, 6), omegas=(2, 5), seed=3)
    merged = fit_transform(train, test, cfg)

    rng = np.random.default_rng(0)
    perm = rng.permutation(test.n_instances)
    scrambled = LabeledDataset(test.series, tuple(test.labels[i] for i in perm))
    merged2 = fit_transform(train, scrambled, cfg)
    assert np.array_equal(merged.test.values, merged2.test.values)
    assert np.array_equal(merged.train.values, merged2.train.values)
