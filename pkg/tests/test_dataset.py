import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ps2c.dataset import (
    LabeledDataset,
    UcrFormatError,
    load_ucr,
    resample_split,
    save_ucr,
    znormalize,
    znormalize_dataset,
)


def _write(tmp_path, text, name="data.txt"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_load_single_line_parse(tmp_path):
    path = _write(tmp_path, "1,0.0,1.0,2.0\n2,3.0,4.0,5.0\n")
    ds = load_ucr(path)
    assert ds.labels[0] == "1"
    assert np.array_equal(ds.series[0], [0.0, 1.0, 2.0])


def test_load_two_lines_two_classes(tmp_path):
    path = _write(tmp_path, "1,0,1,2\n2,3,4,5\n")
    ds = load_ucr(path)
    assert ds.n_instances == 2
    assert ds.classes == ("1", "2")


def test_load_tab_delimited(tmp_path):
    path = _write(tmp_path, "1\t0\t1\t2\n2\t3\t4\t5\n")
    ds = load_ucr(path)
    assert ds.n_instances == 2
    assert np.array_equal(ds.series[1], [3.0, 4.0, 5.0])


def test_load_ragged_lengths_allowed(tmp_path):
    path = _write(tmp_path, "1,0,1,2,3\n2,4,5\n")
    ds = load_ucr(path)
    assert ds.lengths == (4, 2)
    assert ds.min_length == 2 and ds.max_length == 4


def test_load_errors(tmp_path):
    with pytest.raises(UcrFormatError, match="empty"):
        load_ucr(_write(tmp_path, "\n\n", "a.txt"))
    with pytest.raises(UcrFormatError, match="at least two values"):
        load_ucr(_write(tmp_path, "1,5\n2,6\n", "b.txt"))
    with pytest.raises(UcrFormatError, match="non-numeric"):
        load_ucr(_write(tmp_path, "1,0,x,2\n2,3,4,5\n", "c.txt"))
    with pytest.raises(UcrFormatError, match="non-finite"):
        load_ucr(_write(tmp_path, "1,0,nan,2\n2,3,4,5\n", "d.txt"))
    with pytest.raises(UcrFormatError, match="2 instances"):
        load_ucr(_write(tmp_path, "1,0,1,2\n", "e.txt"))
    with pytest.raises(UcrFormatError, match="2 distinct labels"):
        load_ucr(_write(tmp_path, "1,0,1,2\n1,3,4,5\n", "f.txt"))
    with pytest.raises(OSError):
        load_ucr(tmp_path / "missing.txt")


def test_save_load_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    ds = LabeledDataset(
        tuple(rng.normal(size=12) for _ in range(6)),
        ("1", "2", "1", "2", "1", "2"),
    )
    for delim, name in ((",", "c.csv"), ("\t", "t.tsv")):
        path = tmp_path / name
        save_ucr(ds, path, delimiter=delim)
        back = load_ucr(path)
        assert back.labels == ds.labels
        for a, b in zip(back.series, ds.series):
            assert np.allclose(a, b, atol=1e-6)


def test_dataset_validation():
    with pytest.raises(ValueError, match="at least 2 observations"):
        LabeledDataset((np.array([1.0]),), ("1",))
    with pytest.raises(ValueError, match="finite"):
        LabeledDataset((np.array([1.0, np.inf]),), ("1",))
    with pytest.raises(ValueError, match="index-aligned"):
        LabeledDataset((np.array([1.0, 2.0]),), ("1", "2"))
    with pytest.raises(ValueError, match="empty"):
        LabeledDataset((), ())


def test_dataset_series_immutable():
    ds = LabeledDataset((np.array([1.0, 2.0]),), ("1",))
    with pytest.raises(ValueError):
        ds.series[0][0] = 9.0


def test_znormalize_closed_form():
    out = znormalize([1.0, 2.0, 3.0])
    assert np.allclose(out, [-1.2247, 0.0, 1.2247], atol=1e-4)
    assert abs(out.mean()) < 1e-9
    assert abs(out.std() - 1.0) < 1e-9


def test_znormalize_degenerate_is_zero():
    assert np.array_equal(znormalize([5.0, 5.0, 5.0, 5.0]), np.zeros(4))


@given(
    st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=50).filter(
        lambda v: np.std(v) > 1e-6
    )
)
@settings(max_examples=100, deadline=None)
def test_znormalize_idempotent(values):
    once = znormalize(values)
    twice = znormalize(once)
    assert np.allclose(once, twice, atol=1e-9)
    assert abs(once.mean()) < 1e-9
    assert abs(once.std() - 1.0) < 1e-9


def test_znormalize_dataset_keeps_labels():
    ds = LabeledDataset((np.array([1.0, 3.0]), np.array([0.0, 8.0])), ("a", "b"))
    z = znormalize_dataset(ds)
    assert z.labels == ds.labels
    assert all(abs(s.std() - 1.0) < 1e-9 for s in z.series)


def _pair(n_train=6, n_test=4, seed=0):
    rng = np.random.default_rng(seed)
    mk = lambda n: LabeledDataset(
        tuple(rng.normal(size=8) for _ in range(n)),
        tuple(str(1 + i % 2) for i in range(n)),
    )
    return mk(n_train), mk(n_test)


def test_resample_seed_zero_is_original():
    train, test = _pair()
    split = resample_split(train, test, 0)
    assert split.train is train and split.test is test
    assert split.seed == 0


def test_resample_deterministic_and_seed_sensitive():
    train, test = _pair()
    s1 = resample_split(train, test, 1)
    s1b = resample_split(train, test, 1)
    s2 = resample_split(train, test, 2)
    assert s1.train.labels == s1b.train.labels
    assert all(
        np.array_equal(a, b) for a, b in zip(s1.train.series, s1b.train.series)
    )
    # seeds 1 and 2 on a 10-instance pool: collision essentially impossible
    same = all(
        np.array_equal(a, b) for a, b in zip(s1.train.series, s2.train.series)
    )
    assert not same


def test_resample_preserves_pool_and_sizes():
    train, test = _pair()
    split = resample_split(train, test, 7)
    assert split.train.n_instances == train.n_instances
    assert split.test.n_instances == test.n_instances
    key = lambda ds: sorted(
        (tuple(s), c) for s, c in zip(ds.series, ds.labels)
    )
    assert sorted(key(split.train) + key(split.test)) == sorted(
        key(train) + key(test)
    )


def test_resample_stratified_counts():
    train, test = _pair(8, 6)
    split = resample_split(train, test, 5)
    assert split.stratified
    assert split.train.class_counts() == train.class_counts()


def test_resample_unstratifiable_falls_back():
    # class "9" has a single pooled instance: stratification infeasible
    train = LabeledDataset(
        (np.zeros(4) + 1, np.zeros(4) + 2, np.zeros(4) + 3),
        ("1", "2", "9"),
    )
    test = LabeledDataset((np.zeros(4) + 4, np.zeros(4) + 5), ("1", "2"))
    split = resample_split(train, test, 3)
    assert not split.stratified
    assert split.train.n_instances == 3


def test_resample_pool_too_small():
    ds = LabeledDataset((np.zeros(4), np.ones(4)), ("1", "2"))
    with pytest.raises(ValueError, match="at least 4"):
        resample_split(ds, ds.subset([0]), 1)
