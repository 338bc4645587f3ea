import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ps2c.dataset import LabeledDataset, znormalize
from ps2c.discretizer import (
    SaxParams,
    compute_breakpoints,
    discretize,
    dump_text,
    paa,
    paa_length,
    sax,
    sax_text,
)


def _phi(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def _quantile_oracle(p: float) -> float:
    # bisection on the erf-based CDF; independent of the code under test
    lo, hi = -10.0, 10.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _phi(mid) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_breakpoints_alpha2():
    assert np.allclose(compute_breakpoints(2), [0.0], atol=1e-12)


def test_breakpoints_alpha4():
    assert np.allclose(compute_breakpoints(4), [-0.6745, 0.0, 0.6745], atol=1e-4)


def test_breakpoints_alpha3():
    assert np.allclose(compute_breakpoints(3), [-0.4307, 0.4307], atol=1e-4)


@pytest.mark.parametrize("alpha", range(2, 27))
def test_breakpoints_match_cdf_inversion_oracle(alpha):
    betas = compute_breakpoints(alpha)
    oracle = [_quantile_oracle(i / alpha) for i in range(1, alpha)]
    assert np.allclose(betas, oracle, atol=1e-9)
    assert np.all(np.diff(betas) > 0)
    # equal-area quantiles are symmetric about zero
    assert np.allclose(betas, -betas[::-1], atol=1e-9)


def test_breakpoints_alpha_out_of_range():
    for alpha in (1, 27, 0):
        with pytest.raises(ValueError):
            compute_breakpoints(alpha)


def test_paa_exact_division():
    assert np.allclose(paa([0, 2, 4, 6, 8, 10], 2), [1.0, 5.0, 9.0])


def test_paa_length_follows_half_away_rounding():
    assert paa_length(286, 7) == 41  # 286/7 = 40.857 rounds up
    assert paa_length(10, 4) == 3  # 2.5 rounds away from zero
    assert paa_length(6, 4) == 2  # 1.5 rounds away from zero
    assert paa_length(7, 3) == 2  # 2.33 rounds down
    assert paa_length(3, 3) == 1


def test_paa_long_remainder_folds_into_last_segment():
    # 286 = 41 segments of 7 only if 41*7=287 > 286: final segment is short
    series = np.arange(286, dtype=float)
    out = paa(series, 7)
    assert out.size == 41
    assert out[-1] == np.mean(series[280:])  # 6 trailing observations
    assert out[0] == np.mean(series[:7])


def test_paa_trailing_observations_folded():
    # p=round(10/4)=3 segments but 3*4 > 10: last segment covers [8, 10)
    out = paa(np.arange(10, dtype=float), 4)
    assert out.size == 3
    assert out[-1] == np.mean([8.0, 9.0])
    # p*omega < n case: n=7, omega=3 -> p=2, last segment covers [3, 7)
    out2 = paa(np.arange(7, dtype=float), 3)
    assert out2.size == 2
    assert out2[-1] == np.mean([3.0, 4.0, 5.0, 6.0])


def test_paa_single_segment():
    assert np.allclose(paa([1.0, 1.0, 1.0], 3), [1.0])


def test_paa_rejects_short_series():
    with pytest.raises(ValueError):
        paa([1.0, 2.0], 3)


def test_sax_constant_zero_is_all_c():
    codes = sax(np.zeros(12), SaxParams(4, 3))
    assert sax_text(codes) == "cccc"


def test_sax_boundary_right_half_open():
    # paa values [-2, 0, 2] with alpha=2: 0 sits on the breakpoint and
    # maps right, giving 'b'
    codes = sax(np.array([-2.0, 0.0, 2.0]), SaxParams(2, 1))
    assert sax_text(codes) == "abb"


def test_sax_whole_series_window_gives_single_symbol():
    codes = sax(znormalize(np.arange(9.0)), SaxParams(2, 9))
    assert len(codes) == 1


@given(
    st.lists(st.floats(-3, 3), min_size=4, max_size=40),
    st.integers(2, 8),
    st.integers(1, 4),
)
@settings(max_examples=150, deadline=None)
def test_sax_shape_and_range(values, alpha, omega):
    values = np.array(values)
    if values.size < omega:
        return
    codes = sax(values, SaxParams(alpha, omega))
    assert codes.size == paa_length(values.size, omega)
    assert codes.min() >= 0 and codes.max() < alpha


@given(st.integers(2, 8), st.data())
@settings(max_examples=80, deadline=None)
def test_sax_monotone_in_value(alpha, data):
    v1 = data.draw(st.floats(-4, 4))
    v2 = data.draw(st.floats(-4, 4))
    lo, hi = sorted((v1, v2))
    params = SaxParams(alpha, 1)
    s_lo = sax(np.array([lo, lo]), params)[0]
    s_hi = sax(np.array([hi, hi]), params)[0]
    assert s_lo <= s_hi


def test_symbol_histogram_uniform_under_unit_window():
    rng = np.random.default_rng(42)
    n = 60_000
    for alpha in (2, 5, 8):
        codes = sax(rng.normal(size=n), SaxParams(alpha, 1))
        counts = np.bincount(codes, minlength=alpha)
        expect = n / alpha
        sigma = math.sqrt(n * (1 / alpha) * (1 - 1 / alpha))
        assert np.all(np.abs(counts - expect) < 3 * sigma)


def test_discretize_alignment_and_dump():
    ds = LabeledDataset(
        (np.zeros(8), znormalize(np.arange(8.0))), ("x", "y")
    )
    d = discretize(ds, SaxParams(2, 4))
    assert d.n_instances == 2
    assert d.strings[0] == "bb"  # 0 sits on the lone breakpoint and maps right
    text = dump_text(d, ds.labels)
    lines = text.splitlines()
    assert lines[0].startswith("x\t")
    assert lines[1].startswith("y\t")


def test_params_validation():
    for alpha, omega in ((1, 2), (27, 2), (3, 0)):
        with pytest.raises(ValueError):
            SaxParams(alpha, omega)
