import numpy as np
import pytest
from scipy.special import airy as scipy_airy

import twsketch as tw
from twsketch.errors import DomainError
from twsketch.tracywidom import airy_ai_and_prime, get_table

from painleve_oracle import tw1_cdf_oracle

# Published F1 percentiles from standard random-matrix tables (4 decimals).
LITERATURE_QUANTILES = {
    0.50: -1.2686,
    0.90: 0.4501,
    0.95: 0.9793,
    0.99: 2.0234,
}


def test_airy_asymptotics_match_scipy():
    for z, rtol in ((6.0, 1e-9), (7.0, 1e-10), (8.0, 4e-12), (10.0, 1e-13),
                    (14.0, 1e-14)):
        ai, aip = airy_ai_and_prime(z)
        ref_ai, ref_aip, _, _ = scipy_airy(z)
        assert abs(ai - ref_ai) <= rtol * abs(ref_ai)
        assert abs(aip - ref_aip) <= rtol * abs(ref_aip)
    with pytest.raises(DomainError):
        airy_ai_and_prime(2.0)


def test_left_tail_vanishes():
    assert tw.tw_cdf(-10.0) <= 1e-8
    assert tw.tw_cdf(-50.0) == 0.0


def test_right_tail_saturates():
    # F1(6) = 0.9999980672...: the right tail at z = 6 is ~1.9e-6, verified
    # against the independent oracle below.
    v = tw.tw_cdf(6.0)
    assert v == pytest.approx(tw1_cdf_oracle(6.0), abs=1e-6)
    assert 1 - 3e-6 <= v < 1.0
    assert tw.tw_cdf(50.0) == 1.0
    assert tw.tw_cdf(np.inf) == 1.0
    assert tw.tw_cdf(-np.inf) == 0.0


def test_cdf_matches_independent_oracle():
    zs = np.linspace(-10.0, 6.0, 41)
    np.testing.assert_allclose(tw.tw_cdf(zs), tw1_cdf_oracle(zs), atol=1e-6)


def test_value_near_distribution_mean():
    z = -1.2065
    assert tw.tw_cdf(z) == pytest.approx(tw1_cdf_oracle(z), abs=1e-6)


def test_ode_debug_mode_agrees_with_table():
    zs = np.linspace(-9.5, 5.5, 31)
    np.testing.assert_allclose(tw.tw_cdf(zs, method="ode"), tw.tw_cdf(zs), atol=1e-7)
    with pytest.raises(DomainError):
        tw.tw_cdf(0.0, method="simpson")


def test_nan_rejected():
    with pytest.raises(DomainError):
        tw.tw_cdf(float("nan"))
    with pytest.raises(DomainError):
        tw.tw_cdf(np.array([0.0, np.nan]))


def test_monotone_on_random_pairs():
    rng = np.random.default_rng(11)
    z = rng.uniform(-12.0, 9.0, size=(10_000, 2))
    lo = z.min(axis=1)
    hi = z.max(axis=1)
    assert (tw.tw_cdf(lo) <= tw.tw_cdf(hi) + 1e-15).all()


def test_quantile_round_trip_on_percentile_grid():
    ps = np.arange(1, 100) / 100.0
    for p in ps:
        z = tw.tw_quantile(p)
        assert abs(tw.tw_cdf(z) - p) <= 1e-5


def test_quantile_inverse_of_cdf_at_zero():
    p = tw.tw_cdf(0.0)
    assert tw.tw_quantile(p) == pytest.approx(0.0, abs=1e-5)


def test_quantile_median_property():
    z = tw.tw_quantile(0.5)
    assert tw.tw_cdf(z) == pytest.approx(0.5, abs=1e-6)


def test_p95_matches_oracle_quantile():
    # invert the independent oracle by bisection
    lo, hi = -2.0, 4.0
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        if tw1_cdf_oracle(mid) < 0.95:
            lo = mid
        else:
            hi = mid
    assert tw.tw_quantile(0.95) == pytest.approx(0.5 * (lo + hi), abs=1e-4)


def test_quantiles_match_published_tables():
    for p, z_ref in LITERATURE_QUANTILES.items():
        assert tw.tw_quantile(p) == pytest.approx(z_ref, abs=2.5e-4)


def test_quantile_domain():
    for p in (0.0, 1.0, -0.2, 1.3, float("nan")):
        with pytest.raises(DomainError):
            tw.tw_quantile(p)
    # extreme but valid levels still satisfy the |F1(z) - p| <= 1e-6 contract
    for p in (1e-12, 1e-20, 1 - 1e-12):
        z = tw.tw_quantile(p)
        assert abs(tw.tw_cdf(z) - p) <= 1e-6
    assert tw.tw_quantile(1e-20) == pytest.approx(-10.0)


def test_table_invariants():
    table = get_table()
    assert table.grid[0] <= -10.0 and table.grid[-1] >= 6.0
    assert (np.diff(table.cdf) >= 0).all()
    assert table.cdf[0] >= 0.0 and table.cdf[-1] <= 1.0
    assert table.accuracy <= 1e-6


def test_table_csv_export(tmp_path):
    path = tmp_path / "tw.csv"
    n = tw.tracywidom.write_table_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "z,cdf"
    assert len(lines) == n + 1
    zs = np.array([float(line.split(",")[0]) for line in lines[1:]])
    cdfs = np.array([float(line.split(",")[1]) for line in lines[1:]])
    assert zs[0] == -10.0 and zs[-1] == 6.0
    assert (np.diff(zs) > 0).all()
    assert (np.diff(cdfs) >= 0).all()
