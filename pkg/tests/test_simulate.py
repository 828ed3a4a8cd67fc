import math

import numpy as np
import pytest
from scipy import stats

from mgini.population import Exponential, Gamma
from mgini.simulate import (
    SimulationConfig,
    draw_sample,
    replicate_estimates,
    replicate_rng,
    run_simulation,
)

N = 100_000


@pytest.mark.parametrize(
    "dist, mean, var",
    [
        (Exponential(1.0), 1.0, 1.0),
        (Exponential(4.0), 0.25, 1 / 16),
        (Gamma(2.0, 1.0), 2.0, 2.0),
        (Gamma(0.3, 2.0), 0.15, 0.075),
        (Gamma(7.5, 0.5), 15.0, 30.0),
    ],
)
def test_draw_sample_moments(dist, mean, var):
    x = draw_sample(dist, N, np.random.default_rng(2024))
    assert np.all(np.isfinite(x)) and np.all(x >= 0.0)
    assert abs(x.mean() - mean) <= 4.0 * math.sqrt(var / N)
    assert x.var() == pytest.approx(var, rel=0.05)


@pytest.mark.parametrize("dist, frozen", [(Gamma(2.0, 1.0), stats.gamma(2.0)), (Gamma(0.5, 1.0), stats.gamma(0.5))])
def test_gamma_sampler_distribution(dist, frozen):
    x = draw_sample(dist, 20_000, np.random.default_rng(7))
    assert stats.kstest(x, frozen.cdf).pvalue > 1e-3


def test_draw_sample_deterministic():
    a = draw_sample(Gamma(2.0, 1.0), 50, replicate_rng(9, 50, 3))
    b = draw_sample(Gamma(2.0, 1.0), 50, replicate_rng(9, 50, 3))
    np.testing.assert_array_equal(a, b)
    c = draw_sample(Gamma(2.0, 1.0), 50, replicate_rng(9, 50, 4))
    assert not np.array_equal(a, c)


def test_replicates_independent_of_chunking():
    whole = replicate_estimates(Exponential(1.0), 10, 3, 5, 0, 40)
    parts = np.concatenate(
        [replicate_estimates(Exponential(1.0), 10, 3, 5, lo, hi) for lo, hi in [(0, 7), (7, 31), (31, 40)]]
    )
    np.testing.assert_array_equal(whole, parts)


def test_run_is_deterministic_across_workers():
    config = SimulationConfig(Gamma(2.0, 1.0), sizes=(5, 30), m=3, n_sim=3000, seed=11)
    serial = run_simulation(config)
    again = run_simulation(config)
    parallel = run_simulation(config, workers=3)
    assert serial == again == parallel


def test_single_replicate_mse_is_bias_squared():
    for dist in (Exponential(1.0), Gamma(2.0, 1.0)):
        (rec,) = run_simulation(SimulationConfig(dist, sizes=(5,), m=3, n_sim=1, seed=3))
        assert rec.mse == rec.bias**2
        assert rec.se_bias == 0.0


def test_records_satisfy_variance_decomposition():
    records = run_simulation(SimulationConfig(Exponential(1.0), m=3, n_sim=500, seed=1))
    assert [r.n for r in records] == [5, 10, 30, 50, 100]
    for r in records:
        assert r.mse >= r.bias**2 - 1e-15
        assert r.mse >= 0.0
        assert r.n_rejected == 0
        assert r.truth == pytest.approx(0.5)


def test_mse_decreases_with_n():
    for dist in (Exponential(1.0), Gamma(2.0, 1.0)):
        mse = [r.mse for r in run_simulation(SimulationConfig(dist, m=3, n_sim=1000, seed=4))]
        assert all(a > b for a, b in zip(mse, mse[1:]))


def test_gamma_truth_by_quadrature():
    (rec,) = run_simulation(SimulationConfig(Gamma(3.0, 1.0), sizes=(8,), m=4, n_sim=10, seed=0))
    assert 0.0 < rec.truth < 1.0


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(sizes=(2, 5), m=3),
        dict(sizes=()),
        dict(n_sim=0),
        dict(seed=-1),
        dict(seed=2**64),
        dict(m=1),
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        SimulationConfig(Exponential(1.0), **kwargs)
