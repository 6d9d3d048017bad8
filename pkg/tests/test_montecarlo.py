import math

import numpy as np
import pytest

from hamming_cutoff import (
    ParameterError,
    ResourceBudgetError,
    SimConfig,
    empirical_tv,
    kstep_oracle,
    make_scheme,
    simulate,
    simulate_literal,
)


def test_k0_all_mass_at_basepoint():
    cfg = SimConfig(make_scheme(2, 3), k=0, walks=500, seed=1)
    res = simulate(cfg)
    assert list(res.counts) == [500, 0, 0]


def test_first_step_always_leaves_basepoint():
    cfg = SimConfig(make_scheme(2, 3), k=1, walks=10 ** 4, seed=3)
    res = simulate(cfg)
    assert list(res.counts) == [0, 10 ** 4, 0]
    assert res.point_estimate.mass[1] == 1.0


def test_two_step_frequencies_within_four_sigma():
    walks = 10 ** 6
    cfg = SimConfig(make_scheme(2, 3), k=2, walks=walks, seed=42)
    res = simulate(cfg)
    exact = [0.25, 0.25, 0.5]
    for l in range(3):
        sigma = math.sqrt(exact[l] * (1 - exact[l]) / walks)
        assert abs(res.counts[l] / walks - exact[l]) < 4 * sigma


def test_determinism_across_stream_counts():
    p = make_scheme(4, 3)
    base = simulate(SimConfig(p, k=7, walks=200_000, seed=9, streams=1))
    for streams in (2, 4, 7):
        again = simulate(SimConfig(p, k=7, walks=200_000, seed=9, streams=streams))
        assert np.array_equal(base.counts, again.counts)


def test_seed_sensitivity():
    p = make_scheme(4, 3)
    a = simulate(SimConfig(p, k=5, walks=5000, seed=1))
    b = simulate(SimConfig(p, k=5, walks=5000, seed=2))
    assert not np.array_equal(a.counts, b.counts)


def test_counts_sum_and_stderr_shape():
    cfg = SimConfig(make_scheme(5, 3), k=4, walks=3000, seed=11)
    res = simulate(cfg)
    assert int(res.counts.sum()) == 3000
    assert res.stderr.shape == (6,)
    assert np.all(res.stderr >= 0)


def test_literal_graph_sampler_cross_check():
    # same law as the radial sampler, checked against exact masses
    p = make_scheme(2, 3)
    walks = 200_000
    exact = [float(v) for v in kstep_oracle(p, 2).mass]
    res = simulate_literal(SimConfig(p, k=2, walks=walks, seed=5))
    for l in range(3):
        sigma = math.sqrt(exact[l] * (1 - exact[l]) / walks)
        assert abs(res.counts[l] / walks - exact[l]) < 5 * sigma


def test_literal_sampler_budget():
    with pytest.raises(ResourceBudgetError):
        simulate_literal(SimConfig(make_scheme(20, 3), k=1, walks=10, seed=0))


def test_empirical_tv_k0_exact():
    cfg = SimConfig(make_scheme(2, 3), k=0, walks=1000, seed=0)
    out = empirical_tv(cfg)
    assert out.estimate == pytest.approx(1 - 1 / 9, abs=1e-15)
    assert "bias" in out.note


def test_empirical_tv_converges_to_exact():
    from hamming_cutoff import tv_distance, uniform

    p = make_scheme(2, 3)
    exact = float(tv_distance(kstep_oracle(p, 2), uniform(p)))
    errors = []
    for walks in (10 ** 4, 10 ** 5, 10 ** 6):
        est = empirical_tv(SimConfig(p, k=2, walks=walks, seed=2024)).estimate
        errors.append(abs(est - exact))
    assert errors[2] < errors[1] < errors[0]
    assert errors[2] < 2e-3


def test_draw_budget_rejected_upfront():
    cfg = SimConfig(make_scheme(3, 3), k=10 ** 6, walks=10 ** 5, seed=0)
    with pytest.raises(ResourceBudgetError):
        simulate(cfg)


def test_config_validation():
    p = make_scheme(2, 3)
    with pytest.raises(ParameterError):
        SimConfig(p, k=-1, walks=10, seed=0)
    with pytest.raises(ParameterError):
        SimConfig(p, k=1, walks=0, seed=0)
    with pytest.raises(ParameterError):
        SimConfig(p, k=1, walks=10, seed=2 ** 64)
