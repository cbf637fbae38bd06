import math
from itertools import combinations

import pytest

from dualdense import ConfigError, SynthConfig, apply_noise, generate


def _intra(inst):
    return {(u, v) for t in inst.truth for u, v in combinations(sorted(t), 2)}


@pytest.mark.parametrize("background", ["er01", "er02", "ba10"])
def test_defaults_counts_and_weights(background):
    inst = generate(SynthConfig(background=background, rng_seed=3))
    g = inst.graph
    assert g.num_nodes == 250
    assert len(inst.truth) == 5 and all(len(t) == 30 for t in inst.truth)
    assert all(not (a & b) for a, b in combinations(inst.truth, 2))
    intra = _intra(inst)
    assert len(intra) == 5 * 435
    for u, v in intra:
        assert g.has_edge(u, v) and 0.8 <= g.weight(u, v) <= 1.0
    for u, v, w in g.edges():
        if (u, v) not in intra:
            assert 0.0 <= w <= 0.5


def test_reproducible_and_seed_sensitive():
    a = generate(SynthConfig(background="ba10", rng_seed=11, noise=0.05))
    b = generate(SynthConfig(background="ba10", rng_seed=11, noise=0.05))
    c = generate(SynthConfig(background="ba10", rng_seed=12, noise=0.05))
    assert list(a.graph.edges()) == list(b.graph.edges())
    assert a.noise_pairs == b.noise_pairs
    assert list(a.graph.edges()) != list(c.graph.edges())


def test_er02_background_edge_count():
    pairs = 100 * 99 // 2
    sigma = math.sqrt(pairs * 0.2 * 0.8)
    counts = []
    for seed in range(20):
        g = generate(SynthConfig(background="er02", extra_edges=0, rng_seed=seed)).graph
        bg = sum(1 for u, v, _ in g.edges() if u >= 150)
        assert abs(bg - 990) <= 3 * sigma
        counts.append(bg)
    assert abs(sum(counts) / 20 - 990) <= 3 * sigma / math.sqrt(20)


def test_ba_background_edge_count_is_exact():
    g = generate(SynthConfig(background="ba10", extra_edges=0, rng_seed=4)).graph
    assert sum(1 for u, v, _ in g.edges() if u >= 150) == 45 + 90 * 10


def test_extra_edges_added():
    base = generate(SynthConfig(extra_edges=0, rng_seed=9)).graph
    full = generate(SynthConfig(extra_edges=50, rng_seed=9)).graph
    # same stream up to the extra edges, so exactly 50 more
    assert full.num_edges == base.num_edges + 50


def test_noise_zero_is_identity():
    inst = generate(SynthConfig(rng_seed=2))
    assert apply_noise(inst, 0.0, 5) is inst


@pytest.mark.parametrize("noise", [0.05, 0.10])
def test_noise_counts_and_ranges(noise):
    inst = generate(SynthConfig(rng_seed=6))
    before = inst.graph
    noisy = apply_noise(inst, noise, 6)
    after = noisy.graph
    assert len(noisy.noise_pairs) == math.floor(noise * before.num_edges)
    assert len(set(noisy.noise_pairs)) == len(noisy.noise_pairs)
    intra = _intra(inst)
    touched = set(noisy.noise_pairs)
    for u, v in touched:
        if (u, v) in intra:
            assert 0.0 <= after.weight(u, v) <= 0.5
        elif before.has_edge(u, v):
            assert after.weight(u, v) == before.weight(u, v)
        else:
            assert 0.8 <= after.weight(u, v) <= 1.0
    for u, v, w in before.edges():
        if (u, v) not in touched:
            assert after.weight(u, v) == w
    added = after.num_edges - before.num_edges
    assert added == sum(1 for p in touched if not before.has_edge(*p))
    assert noisy.truth == inst.truth


def test_generate_applies_configured_noise():
    inst = generate(SynthConfig(rng_seed=1, noise=0.1))
    assert inst.config.noise == 0.1 and inst.noise_pairs


@pytest.mark.parametrize("kw", [dict(noise=1.5), dict(noise=-0.1), dict(background="er03"),
                                dict(clique_size=0), dict(clique_weight_range=(0.9, 0.8)),
                                dict(background_weight_range=(0.0, 1.5)), dict(extra_edges=-1)])
def test_invalid_config(kw):
    with pytest.raises(ConfigError):
        SynthConfig(**kw)


def test_apply_noise_rejects_out_of_range():
    inst = generate(SynthConfig(num_cliques=1, clique_size=4, background_nodes=5, extra_edges=2))
    with pytest.raises(ConfigError):
        apply_noise(inst, 2.0, 0)
