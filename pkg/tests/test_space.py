"""Poset-block space: ranking, weight, distance, text format."""

import random

import pytest

from conftest import SMALL_CONFIGS, make_config, random_vector
from ohb import (
    CapExceeded,
    SpaceConfig,
    UsageError,
    chain_distance,
    distance,
    format_vector,
    ideal_closure,
    parse_vector,
    pi_support,
    weight,
)
from ohb.space import (
    add_ranks,
    dist_ranks,
    distance_matrix_array,
    scale_ranks,
    sub_ranks,
    weight_array,
)


def test_config_shape_checks():
    with pytest.raises(UsageError):
        make_config(2, 2, 2, [[1, 1]])  # m rows required
    with pytest.raises(UsageError):
        make_config(2, 1, 2, [[1, 1, 1]])  # n entries per row
    with pytest.raises(UsageError):
        make_config(2, 1, 2, [[1, 0]])  # block dims are positive


def test_config_derived_sizes():
    cfg = make_config(2, 2, 2, [[2, 1], [1, 1]])
    assert cfg.N == 5
    assert cfg.size == 32
    cfg = make_config(3, 1, 2, [[1, 1]])
    assert cfg.size == 9


def test_rank_unrank_bijection():
    for cfg in SMALL_CONFIGS:
        seen = set()
        for r in range(cfg.size):
            v = cfg.unrank(r)
            assert cfg.rank(v) == r
            assert v.rank() == r
            seen.add(tuple(tuple(row) for row in v.blocks))
        assert len(seen) == cfg.size


def test_rank_block_one_one_least_significant():
    # incrementing the first block of the first chain increments the rank
    cfg = make_config(2, 2, 2, [[1, 1], [1, 1]])
    v0 = cfg.zero()
    v1 = cfg.vector([[(1,), (0,)], [(0,), (0,)]])
    assert cfg.rank(v0) == 0
    assert cfg.rank(v1) == 1


def test_weight_examples():
    # chain 1 < 2: the top nonzero level decides
    cfg = make_config(2, 1, 2, [[1, 1]])
    assert weight(parse_vector(cfg, "0,0")) == 0
    assert weight(parse_vector(cfg, "1,0")) == 1
    assert weight(parse_vector(cfg, "0,1")) == 2
    assert weight(parse_vector(cfg, "1,1")) == 2


def test_weight_sums_over_chains():
    cfg = make_config(2, 2, 2, [[1, 1], [1, 1]])
    assert weight(parse_vector(cfg, "1,0;0,1")) == 1 + 2
    assert weight(parse_vector(cfg, "0,0;1,1")) == 2


def test_block_width_does_not_change_weight():
    # any nonzero value in a block counts the whole level
    cfg = make_config(2, 1, 2, [[2, 1]])
    assert weight(parse_vector(cfg, "10,0")) == 1
    assert weight(parse_vector(cfg, "11,0")) == 1
    assert weight(parse_vector(cfg, "00,1")) == 2


def test_support_and_closure():
    cfg = make_config(2, 2, 2, [[1, 1], [1, 1]])
    v = parse_vector(cfg, "0,1;0,0")
    assert pi_support(v) == frozenset({(1, 2)})
    assert ideal_closure(pi_support(v), cfg.m, cfg.n) == frozenset({(1, 1), (1, 2)})
    assert weight(v) == 2


def test_distance_is_weight_of_difference():
    rng = random.Random(11)
    for cfg in SMALL_CONFIGS:
        for _ in range(50):
            u = random_vector(cfg, rng)
            v = random_vector(cfg, rng)
            assert distance(u, v) == weight(u - v)
            assert distance(u, v) == weight(v - u)


def test_metric_axioms_exhaustive_small():
    cfg = make_config(2, 2, 2, [[1, 1], [1, 1]])
    vecs = list(cfg.all_vectors())
    for u in vecs:
        assert distance(u, u) == 0
        for v in vecs:
            d = distance(u, v)
            assert d == distance(v, u)
            assert (d == 0) == (u == v)


def test_distance_sums_chain_distances():
    rng = random.Random(12)
    cfg = make_config(2, 2, 2, [[2, 1], [1, 1]])
    for _ in range(100):
        u = random_vector(cfg, rng)
        v = random_vector(cfg, rng)
        total = sum(
            chain_distance(cfg.row_ranks(u, i), cfg.row_ranks(v, i)) for i in range(cfg.m)
        )
        assert distance(u, v) == total


def test_chain_distance_values():
    assert chain_distance((0, 0), (0, 0)) == 0
    assert chain_distance((1, 0), (0, 0)) == 1
    assert chain_distance((1, 1), (1, 0)) == 2
    assert chain_distance((1, 1), (0, 1)) == 1


def test_translation_invariance():
    rng = random.Random(13)
    cfg = make_config(3, 1, 2, [[1, 1]])
    for _ in range(100):
        u = random_vector(cfg, rng)
        v = random_vector(cfg, rng)
        w = random_vector(cfg, rng)
        assert distance(u + w, v + w) == distance(u, v)


def test_vector_arithmetic():
    cfg = make_config(3, 1, 2, [[1, 1]])
    u = parse_vector(cfg, "1,2")
    v = parse_vector(cfg, "2,2")
    assert format_vector(u + v) == "0,1"
    assert format_vector(u - u) == "0,0"
    assert (u - u).is_zero()
    assert format_vector(-u) == "2,1"
    assert format_vector(u.scale(2)) == "2,1"


def test_text_format_round_trip():
    cfg = make_config(2, 2, 2, [[2, 1], [2, 1]])
    s = "10,0;01,1"
    assert format_vector(parse_vector(cfg, s)) == s
    for r in range(cfg.size):
        v = cfg.unrank(r)
        assert parse_vector(cfg, format_vector(v)) == v


def test_parse_vector_errors():
    cfg = make_config(2, 2, 2, [[1, 1], [1, 1]])
    with pytest.raises(UsageError):
        parse_vector(cfg, "0,1")  # one chain missing
    with pytest.raises(UsageError):
        parse_vector(cfg, "0,1;1")  # level missing
    with pytest.raises(UsageError):
        parse_vector(cfg, "0,2;1,0")  # digit out of field
    with pytest.raises(UsageError):
        parse_vector(cfg, "00,1;1,0")  # block width 1, two digits


def test_vectorized_ops_match_vector_ops():
    import numpy as np

    rng = random.Random(14)
    for cfg in SMALL_CONFIGS:
        ranks = np.array([rng.randrange(cfg.size) for _ in range(20)], dtype=np.int64)
        other = np.array([rng.randrange(cfg.size) for _ in range(20)], dtype=np.int64)
        summed = add_ranks(cfg, ranks, other)
        diffed = sub_ranks(cfg, ranks, other)
        for a, b, s, d in zip(ranks, other, summed, diffed):
            u, v = cfg.unrank(int(a)), cfg.unrank(int(b))
            assert cfg.rank(u + v) == int(s)
            assert cfg.rank(u - v) == int(d)
        for c in range(cfg.q):
            scaled = scale_ranks(cfg, c, ranks)
            for a, s in zip(ranks, scaled):
                assert cfg.rank(cfg.unrank(int(a)).scale(c)) == int(s)
        wts = weight_array(cfg)
        for r in range(cfg.size):
            assert int(wts[r]) == weight(cfg.unrank(r))


def test_distance_matrix_array_consistency():
    cfg = make_config(2, 1, 2, [[2, 1]])
    D = distance_matrix_array(cfg)
    assert D.shape == (8, 8)
    for a in range(8):
        for b in range(8):
            assert int(D[a, b]) == distance(cfg.unrank(a), cfg.unrank(b))
            assert int(D[a, b]) == dist_ranks(cfg, a, b)


def test_materialization_guard():
    cfg = make_config(2, 1, 1, [[24]])  # 2^24 points
    with pytest.raises(CapExceeded):
        cfg.check_materialize()
    with pytest.raises(CapExceeded):
        list(cfg.all_vectors())


def test_config_json_round_trip():
    for cfg in SMALL_CONFIGS:
        doc = cfg.to_json()
        again = SpaceConfig.from_json(doc)
        assert again == cfg
    with pytest.raises(UsageError):
        SpaceConfig.from_json({"m": 1, "n": 1, "pi": [[1]]})
