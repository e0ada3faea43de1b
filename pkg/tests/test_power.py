import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quotapower import (
    CountVector,
    DegenerateError,
    GameInstance,
    GameSizeError,
    IntegrityError,
    SwingProfile,
    VotingBody,
    available_backends,
    banzhaf_indices,
    banzhaf_value,
    brute_force_banzhaf,
    brute_force_pta,
    build_count_vector,
    multi_quota_profiles,
    pta,
    remove_player,
    swing_count,
)
from quotapower.power import add_player, render_fraction, swing_profile

BACKENDS = available_backends()


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def body(weights):
    return VotingBody.from_weights(weights)


def enumerate_counts(weights):
    counts = [0] * (sum(weights) + 1)
    for k in range(len(weights) + 1):
        for S in combinations(weights, k):
            counts[sum(S)] += 1
    return counts


def test_count_vector_binomial(backend):
    assert build_count_vector(body([1, 1]), backend).to_list() == [1, 2, 1]


def test_count_vector_enumerated(backend):
    assert enumerate_counts([3, 2, 2]) == [1, 0, 2, 1, 1, 2, 0, 1]
    c = build_count_vector(body([3, 2, 2]), backend)
    assert c.to_list() == [1, 0, 2, 1, 1, 2, 0, 1]
    assert c[4] == 1 and len(c) == 8 and c.total_weight == 7


def test_remove_player_examples(backend):
    c = build_count_vector(body([1, 1]), backend)
    assert remove_player(c, 1).to_list() == [1, 1]
    c = build_count_vector(body([3, 2, 2]), backend)
    r = remove_player(c, 3)
    assert r.to_list() == enumerate_counts([2, 2]) == [1, 0, 2, 0, 1]
    assert r.n_players == 2
    assert add_player(r, 3) == c


def test_remove_absent_weight_is_integrity_error(backend):
    c = build_count_vector(body([3, 2, 2]), backend)
    with pytest.raises(IntegrityError):
        remove_player(c, 1)
    with pytest.raises(IntegrityError):
        remove_player(c, 4)


def test_swing_count_examples(backend):
    for weights, T, expected in (([3, 2, 2], 4, (2, 2, 2)), ([5, 1, 1], 5, (4, 0, 0)), ([1, 1, 1], 3, (1, 1, 1))):
        c = build_count_vector(body(weights), backend)
        eta = tuple(swing_count(remove_player(c, w), w, T) for w in weights)
        assert eta == expected
        assert brute_force_banzhaf(GameInstance(body(weights), T)).eta == expected


def test_brute_force_examples():
    g = GameInstance(body([3, 2, 2]), 4)
    assert brute_force_banzhaf(g).eta == (2, 2, 2)
    assert brute_force_pta(g).pta == Fraction(4, 8)
    assert brute_force_pta(GameInstance(body([5, 1, 1]), 5)).pta == Fraction(4, 8)
    assert brute_force_banzhaf(GameInstance(body([1, 1, 1, 1]), 3)).eta == (3, 3, 3, 3)


def test_brute_force_size_limit():
    with pytest.raises(GameSizeError):
        brute_force_banzhaf(GameInstance(body([1] * 26), 13))


def test_banzhaf_value():
    assert banzhaf_value(4, 3) == 1
    assert banzhaf_value(2, 3) == Fraction(1, 2)
    assert banzhaf_value(0, 7) == 0


def test_banzhaf_indices():
    prof = banzhaf_indices(SwingProfile((2, 2, 2), 3, 4))
    assert prof.beta == (Fraction(1, 3),) * 3
    with pytest.raises(DegenerateError):
        banzhaf_indices(SwingProfile((0, 0), 2, 1))


def test_pta_unanimity(backend):
    b = body([3, 5, 7, 11])
    c = build_count_vector(b, backend)
    assert pta(b, b.total_votes, counts=c).pta == Fraction(1, 16)
    assert pta(b, 1, counts=c).pta == Fraction(15, 16)


def test_render_half_even():
    assert render_fraction(Fraction(1, 8), 2) == "0.12"
    assert render_fraction(Fraction(3, 8), 2) == "0.38"
    assert render_fraction(Fraction(-1, 3), 3) == "-0.333"
    assert render_fraction(Fraction(-1, 3000), 3) == "0.000"
    assert render_fraction(Fraction(23, 1), 4) == "23.0000"


def test_single_threshold_matches_multi(backend):
    b = body([9, 7, 4, 4, 1])
    (single,) = multi_quota_profiles(b, [13], backend=backend)
    many = multi_quota_profiles(b, list(range(1, b.total_votes + 1)), backend=backend)
    assert many[12] == single
    assert swing_profile(GameInstance(b, 13)) == single[0]


def test_random_games_multi_equals_brute_force(backend):
    rng = random.Random(12)
    for _ in range(25):
        weights = [rng.randint(1, 50) for _ in range(12)]
        b = body(weights)
        Ts = sorted(rng.sample(range(1, b.total_votes + 1), 5))
        res = multi_quota_profiles(b, Ts, backend=backend)
        for T, (sp, d) in zip(Ts, res):
            g = GameInstance(b, T)
            assert sp == brute_force_banzhaf(g)
            assert d == brute_force_pta(g)


def test_parallel_is_deterministic():
    rng = random.Random(3)
    b = body([rng.randint(1, 400) for _ in range(40)])
    Ts = list(range(b.total_votes // 2, b.total_votes, 97))
    assert multi_quota_profiles(b, Ts, jobs=1) == multi_quota_profiles(b, Ts, jobs=4)


def test_large_n_needs_several_limbs(backend):
    # 130 unit voters: counts are binomials C(130, k) > 2**64
    b = body([1] * 130)
    c = build_count_vector(b, backend)
    assert c[65] == 95067625827960698145584333020095113100
    assert c.total() == 2**130
    ((sp, d),) = multi_quota_profiles(b, [66], backend=backend)
    assert sp.eta == (c[65] * 65 // 130,) * 130  # C(129, 65)
    assert d.pta == Fraction(sum(c.to_list()[66:]), 2**130)


def test_backends_agree_on_count_vectors():
    if len(BACKENDS) < 2:
        pytest.skip("native backend not built")
    rng = random.Random(5)
    for _ in range(10):
        b = body([rng.randint(1, 300) for _ in range(rng.randint(1, 70))])
        native, python = (build_count_vector(b, name) for name in ("native", "python"))
        assert native.to_list() == python.to_list()
        assert native == python


games = st.lists(st.integers(1, 50), min_size=1, max_size=16).flatmap(
    lambda w: st.tuples(st.just(w), st.integers(1, sum(w)))
)


@settings(max_examples=60, deadline=None)
@given(games)
def test_oracle_equivalence_property(game):
    weights, T = game
    g = GameInstance(body(weights), T)
    for name in BACKENDS:
        ((sp, d),) = multi_quota_profiles(g.body, [T], backend=name)
        assert sp == brute_force_banzhaf(g)
        assert d == brute_force_pta(g)


@settings(max_examples=60, deadline=None)
@given(games)
def test_power_invariants(game):
    weights, T = game
    b = body(weights)
    n = len(weights)
    c = build_count_vector(b)
    assert c.total() == 2**n and c.is_palindrome() and c[0] == 1
    ((sp, d),) = multi_quota_profiles(b, [T], counts=c)
    for i in range(n):
        for j in range(n):
            if weights[i] >= weights[j]:
                assert sp.eta[i] >= sp.eta[j]
    W = sum(weights)
    for i, w in enumerate(weights):
        if w >= T and W - w < T:
            assert banzhaf_indices(sp).beta[i] == 1
        assert 0 <= sp.eta[i] <= 2 ** (n - 1)
    # null player iff no coalition sum of the others lies in [T - w, T - 1]
    for i, w in enumerate(weights):
        rest = remove_player(c, w).to_list()
        window = rest[max(0, T - w):T]
        assert (sp.eta[i] == 0) == (sum(window) == 0)
    if sp.total:
        assert sum(banzhaf_indices(sp).beta) == 1
    assert 0 < d.pta <= 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 40), min_size=1, max_size=12))
def test_pta_non_increasing(weights):
    b = body(weights)
    res = multi_quota_profiles(b, list(range(1, b.total_votes + 1)))
    c = build_count_vector(b).to_list()
    for T in range(1, b.total_votes):
        hi, lo = res[T - 1][1].pta, res[T][1].pta
        assert lo <= hi
        assert (lo < hi) == (c[T] > 0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 40), min_size=2, max_size=10), st.integers(1, 40))
def test_remove_add_round_trip(weights, extra):
    for name in BACKENDS:
        c = build_count_vector(body(weights + [extra]), name)
        assert add_player(remove_player(c, extra), extra) == c
        assert remove_player(c, extra) == build_count_vector(body(weights), name)


def test_count_vector_from_list():
    c = CountVector.from_list([1, 0, 2, 1, 1, 2, 0, 1], 3)
    assert remove_player(c, 3).to_list() == [1, 0, 2, 0, 1]
