import numpy as np
import pytest

from pointersim.module_utils.core import (
    FAIR_COIN,
    Coin,
    Direction,
    Geometry,
    InvalidParameterError,
    Mode,
    Outcome,
    RngStream,
    UnfairCoinError,
    direction_of,
    flip,
    make_record,
    outcome_of,
    require_fair_coin,
)


@pytest.mark.parametrize('heads_probability', [0, 1, -0.1, 1.5])
def test_coin_rejects_degenerate_probability(heads_probability):
    with pytest.raises(InvalidParameterError):
        Coin(heads_probability)


def test_fair_coin():
    assert FAIR_COIN.is_fair
    assert not Coin(0.7).is_fair
    require_fair_coin(FAIR_COIN)
    with pytest.raises(UnfairCoinError):
        require_fair_coin(Coin(0.7))


@pytest.mark.parametrize('outcome,geometry,direction', [
    (Outcome.HEADS, Geometry.LINEAR, Direction.EAST),
    (Outcome.TAILS, Geometry.LINEAR, Direction.WEST),
    (Outcome.HEADS, Geometry.CIRCULAR, Direction.CW),
    (Outcome.TAILS, Geometry.CIRCULAR, Direction.CCW),
])
def test_direction_of(outcome, geometry, direction):
    assert direction_of(outcome, geometry) is direction
    assert outcome_of(direction) is outcome


def test_make_record():
    record = make_record('rail-postdiction', Direction.WEST, Direction.WEST, Mode.POSTDICTION, 7)
    assert record.coin_outcome is Outcome.TAILS
    assert record.correct
    assert record.seed_index == 7
    assert not make_record('rail-postdiction', Direction.EAST, Direction.WEST, Mode.POSTDICTION, 0).correct


def test_stream_is_reproducible():
    first = RngStream(42, 3)
    second = RngStream(42, 3)
    assert [first.uniform() for _ in range(2000)] == [second.uniform() for _ in range(2000)]


def test_streams_differ_by_id_and_seed():
    base = [RngStream(42, 0).uniform() for _ in range(5)]
    assert base != [RngStream(42, 1).uniform() for _ in range(5)]
    assert base != [RngStream(43, 0).uniform() for _ in range(5)]


def test_streams_are_uncorrelated():
    first, second = RngStream(42, 0), RngStream(42, 1)
    draws = np.array([[first.uniform(), second.uniform()] for _ in range(10 ** 5)])
    assert abs(np.corrcoef(draws[:, 0], draws[:, 1])[0, 1]) < 0.01


def test_block_size_keeps_single_variate_sequence():
    assert [RngStream(5, 2, block_size=16).uniform() for _ in range(40)] == [RngStream(5, 2).uniform() for _ in range(40)]
    with pytest.raises(InvalidParameterError):
        RngStream(5, 2, block_size=0)


@pytest.mark.parametrize('seed,stream_id', [(-1, 0), (2 ** 64, 0), (0, -1)])
def test_stream_rejects_bad_keys(seed, stream_id):
    with pytest.raises(InvalidParameterError):
        RngStream(seed, stream_id)


def test_below_range():
    rng = RngStream(9)
    draws = [rng.below(4) for _ in range(4000)]
    assert set(draws) == {0, 1, 2, 3}


def test_flip_uses_one_uniform():
    rng = RngStream(1)
    reference = RngStream(1)
    flip(FAIR_COIN, rng)
    reference.uniform()
    assert rng.uniform() == reference.uniform()


def test_biased_flip_frequency():
    rng = RngStream(3)
    heads = sum(1 for _ in range(20000) if flip(Coin(0.8), rng) is Outcome.HEADS)
    assert abs(heads / 20000.0 - 0.8) < 0.02
