# -*- coding: utf-8 -*-
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
Shared domain types: coin, outcomes, directions, trial records and seeded random streams.
"""

import enum

from collections import namedtuple

import numpy as np


class SimulationError(Exception):
    """Base class for all errors raised by pointersim."""


class InvalidParameterError(SimulationError, ValueError):
    """A parameter violates the precondition of an operation."""


class UnfairCoinError(InvalidParameterError):
    """A closed-form calculator was handed a coin with heads probability other than 1/2."""


class ConfigError(SimulationError):
    """An experiment configuration is malformed; ``messages`` holds one entry per offending field."""

    def __init__(self, messages):
        if isinstance(messages, str):
            messages = [messages]
        self.messages = list(messages)
        super(ConfigError, self).__init__("; ".join(self.messages))


class Outcome(enum.Enum):
    HEADS = 'heads'
    TAILS = 'tails'


class Geometry(enum.Enum):
    LINEAR = 'linear'
    CIRCULAR = 'circular'


class Direction(enum.Enum):
    EAST = 'east'
    WEST = 'west'
    CW = 'cw'
    CCW = 'ccw'


class Mode(enum.Enum):
    POSTDICTION = 'postdiction'
    PREDICTION_DESTINATION_FIRST = 'predict-dest-first'
    PREDICTION_ORIGIN_FIRST = 'predict-origin-first'


_HEADS_DIRECTION = {
    Geometry.LINEAR: (Direction.EAST, Direction.WEST),
    Geometry.CIRCULAR: (Direction.CW, Direction.CCW),
}

_DIRECTION_OUTCOME = {
    Direction.EAST: Outcome.HEADS,
    Direction.CW: Outcome.HEADS,
    Direction.WEST: Outcome.TAILS,
    Direction.CCW: Outcome.TAILS,
}


class Coin(namedtuple('Coin', ['heads_probability'])):
    """
    A coin whose tosses decide the train's direction.

    Heads probability is any value strictly between 0 and 1; closed forms only accept 1/2.
    """

    __slots__ = ()

    def __new__(cls, heads_probability=0.5):
        heads_probability = float(heads_probability)
        if not 0.0 < heads_probability < 1.0:
            raise InvalidParameterError(
                "heads probability must lie strictly between 0 and 1, got {0}".format(heads_probability))
        return super(Coin, cls).__new__(cls, heads_probability)

    @property
    def is_fair(self):
        return self.heads_probability == 0.5


FAIR_COIN = Coin()


def require_fair_coin(coin):
    """Raise :class:`UnfairCoinError` unless ``coin`` is exactly fair."""
    if coin is not None and not coin.is_fair:
        raise UnfairCoinError(
            "closed-form values assume a fair coin, got heads probability {0}".format(coin.heads_probability))


TrialRecord = namedtuple('TrialRecord', [
    'scenario_id',
    'coin_outcome',
    'actual_direction',
    'guessed_direction',
    'correct',
    'mode',
    'seed_index',
])


def make_record(scenario_id, actual_direction, guessed_direction, mode, seed_index):
    """Build a :class:`TrialRecord`; the coin outcome is the preimage of the actual direction."""
    return TrialRecord(
        scenario_id,
        _DIRECTION_OUTCOME[actual_direction],
        actual_direction,
        guessed_direction,
        actual_direction is guessed_direction,
        mode,
        seed_index,
    )


class RngStream(object):
    """
    A reproducible stream of random draws keyed by ``(master_seed, stream_id)``.

    Streams with different ids are spawned from one ``numpy.random.SeedSequence`` and are
    statistically independent. Draws are served from per-variate blocks of ``block_size``,
    so the sequence only depends on the order of calls and on ``block_size``.
    """

    BLOCK_SIZE = 1024
    MAX_SEED = 2 ** 64

    def __init__(self, master_seed, stream_id=0, block_size=BLOCK_SIZE):
        if not 0 <= master_seed < self.MAX_SEED:
            raise InvalidParameterError("master seed must be a 64-bit non-negative integer, got {0}".format(master_seed))
        if stream_id < 0:
            raise InvalidParameterError("stream id must be non-negative, got {0}".format(stream_id))
        if block_size < 1:
            raise InvalidParameterError("block size must be >= 1, got {0}".format(block_size))
        self.master_seed = int(master_seed)
        self.stream_id = int(stream_id)
        self.block_size = int(block_size)
        sequence = np.random.SeedSequence(entropy=self.master_seed, spawn_key=(self.stream_id,))
        self._generator = np.random.Generator(np.random.PCG64(sequence))
        self._blocks = {}

    def _next(self, variate):
        block = self._blocks.get(variate)
        if block is None or block[1] >= len(block[0]):
            values = getattr(self._generator, variate)(self.block_size).tolist()
            block = [values, 0]
            self._blocks[variate] = block
        value = block[0][block[1]]
        block[1] += 1
        return value

    def uniform(self):
        """One draw from U[0, 1)."""
        return self._next('random')

    def standard_normal(self):
        return self._next('standard_normal')

    def standard_exponential(self):
        return self._next('standard_exponential')

    def below(self, n):
        """Uniform integer in ``range(n)`` from a single uniform draw."""
        return min(int(self.uniform() * n), n - 1)


def flip(coin, rng):
    """Toss ``coin`` consuming exactly one uniform draw."""
    return Outcome.HEADS if rng.uniform() < coin.heads_probability else Outcome.TAILS


def direction_of(outcome, geometry):
    """Heads maps to east on a line and to clockwise on a circle."""
    heads_direction, tails_direction = _HEADS_DIRECTION[geometry]
    return heads_direction if outcome is Outcome.HEADS else tails_direction


def outcome_of(direction):
    return _DIRECTION_OUTCOME[direction]
