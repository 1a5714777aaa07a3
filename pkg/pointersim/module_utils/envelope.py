# -*- coding: utf-8 -*-
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
Blackwell's Bet: two envelopes, an independent pointer and the switching rule.

The envelopes are labeled heads and tails. In a plain round the greater amount always
sits in the heads envelope; in a postdiction round a coin decides which label gets it,
and the label of the envelope finally kept is the guess of the toss.
"""

from collections import namedtuple

from pointersim.module_utils.core import (
    Geometry,
    InvalidParameterError,
    Mode,
    Outcome,
    direction_of,
    flip,
    make_record,
)
from pointersim.module_utils.pointer import gap_probabilities, sample_avoiding


class EnvelopePair(namedtuple('EnvelopePair', ['lesser', 'greater'])):

    __slots__ = ()

    def __new__(cls, lesser, greater):
        lesser, greater = float(lesser), float(greater)
        if not 0 < lesser < greater:
            raise InvalidParameterError("envelope amounts need 0 < lesser < greater, got {0} and {1}".format(lesser, greater))
        return super(EnvelopePair, cls).__new__(cls, lesser, greater)


def _other(label):
    return Outcome.TAILS if label is Outcome.HEADS else Outcome.HEADS


def analytic_success(dist, pair):
    """Success probability ``1 - (p + q) / 2`` of the switching rule."""
    gaps = gap_probabilities(dist, pair.lesser, pair.greater)
    return 1.0 - (gaps.p + gaps.q) / 2.0


def _keep_or_switch(pair, dist, greater_label, rng):
    opened = Outcome.HEADS if rng.uniform() < 0.5 else Outcome.TAILS
    observed = pair.greater if opened is greater_label else pair.lesser
    pointer = sample_avoiding(dist, rng, observed)
    return _other(opened) if pointer > observed else opened


def play_round(pair, dist, rng, seed_index=0):
    """One round of the game; the greater amount is in the heads envelope."""
    final = _keep_or_switch(pair, dist, Outcome.HEADS, rng)
    return make_record(
        'envelope',
        direction_of(Outcome.HEADS, Geometry.LINEAR),
        direction_of(final, Geometry.LINEAR),
        Mode.POSTDICTION,
        seed_index,
    )


def play_postdiction_round(pair, dist, coin, rng, seed_index=0):
    """The coin decides which labeled envelope receives the greater amount; the kept label is the guess."""
    outcome = flip(coin, rng)
    final = _keep_or_switch(pair, dist, outcome, rng)
    return make_record(
        'envelope-postdiction',
        direction_of(outcome, Geometry.LINEAR),
        direction_of(final, Geometry.LINEAR),
        Mode.POSTDICTION,
        seed_index,
    )
