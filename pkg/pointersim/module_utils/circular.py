# -*- coding: utf-8 -*-
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
The circular track.

Stations are indexed ``0 .. n - 1`` clockwise and arc ``j`` lies between station ``j - 1``
and station ``j``. The passenger guesses clockwise iff the pointer lies on the clockwise
arc from the current station to a reference station (RS).
"""

import logging

from collections import namedtuple
from fractions import Fraction

from pointersim.module_utils.core import (
    FAIR_COIN,
    Direction,
    Geometry,
    InvalidParameterError,
    Mode,
    direction_of,
    flip,
    make_record,
    require_fair_coin,
)
from pointersim.module_utils.pointer import ArcWeights, arc_sample

log = logging.getLogger(__name__)

MIN_TRACK_STATIONS = 3
MIN_REFERENCE_STATIONS = 5
MAX_ENUMERATION_STATIONS = 64

OPPOSITE = 'opposite'
FIXED = 'fixed'


class CircularTrack(object):
    """
    A circular track with ``station_count`` stations and one arc weight per station.

    Arc weights default to uniform. ``names`` optionally labels the stations.
    """

    def __init__(self, station_count, arcs=None, names=None):
        if station_count < MIN_TRACK_STATIONS:
            raise InvalidParameterError("stationCount >= {0} required, got {1}".format(MIN_TRACK_STATIONS, station_count))
        if arcs is None:
            arcs = ArcWeights.uniform(station_count)
        elif not isinstance(arcs, ArcWeights):
            arcs = ArcWeights(arcs)
        if len(arcs) != station_count:
            raise InvalidParameterError("expected {0} arc weights, got {1}".format(station_count, len(arcs)))
        if names is not None:
            names = tuple(names)
            if len(names) != station_count or len(set(names)) != station_count:
                raise InvalidParameterError("expected {0} distinct station names".format(station_count))
        self.station_count = station_count
        self.arcs = arcs
        self.names = names

    def __reduce__(self):
        return (CircularTrack, (self.station_count, self.arcs, self.names))

    def __repr__(self):
        return 'CircularTrack({0}, {1!r})'.format(self.station_count, self.arcs)


class RsPolicy(namedtuple('RsPolicy', ['kind', 'station'])):
    """Where the reference station sits: opposite the passenger, or at a fixed station."""

    __slots__ = ()

    def __new__(cls, kind, station=None):
        if kind == OPPOSITE:
            station = None
        elif kind == FIXED:
            if station is None or station < 0:
                raise InvalidParameterError("a fixed reference station needs a non-negative index, got {0}".format(station))
        else:
            raise InvalidParameterError("unknown reference station policy '{0}'".format(kind))
        return super(RsPolicy, cls).__new__(cls, kind, station)

    @classmethod
    def opposite(cls):
        return cls(OPPOSITE)

    @classmethod
    def fixed(cls, station):
        return cls(FIXED, station)

    def to_spec(self):
        if self.kind == OPPOSITE:
            return OPPOSITE
        return '{0}:{1}'.format(FIXED, self.station)


def parse_rs_policy(spec):
    """Parse ``opposite`` or ``fixed:<index>``."""
    spec = spec.strip()
    if spec == OPPOSITE:
        return RsPolicy.opposite()
    kind, sep, station = spec.partition(':')
    if kind != FIXED or not sep:
        raise InvalidParameterError("reference station policy '{0}' must be 'opposite' or 'fixed:<index>'".format(spec))
    try:
        return RsPolicy.fixed(int(station))
    except ValueError:
        raise InvalidParameterError("reference station policy '{0}': index must be an integer".format(spec))


def choose_reference_station(origin, station_count):
    if station_count < MIN_REFERENCE_STATIONS:
        raise InvalidParameterError("stationCount >= {0} required, got {1}".format(MIN_REFERENCE_STATIONS, station_count))
    return (origin + station_count // 2) % station_count


def reference_station_for(policy, origin, station_count):
    """
    The RS used for a passenger at ``origin``.

    A fixed RS that coincides with the origin is replaced by the diametric station for
    that trial.
    """
    if policy.kind == OPPOSITE:
        return choose_reference_station(origin, station_count)
    if policy.station >= station_count:
        raise InvalidParameterError("fixed reference station {0} outside 0..{1}".format(policy.station, station_count - 1))
    if policy.station == origin:
        return (origin + station_count // 2) % station_count
    return policy.station


def clockwise_arc_set(start, end, station_count):
    """Arcs crossed moving clockwise from ``start`` to ``end``: ``start + 1, ..., end`` modulo the station count."""
    if start == end:
        raise InvalidParameterError("clockwise arc set needs distinct stations, got {0} twice".format(start))
    length = (end - start) % station_count
    return frozenset((start + step) % station_count for step in range(1, length + 1))


def guess_direction(origin, rs, pointer_arc, station_count):
    if rs == origin:
        raise InvalidParameterError("reference station must differ from the origin {0}".format(origin))
    if pointer_arc in clockwise_arc_set(origin, rs, station_count):
        return Direction.CW
    return Direction.CCW


def _minor_arc(k, station_count):
    return frozenset(((k - 1) % station_count, k % station_count, (k + 1) % station_count))


def claimed_conditional_formula(track, k):
    """``(1 + p_k + p_{k+1}) / 2`` without checking where the RS sits."""
    return Fraction(1, 2) * (1 + track.arcs[k] + track.arcs[k + 1])


def claimed_conditional_success(track, k, rs, coin=FAIR_COIN):
    """The per-destination success for an RS outside the minor arc ``k - 1, k, k + 1``."""
    require_fair_coin(coin)
    if rs % track.station_count in _minor_arc(k, track.station_count):
        raise InvalidParameterError(
            "reference station {0} lies inside the minor arc around destination {1}".format(rs, k))
    return claimed_conditional_formula(track, k)


def claimed_average_success(track, coin=FAIR_COIN):
    """``1/2 + 1/n``; the arc weights cancel out of the average."""
    require_fair_coin(coin)
    return Fraction(1, 2) + Fraction(1, track.station_count)


def simulate_forward(track, policy, rng, seed_index=0, coin=FAIR_COIN):
    """
    The train sits at a uniform station, the passenger guesses from the pointer arc,
    then the coin decides the direction.
    """
    count = track.station_count
    origin = rng.below(count)
    rs = reference_station_for(policy, origin, count)
    guess = guess_direction(origin, rs, arc_sample(track.arcs, rng), count)
    actual = direction_of(flip(coin, rng), Geometry.CIRCULAR)
    return make_record('circular-forward', actual, guess, Mode.POSTDICTION, seed_index)


def simulate_given_destination(track, k, policy, rng, seed_index=0, coin=FAIR_COIN):
    """
    Destination ``k`` is announced; the origin is ``k - 1`` (clockwise approach) with the
    coin's heads probability and ``k + 1`` otherwise.
    """
    count = track.station_count
    actual = direction_of(flip(coin, rng), Geometry.CIRCULAR)
    origin = (k - 1) % count if actual is Direction.CW else (k + 1) % count
    rs = reference_station_for(policy, origin, count)
    guess = guess_direction(origin, rs, arc_sample(track.arcs, rng), count)
    return make_record('circular-conditional', actual, guess, Mode.POSTDICTION, seed_index)


def _require_enumerable(track):
    if track.station_count > MAX_ENUMERATION_STATIONS:
        raise InvalidParameterError("enumeration supports at most {0} stations, got {1}".format(
            MAX_ENUMERATION_STATIONS, track.station_count))


def _direction_weights(coin):
    if coin.is_fair:
        return ((Direction.CW, Fraction(1, 2)), (Direction.CCW, Fraction(1, 2)))
    return ((Direction.CW, coin.heads_probability), (Direction.CCW, 1.0 - coin.heads_probability))


def _success_from(track, policy, origin, direction):
    count = track.station_count
    rs = reference_station_for(policy, origin, count)
    clockwise = track.arcs.probability_of(clockwise_arc_set(origin, rs, count))
    return clockwise if direction is Direction.CW else 1 - clockwise


def enumerate_exact(track, policy, coin=FAIR_COIN):
    """
    Exact success of :func:`simulate_forward` summed over (origin, direction, pointer arc).

    Rational arc weights and a fair coin give a :class:`~fractions.Fraction`.
    """
    _require_enumerable(track)
    origin_weight = Fraction(1, track.station_count)
    total = Fraction(0)
    for origin in range(track.station_count):
        for direction, weight in _direction_weights(coin):
            total += origin_weight * weight * _success_from(track, policy, origin, direction)
    return total


def conditional_success_given_destination(track, k, policy, coin=FAIR_COIN):
    """P(correct | destination = k) under the forward model."""
    _require_enumerable(track)
    count = track.station_count
    k %= count
    total = Fraction(0)
    for direction, weight in _direction_weights(coin):
        origin = (k - 1) % count if direction is Direction.CW else (k + 1) % count
        total += weight * _success_from(track, policy, origin, direction)
    return total


def destination_probability(track, k):
    """P(destination = k); uniform origins make it ``1/n`` for any coin."""
    return Fraction(1, track.station_count)


def valid_fixed_destinations(track, rs):
    """Destinations whose minor arc leaves ``rs`` outside."""
    return [k for k in range(track.station_count) if rs not in _minor_arc(k, track.station_count)]
