# -*- coding: utf-8 -*-
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
The linear Random Railroad.

Stations sit at integer coordinates one unit apart, numbered west to east. A passenger
who knows the destination ``d`` but not the origin guesses the direction of travel by
comparing an independent pointer with the current station. Under the equiprobability
hypothesis the origin is ``d - 1`` or ``d + 1`` with probability 1/2 each, which this
module implements as a generative sampling step.
"""

import io
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
from pointersim.module_utils.pointer import cdf, gap_probabilities, sample, sample_avoiding

log = logging.getLogger(__name__)

_POSTDICTION_FAMILY = (Mode.POSTDICTION, Mode.PREDICTION_DESTINATION_FIRST)


class StationTieError(InvalidParameterError):
    """The probe station is the current station; the caller redraws."""


class LinearScenario(namedtuple('LinearScenario', ['destination', 'pointer', 'mode', 'origin', 'west_origin_probability', 'coin'])):
    """
    One linear experiment.

    Postdiction and destination-first prediction need ``destination``; origin-first
    prediction needs ``origin``. ``west_origin_probability`` weakens the equiprobability
    hypothesis when it differs from 1/2.
    """

    __slots__ = ()

    def __new__(cls, destination=None, pointer=None, mode=Mode.POSTDICTION, origin=None, west_origin_probability=0.5, coin=FAIR_COIN):
        if pointer is None:
            raise InvalidParameterError("a pointer distribution is required")
        if mode in _POSTDICTION_FAMILY and destination is None:
            raise InvalidParameterError("{0} needs a destination".format(mode.value))
        if mode is Mode.PREDICTION_ORIGIN_FIRST and origin is None:
            raise InvalidParameterError("{0} needs an origin".format(mode.value))
        if not 0.0 <= west_origin_probability <= 1.0:
            raise InvalidParameterError("west origin probability must lie in [0, 1], got {0}".format(west_origin_probability))
        return super(LinearScenario, cls).__new__(cls, destination, pointer, mode, origin, float(west_origin_probability), coin)

    @property
    def equiprobable(self):
        return self.west_origin_probability == 0.5

    def origin_law(self):
        """Pairs of (origin, probability) the scenario draws the current station from."""
        if self.mode is Mode.PREDICTION_ORIGIN_FIRST:
            return ((self.origin, 1.0),)
        return ((self.destination - 1, self.west_origin_probability), (self.destination + 1, 1.0 - self.west_origin_probability))


def _guess(pointer, current):
    return Direction.EAST if pointer > current else Direction.WEST


def analytic_linear_success(dist, d):
    """Success probability ``(1 + r) / 2`` where r is the pointer mass between ``d - 1`` and ``d + 1``."""
    return 0.5 * (1.0 + gap_probabilities(dist, d - 1, d + 1).r)


def analytic_biased_origin_success(dist, d, west_probability):
    """Exact success when the origin is ``d - 1`` with probability ``west_probability``."""
    return west_probability * (1.0 - cdf(dist, d - 1)) + (1.0 - west_probability) * cdf(dist, d + 1)


def enumerate_postdiction(scenario):
    """Exact success by summing over (origin, pointer side) cells."""
    total = 0.0
    for origin, weight in scenario.origin_law():
        below = cdf(scenario.pointer, origin)
        toward_destination_east = origin < scenario.destination
        total += weight * ((1.0 - below) if toward_destination_east else below)
    return total


def _draw_origin(scenario, rng):
    if rng.uniform() < scenario.west_origin_probability:
        return scenario.destination - 1
    return scenario.destination + 1


def simulate_postdiction(scenario, rng, seed_index=0):
    """The origin is drawn given the destination, then the pointer is compared with it."""
    origin = _draw_origin(scenario, rng)
    actual = Direction.EAST if origin < scenario.destination else Direction.WEST
    pointer = sample_avoiding(scenario.pointer, rng, origin)
    return make_record('rail-postdiction', actual, _guess(pointer, origin), Mode.POSTDICTION, seed_index)


def simulate_known_station(origin, dist, coin, rng, seed_index=0):
    """Negative control: the passenger knows the origin and nothing about the destination."""
    actual = direction_of(flip(coin, rng), Geometry.LINEAR)
    pointer = sample_avoiding(dist, rng, origin)
    return make_record('rail-control', actual, _guess(pointer, origin), Mode.POSTDICTION, seed_index)


def enumerate_known_station(origin, dist, coin):
    """
    Exact success from a known station: ``h (1 - F(o)) + (1 - h) F(o)``.

    A fair coin gives exactly 1/2 in rational arithmetic for every pointer.
    """
    below = cdf(dist, origin)
    if coin.is_fair:
        half = Fraction(1, 2)
        return half * (1 - Fraction(below)) + half * Fraction(below)
    return coin.heads_probability * (1.0 - below) + (1.0 - coin.heads_probability) * below


def simulate_prediction(scenario, rng, seed_index=0):
    """
    Guess before the direction is decided.

    Destination-first draws the pointer first and then the origin given the destination;
    origin-first fixes the origin, draws the pointer and then tosses the coin forward.
    """
    if scenario.mode is Mode.PREDICTION_DESTINATION_FIRST:
        pointer = sample(scenario.pointer, rng)
        origin = _draw_origin(scenario, rng)
        while pointer == origin:
            pointer = sample(scenario.pointer, rng)
        actual = Direction.EAST if origin < scenario.destination else Direction.WEST
        return make_record('rail-predict-dest-first', actual, _guess(pointer, origin), scenario.mode, seed_index)
    if scenario.mode is Mode.PREDICTION_ORIGIN_FIRST:
        origin = scenario.origin
        pointer = sample_avoiding(scenario.pointer, rng, origin)
        actual = direction_of(flip(scenario.coin, rng), Geometry.LINEAR)
        return make_record('rail-predict-origin-first', actual, _guess(pointer, origin), scenario.mode, seed_index)
    raise InvalidParameterError("simulate_prediction needs a prediction mode, got {0}".format(scenario.mode.value))


def enumerate_origin_first(scenario):
    return enumerate_known_station(scenario.origin, scenario.pointer, scenario.coin)


def claimed_prediction_success(scenario):
    """
    The success claimed for a prediction made before the toss: the postdiction value for
    the scenario's destination (or a destination next to its origin).
    """
    require_fair_coin(scenario.coin)
    destination = scenario.destination if scenario.destination is not None else scenario.origin - 1
    return analytic_linear_success(scenario.pointer, destination)


class Passenger(object):
    """A passenger compares a pointer with the current station and reports a direction."""

    def guess(self, current, pointer):
        return _guess(pointer, current)


def _draw_current(scenario, rng):
    if scenario.mode is Mode.PREDICTION_ORIGIN_FIRST:
        return scenario.origin
    return _draw_origin(scenario, rng)


def shared_pointer_agreements(trials, scenario, rng):
    """
    Number of trials in which two passengers sharing one pointer give the same guess.

    The second passenger looks before the direction is decided, the first one after.
    """
    first, second = Passenger(), Passenger()
    agreements = 0
    for _trial in range(trials):
        current = _draw_current(scenario, rng)
        pointer = sample_avoiding(scenario.pointer, rng, current)
        early = second.guess(current, pointer)
        if scenario.mode is Mode.PREDICTION_ORIGIN_FIRST:
            flip(scenario.coin, rng)
        if first.guess(current, pointer) is early:
            agreements += 1
    return agreements


def shared_pointer_equivalence(trials, scenario, rng):
    """True iff the two passengers agree in every one of ``trials`` trials."""
    return shared_pointer_agreements(trials, scenario, rng) == trials


def independent_pointer_disagreements(trials, scenario, rng):
    """Number of trials in which two passengers with their own pointers disagree."""
    first, second = Passenger(), Passenger()
    disagreements = 0
    for _trial in range(trials):
        current = _draw_current(scenario, rng)
        mine = sample_avoiding(scenario.pointer, rng, current)
        theirs = sample_avoiding(scenario.pointer, rng, current)
        if first.guess(current, mine) is not second.guess(current, theirs):
            disagreements += 1
    return disagreements


def independent_pointer_disagreement(trials, scenario, rng):
    if not trials:
        return 0.0
    return float(independent_pointer_disagreements(trials, scenario, rng)) / trials


def expected_disagreement(scenario):
    """``E[2 s (1 - s)]`` over the current station, with ``s = P(pointer east of it)``."""
    total = 0.0
    for origin, weight in scenario.origin_law():
        east = 1.0 - cdf(scenario.pointer, origin)
        total += weight * 2.0 * east * (1.0 - east)
    return total


class NamedTrack(object):
    """
    Stations known by name only.

    ``names`` is the alphabetical list handed to the passenger; the west-to-east order is
    held privately and only ever answered with an east/west verdict.
    """

    def __init__(self, west_to_east):
        west_to_east = tuple(west_to_east)
        if len(set(west_to_east)) != len(west_to_east):
            raise InvalidParameterError("station names must be distinct")
        self._west_to_east = west_to_east
        self._position = dict((name, index) for index, name in enumerate(west_to_east))
        self.names = tuple(sorted(west_to_east))

    def __len__(self):
        return len(self._west_to_east)

    def __reduce__(self):
        return (NamedTrack, (self._west_to_east,))

    def renamed(self, mapping):
        """A track with every name replaced through ``mapping`` and the same physical order."""
        return NamedTrack(mapping[name] for name in self._west_to_east)


def load_station_names(path):
    """Read station names, one per line in west-to-east order; blank lines and ``#`` comments are skipped."""
    with io.open(path, encoding='utf-8') as names_file:
        names = [line.strip() for line in names_file]
    return [name for name in names if name and not name.startswith('#')]


def direction_oracle(track, current, probe):
    """The side of ``current`` on which ``probe`` lies; positions are never revealed."""
    position = track._position  # pylint: disable=protected-access
    for name in (current, probe):
        if name not in position:
            raise InvalidParameterError("unknown station '{0}'".format(name))
    if current == probe:
        raise StationTieError("probe station equals the current station '{0}'".format(current))
    return Direction.EAST if position[probe] > position[current] else Direction.WEST


def _named_guess(track, current, rng):
    while True:
        probe = track.names[rng.below(len(track.names))]
        try:
            return direction_oracle(track, current, probe)
        except StationTieError:
            continue


def _require_named_track(track):
    if len(track) < 3:
        raise InvalidParameterError("a named track needs at least 3 stations, got {0}".format(len(track)))


def simulate_named_postdiction(track, rng, seed_index=0):
    """
    Postdiction on a named track.

    The destination is an interior station, the origin one of its neighbours with
    probability 1/2 each; the passenger types a station from the alphabetical list and
    guesses the oracle's verdict.
    """
    _require_named_track(track)
    stations = track._west_to_east  # pylint: disable=protected-access
    destination = 1 + rng.below(len(stations) - 2)
    from_west = rng.uniform() < 0.5
    current = stations[destination - 1] if from_west else stations[destination + 1]
    actual = Direction.EAST if from_west else Direction.WEST
    return make_record('rail-named', actual, _named_guess(track, current, rng), Mode.POSTDICTION, seed_index)


def enumerate_named_postdiction(track):
    """Exact success of :func:`simulate_named_postdiction` over (destination, origin, probe)."""
    _require_named_track(track)
    count = len(track)
    destination_weight = Fraction(1, count - 2)
    probe_weight = Fraction(1, count - 1)
    total = Fraction(0)
    for destination in range(1, count - 1):
        for origin, correct_east in ((destination - 1, True), (destination + 1, False)):
            hits = sum(1 for probe in range(count) if probe != origin and (probe > origin) == correct_east)
            total += destination_weight * Fraction(1, 2) * probe_weight * hits
    return total
