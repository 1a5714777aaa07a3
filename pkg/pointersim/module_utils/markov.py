# -*- coding: utf-8 -*-
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
The finite track with reflecting barriers.

Stations are numbered ``1 .. N``; row and column ``i - 1`` of every matrix belong to
station ``i``. End stations move inward with probability 1, interior stations move to
either neighbour with probability 1/2.
"""

import bisect
import logging

import numpy as np

from scipy import linalg

from pointersim.module_utils.core import Direction, InvalidParameterError, Mode, make_record
from pointersim.module_utils.pointer import cdf, gap_probabilities, sample_avoiding

log = logging.getLogger(__name__)

MIN_STATIONS = 3
PARITY_TOLERANCE = 1e-14
PARITY_MAX_ITERATIONS = 200000


class ReflectingChain(object):

    def __init__(self, station_count):
        if station_count < MIN_STATIONS:
            raise InvalidParameterError("a reflecting chain needs N >= {0} stations, got {1}".format(MIN_STATIONS, station_count))
        self.station_count = station_count

    def __reduce__(self):
        return (ReflectingChain, (self.station_count,))

    def __repr__(self):
        return 'ReflectingChain({0})'.format(self.station_count)

    @property
    def stations(self):
        return range(1, self.station_count + 1)


def transition_matrix(chain):
    count = chain.station_count
    matrix = np.zeros((count, count))
    matrix[0, 1] = 1.0
    matrix[count - 1, count - 2] = 1.0
    for row in range(1, count - 1):
        matrix[row, row - 1] = 0.5
        matrix[row, row + 1] = 0.5
    return matrix


def _solve_stationary(matrix):
    count = matrix.shape[0]
    system = matrix.T - np.eye(count)
    system[-1, :] = 1.0
    rhs = np.zeros(count)
    rhs[-1] = 1.0
    return linalg.solve(system, rhs)


def stationary_distribution(chain):
    """Solve ``pi P = pi`` with ``sum(pi) = 1``; the last balance equation is replaced by the normalization."""
    return _solve_stationary(transition_matrix(chain))


def closed_form_stationary(chain):
    """``1 / (2N - 2)`` at both ends and ``1 / (N - 1)`` everywhere else."""
    count = chain.station_count
    values = np.full(count, 1.0 / (count - 1))
    values[0] = values[-1] = 1.0 / (2 * count - 2)
    return values


def parity_limits(chain, start=None):
    """
    Limits of ``v P^(2t)`` and ``v P^(2t+1)`` started from ``start`` (uniform by default).

    The chain has period 2, so the two limits differ. Their mean is the stationary
    distribution; each limit on its own equals it only when the start vector puts
    mass 1/2 on each parity class, which the uniform vector does for even N only.
    """
    matrix = transition_matrix(chain)
    two_step = matrix.dot(matrix)
    vector = np.full(chain.station_count, 1.0 / chain.station_count) if start is None else np.asarray(start, dtype=float)
    for _iteration in range(PARITY_MAX_ITERATIONS):
        following = vector.dot(two_step)
        if np.max(np.abs(following - vector)) < PARITY_TOLERANCE:
            vector = following
            break
        vector = following
    else:
        log.warning("parity iteration for N=%d did not settle in %d steps", chain.station_count, PARITY_MAX_ITERATIONS)
    return vector, vector.dot(matrix)


def cycle_transition_matrix(station_count):
    """Symmetric nearest-neighbour walk on a cycle of ``station_count`` stations."""
    if station_count < MIN_STATIONS:
        raise InvalidParameterError("a cycle needs at least {0} stations, got {1}".format(MIN_STATIONS, station_count))
    matrix = np.zeros((station_count, station_count))
    for row in range(station_count):
        matrix[row, (row - 1) % station_count] += 0.5
        matrix[row, (row + 1) % station_count] += 0.5
    return matrix


def cycle_stationary_distribution(station_count):
    return _solve_stationary(cycle_transition_matrix(station_count))


def _require_interior(chain, destination):
    if not 2 <= destination <= chain.station_count - 1:
        raise InvalidParameterError(
            "destination must satisfy 2 <= d <= {0}, got {1}; an end station has a single possible origin".format(
                chain.station_count - 1, destination))


def origin_posterior(chain, destination):
    """``(P(origin = d - 1 | d), P(origin = d + 1 | d))`` by one Bayes step from the stationary law."""
    _require_interior(chain, destination)
    pi = stationary_distribution(chain)
    matrix = transition_matrix(chain)
    west = pi[destination - 2] * matrix[destination - 2, destination - 1]
    east = pi[destination] * matrix[destination, destination - 1]
    total = west + east
    return float(west / total), float(east / total)


def wake_filter(chain, min_end_distance=3):
    """Destinations at least ``min_end_distance`` stations from either end."""
    if min_end_distance < 1:
        raise InvalidParameterError("minimum end distance must be >= 1, got {0}".format(min_end_distance))
    count = chain.station_count
    eligible = [d for d in chain.stations if min(d - 1, count - d) >= min_end_distance]
    if not eligible:
        raise InvalidParameterError("no destination of a {0}-station track is {1} stations from an end; N >= {2} required".format(
            count, min_end_distance, 2 * min_end_distance + 1))
    return eligible


class _StationaryWalk(object):
    """Draws (origin, destination) pairs: origin from the stationary law, then one step."""

    def __init__(self, chain):
        self.chain = chain
        self._cumulative = np.cumsum(stationary_distribution(chain)).tolist()

    def step(self, rng):
        count = self.chain.station_count
        origin = 1 + min(bisect.bisect_right(self._cumulative, rng.uniform() * self._cumulative[-1]), count - 1)
        move = rng.uniform()
        if origin == 1:
            return origin, 2
        if origin == count:
            return origin, count - 1
        return origin, origin - 1 if move < 0.5 else origin + 1


def simulate_origin_side(chain, destination, rng, seed_index=0):
    """
    A passenger who always answers East at ``destination``; the success rate estimates
    the posterior probability of the western origin.
    """
    _require_interior(chain, destination)
    walk = _StationaryWalk(chain)
    while True:
        origin, arrived = walk.step(rng)
        if arrived == destination:
            break
    actual = Direction.EAST if origin < destination else Direction.WEST
    return make_record('markov-posterior', actual, Direction.EAST, Mode.POSTDICTION, seed_index)


def simulate_wake_postdiction(chain, dist, rng, seed_index=0, min_end_distance=3):
    """
    The passenger sleeps through the walk and wakes only at eligible destinations, then
    guesses the direction of approach by comparing the pointer with the origin.
    """
    eligible = frozenset(wake_filter(chain, min_end_distance))
    walk = _StationaryWalk(chain)
    while True:
        origin, destination = walk.step(rng)
        if destination in eligible:
            break
    actual = Direction.EAST if origin < destination else Direction.WEST
    pointer = sample_avoiding(dist, rng, origin)
    guess = Direction.EAST if pointer > origin else Direction.WEST
    return make_record('markov-wake', actual, guess, Mode.POSTDICTION, seed_index)


def _wake_weights(chain, min_end_distance):
    pi = stationary_distribution(chain)
    eligible = wake_filter(chain, min_end_distance)
    total = sum(pi[d - 1] for d in eligible)
    return [(d, pi[d - 1] / total) for d in eligible]


def analytic_wake_success(chain, dist, min_end_distance=3):
    """Average of ``(1 + r_d) / 2`` over eligible destinations, weighted by arrival probability."""
    return float(sum(weight * 0.5 * (1.0 + gap_probabilities(dist, d - 1, d + 1).r)
                     for d, weight in _wake_weights(chain, min_end_distance)))


def exact_wake_success(chain, dist, min_end_distance=3):
    """As :func:`analytic_wake_success` but weighting the two origins by their exact posterior."""
    total = 0.0
    for d, weight in _wake_weights(chain, min_end_distance):
        west, east = origin_posterior(chain, d)
        total += weight * (west * (1.0 - cdf(dist, d - 1)) + east * cdf(dist, d + 1))
    return float(total)
