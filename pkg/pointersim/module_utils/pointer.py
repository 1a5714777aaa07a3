# -*- coding: utf-8 -*-
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
Pointer distributions.

Continuous pointers live on the real line (station coordinates or amounts of money);
arc weights are the discrete law of a pointer on the circular track, of which only
the arc containing the pointer is ever observed.
"""

import bisect
import logging

from collections import namedtuple
from fractions import Fraction

from scipy import stats

from pointersim.module_utils.core import InvalidParameterError

log = logging.getLogger(__name__)

SUM_TOLERANCE = 1e-12

UNIFORM = 'uniform'
EXPONENTIAL = 'exponential'
GAUSSIAN = 'gaussian'

_SPEC_KINDS = {
    'uniform': (UNIFORM, 2),
    'exp': (EXPONENTIAL, 1),
    'normal': (GAUSSIAN, 2),
}


class ContinuousPointer(namedtuple('ContinuousPointer', ['kind', 'params'])):
    """
    A continuous pointer law: ``uniform`` (a, b), ``exponential`` (rate) or ``gaussian`` (mean, sd).
    """

    __slots__ = ()

    def __new__(cls, kind, params):
        params = tuple(float(value) for value in params)
        if kind == UNIFORM:
            if len(params) != 2 or not params[0] < params[1]:
                raise InvalidParameterError("uniform pointer: a < b required, got {0}".format(params))
        elif kind == EXPONENTIAL:
            if len(params) != 1 or not params[0] > 0:
                raise InvalidParameterError("exponential pointer: rate > 0 required, got {0}".format(params))
        elif kind == GAUSSIAN:
            if len(params) != 2 or not params[1] > 0:
                raise InvalidParameterError("gaussian pointer: sd > 0 required, got {0}".format(params))
        else:
            raise InvalidParameterError("unknown pointer kind '{0}'".format(kind))
        return super(ContinuousPointer, cls).__new__(cls, kind, params)

    @classmethod
    def uniform(cls, a, b):
        return cls(UNIFORM, (a, b))

    @classmethod
    def exponential(cls, rate):
        return cls(EXPONENTIAL, (rate,))

    @classmethod
    def gaussian(cls, mean, sd):
        return cls(GAUSSIAN, (mean, sd))

    def frozen(self):
        """The equivalent ``scipy.stats`` frozen distribution."""
        if self.kind == UNIFORM:
            a, b = self.params
            return stats.uniform(loc=a, scale=b - a)
        if self.kind == EXPONENTIAL:
            return stats.expon(scale=1.0 / self.params[0])
        return stats.norm(loc=self.params[0], scale=self.params[1])

    def to_spec(self):
        if self.kind == UNIFORM:
            return 'uniform:{0!r},{1!r}'.format(*self.params)
        if self.kind == EXPONENTIAL:
            return 'exp:{0!r}'.format(*self.params)
        return 'normal:{0!r},{1!r}'.format(*self.params)


class GapProbabilities(namedtuple('GapProbabilities', ['p', 'q', 'r'])):
    """
    Pointer below the lower value (p), above the upper value (q) and in the gap between them (r).
    """

    __slots__ = ()

    def __new__(cls, p, q, r):
        for name, value in (('p', p), ('q', q), ('r', r)):
            if not 0 <= value <= 1:
                raise InvalidParameterError("{0} must be a probability, got {1}".format(name, value))
        if abs(p + q + r - 1) > SUM_TOLERANCE:
            raise InvalidParameterError("p + q + r must equal 1, got {0}".format(p + q + r))
        return super(GapProbabilities, cls).__new__(cls, p, q, r)


class ArcWeights(object):
    """
    Probabilities of the pointer lying on each arc of the circular track.

    Weight ``k`` belongs to the arc between station ``k - 1`` and station ``k``; weight 0 is
    the arc between the last station and station 0. Rational weights stay exact.
    """

    __slots__ = ('_weights', '_cumulative')

    def __init__(self, weights):
        weights = tuple(weights)
        if len(weights) < 2:
            raise InvalidParameterError("at least two arc weights required, got {0}".format(len(weights)))
        for index, weight in enumerate(weights):
            if not weight > 0:
                raise InvalidParameterError("arc weight {0} must be positive, got {1}".format(index, weight))
        total = sum(weights)
        if all(isinstance(weight, (int, Fraction)) for weight in weights):
            if total != 1:
                raise InvalidParameterError("arc weights must sum to 1, got {0}".format(total))
        elif abs(total - 1) > SUM_TOLERANCE:
            raise InvalidParameterError("arc weights must sum to 1, got {0!r}".format(total))
        self._weights = weights
        cumulative = []
        running = 0.0
        for weight in weights:
            running += float(weight)
            cumulative.append(running)
        self._cumulative = cumulative

    @classmethod
    def uniform(cls, count):
        return cls([Fraction(1, count)] * count)

    @property
    def weights(self):
        return self._weights

    @property
    def is_exact(self):
        return all(isinstance(weight, (int, Fraction)) for weight in self._weights)

    def __len__(self):
        return len(self._weights)

    def __getitem__(self, index):
        return self._weights[index % len(self._weights)]

    def __iter__(self):
        return iter(self._weights)

    def __eq__(self, other):
        return isinstance(other, ArcWeights) and self._weights == other._weights

    def __hash__(self):
        return hash(self._weights)

    def __repr__(self):
        return 'ArcWeights({0!r})'.format(list(self._weights))

    def __reduce__(self):
        return (ArcWeights, (self._weights,))

    def probability_of(self, arcs):
        """Total weight of a collection of arc indices."""
        return sum(self._weights[index] for index in arcs)

    def to_spec(self):
        return 'arcs:' + ','.join(str(weight) for weight in self._weights)


def cdf(dist, x):
    """P(pointer <= x)."""
    return float(dist.frozen().cdf(x))


def sample(dist, rng):
    """Draw one pointer value from ``dist`` using the caller's stream."""
    kind, params = dist
    if kind == UNIFORM:
        return params[0] + (params[1] - params[0]) * rng.uniform()
    if kind == EXPONENTIAL:
        return rng.standard_exponential() / params[0]
    return params[0] + params[1] * rng.standard_normal()


def sample_avoiding(dist, rng, boundary):
    """Draw a pointer value, redrawing while it equals ``boundary`` exactly."""
    value = sample(dist, rng)
    while value == boundary:
        log.debug("pointer tie at %r, redrawing", boundary)
        value = sample(dist, rng)
    return value


def gap_probabilities(dist, lo, hi):
    if not lo < hi:
        raise InvalidParameterError("gap requires lo < hi, got lo={0}, hi={1}".format(lo, hi))
    frozen = dist.frozen()
    below = float(frozen.cdf(lo))
    upto = float(frozen.cdf(hi))
    return GapProbabilities(below, 1.0 - upto, upto - below)


def arc_sample(arcs, rng):
    """Index of the arc holding the pointer; positions inside an arc are never drawn."""
    cumulative = arcs._cumulative  # pylint: disable=protected-access
    return min(bisect.bisect_right(cumulative, rng.uniform() * cumulative[-1]), len(cumulative) - 1)


def _parse_numbers(text, spec):
    try:
        return [float(value) for value in text.split(',')] if text else []
    except ValueError:
        raise InvalidParameterError("pointer spec '{0}': parameters must be numbers".format(spec))


def parse_pointer_spec(spec):
    """
    Parse ``uniform:a,b``, ``exp:rate`` or ``normal:mean,sd`` into a :class:`ContinuousPointer`.
    """
    kind_name, sep, rest = spec.strip().partition(':')
    if not sep:
        raise InvalidParameterError("pointer spec '{0}' must look like kind:params".format(spec))
    if kind_name == 'arcs':
        raise InvalidParameterError("pointer spec '{0}' describes arc weights, a continuous pointer is required".format(spec))
    if kind_name not in _SPEC_KINDS:
        raise InvalidParameterError("pointer spec '{0}': kind must be one of {1}".format(spec, ', '.join(sorted(_SPEC_KINDS))))
    kind, arity = _SPEC_KINDS[kind_name]
    numbers = _parse_numbers(rest, spec)
    if len(numbers) != arity:
        raise InvalidParameterError("pointer spec '{0}': {1} expects {2} parameter(s), got {3}".format(spec, kind_name, arity, len(numbers)))
    if kind == UNIFORM and not numbers[0] < numbers[1]:
        raise InvalidParameterError("pointer spec '{0}': a < b required".format(spec))
    return ContinuousPointer(kind, numbers)


def parse_arcs_spec(spec, station_count):
    """
    Parse ``uniform`` or ``arcs:w0,w1,...,wN``; weights may be integers, decimals or ``a/b`` and stay exact.
    """
    spec = spec.strip()
    if spec == 'uniform':
        return ArcWeights.uniform(station_count)
    kind_name, sep, rest = spec.partition(':')
    if kind_name != 'arcs' or not sep:
        raise InvalidParameterError("arcs spec '{0}' must be 'uniform' or 'arcs:w0,...,wN'".format(spec))
    try:
        weights = [Fraction(value.strip()) for value in rest.split(',')]
    except (ValueError, ZeroDivisionError):
        raise InvalidParameterError("arcs spec '{0}': weights must be numbers or fractions".format(spec))
    if len(weights) != station_count:
        raise InvalidParameterError("arcs spec '{0}': expected {1} weights (one per station), got {2}".format(spec, station_count, len(weights)))
    return ArcWeights(weights)
