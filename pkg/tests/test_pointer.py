import random

from fractions import Fraction

import pytest

from scipy import stats

from pointersim.module_utils.core import InvalidParameterError, RngStream
from pointersim.module_utils.pointer import (
    ArcWeights,
    ContinuousPointer,
    GapProbabilities,
    arc_sample,
    cdf,
    gap_probabilities,
    parse_arcs_spec,
    parse_pointer_spec,
    sample,
    sample_avoiding,
)


@pytest.mark.parametrize('spec,kind,params', [
    ('uniform:0,3', 'uniform', (0.0, 3.0)),
    ('exp:0.5', 'exponential', (0.5,)),
    ('normal:4,2', 'gaussian', (4.0, 2.0)),
])
def test_parse_pointer_spec(spec, kind, params):
    dist = parse_pointer_spec(spec)
    assert dist.kind == kind
    assert dist.params == params
    assert parse_pointer_spec(dist.to_spec()) == dist


@pytest.mark.parametrize('spec,message', [
    ('uniform:3,0', 'a < b required'),
    ('uniform:1,1', 'a < b required'),
    ('exp:0', 'rate > 0'),
    ('normal:0,-1', 'sd > 0'),
    ('cauchy:0,1', 'kind must be one of'),
    ('uniform:0', 'expects 2'),
    ('uniform:a,b', 'must be numbers'),
    ('arcs:1/2,1/2', 'continuous pointer is required'),
    ('uniform', 'kind:params'),
])
def test_parse_pointer_spec_errors(spec, message):
    with pytest.raises(InvalidParameterError) as excinfo:
        parse_pointer_spec(spec)
    assert message in str(excinfo.value)


def test_envelope_gap_probabilities():
    gaps = gap_probabilities(ContinuousPointer.uniform(0, 3), 1, 2)
    assert gaps.p == pytest.approx(1 / 3.0)
    assert gaps.q == pytest.approx(1 / 3.0)
    assert gaps.r == pytest.approx(1 / 3.0)


def test_gap_probabilities_rejects_reversed_bounds():
    with pytest.raises(InvalidParameterError):
        gap_probabilities(ContinuousPointer.uniform(0, 3), 2, 2)


def test_exponential_gap():
    gaps = gap_probabilities(ContinuousPointer.exponential(1), 1, 2)
    assert gaps.r == pytest.approx(0.36788 - 0.13534, abs=1e-4)


def test_gap_sum_is_checked():
    with pytest.raises(InvalidParameterError):
        GapProbabilities(0.5, 0.5, 0.5)


def test_cdf_matches_uniform():
    assert cdf(ContinuousPointer.uniform(0, 10), 4) == pytest.approx(0.4)


@pytest.mark.parametrize('dist', [
    ContinuousPointer.uniform(-1, 1),
    ContinuousPointer.exponential(2),
    ContinuousPointer.gaussian(0, 1),
])
def test_sample_mean(dist):
    rng = RngStream(21)
    values = [sample(dist, rng) for _ in range(20000)]
    assert sum(values) / len(values) == pytest.approx(dist.frozen().mean(), abs=0.03)


@pytest.mark.parametrize('dist', [
    ContinuousPointer.uniform(-1, 1),
    ContinuousPointer.exponential(2),
    ContinuousPointer.gaussian(0, 1),
])
def test_sample_follows_the_distribution(dist):
    rng = RngStream(22)
    values = [sample(dist, rng) for _ in range(10 ** 5)]
    assert stats.kstest(values, dist.frozen().cdf).statistic <= 0.01


@pytest.mark.parametrize('dist', [
    ContinuousPointer.uniform(-1, 1),
    ContinuousPointer.exponential(2),
    ContinuousPointer.gaussian(0, 1),
])
def test_cdf_is_monotone(dist):
    chooser = random.Random(13)
    for _ in range(1000):
        low, high = sorted(chooser.uniform(-5, 5) for _ in range(2))
        assert 0.0 <= cdf(dist, low) <= cdf(dist, high) <= 1.0


def test_sample_avoiding_never_returns_boundary():
    rng = RngStream(0)
    assert all(sample_avoiding(ContinuousPointer.uniform(0, 1), rng, 0.5) != 0.5 for _ in range(1000))


def test_arc_weights_validation():
    with pytest.raises(InvalidParameterError):
        ArcWeights([Fraction(1, 2), Fraction(1, 3)])
    with pytest.raises(InvalidParameterError):
        ArcWeights([Fraction(3, 2), Fraction(-1, 2)])
    with pytest.raises(InvalidParameterError):
        ArcWeights([1])
    assert ArcWeights([0.25, 0.25, 0.5]).weights == (0.25, 0.25, 0.5)


def test_arc_weights_uniform_is_exact():
    arcs = ArcWeights.uniform(4)
    assert arcs.is_exact
    assert arcs.probability_of([0, 1, 2, 3]) == 1
    assert arcs[5] == Fraction(1, 4)


def test_arc_sample_frequencies():
    arcs = ArcWeights([Fraction(1, 10), Fraction(2, 10), Fraction(7, 10)])
    rng = RngStream(4)
    counts = [0, 0, 0]
    for _ in range(30000):
        counts[arc_sample(arcs, rng)] += 1
    assert counts[2] / 30000.0 == pytest.approx(0.7, abs=0.015)
    assert counts[0] / 30000.0 == pytest.approx(0.1, abs=0.015)


def test_arc_sample_concentrates_on_a_heavy_arc():
    epsilon = Fraction(1, 10 ** 6)
    arcs = ArcWeights([1 - epsilon, epsilon / 2, epsilon / 2])
    rng = RngStream(6)
    draws = [arc_sample(arcs, rng) for _ in range(10 ** 5)]
    assert draws.count(0) / float(len(draws)) > 0.999


@pytest.mark.parametrize('count', [2, 5, 16])
def test_arc_sample_stays_in_range(count):
    chooser = random.Random(count)
    raw = [chooser.randint(1, 20) for _ in range(count)]
    arcs = ArcWeights([Fraction(value, sum(raw)) for value in raw])
    rng = RngStream(count)
    assert {arc_sample(arcs, rng) for _ in range(20000)} == set(range(count))


def test_parse_arcs_spec():
    assert parse_arcs_spec('uniform', 5) == ArcWeights.uniform(5)
    arcs = parse_arcs_spec('arcs:1/10, 0.2, 7/10', 3)
    assert arcs.weights == (Fraction(1, 10), Fraction(1, 5), Fraction(7, 10))
    with pytest.raises(InvalidParameterError):
        parse_arcs_spec('arcs:1/2,1/2', 3)
    with pytest.raises(InvalidParameterError):
        parse_arcs_spec('weights:1/2,1/2', 2)
