import random

from fractions import Fraction
from functools import partial

import pytest

from pointersim.module_utils import railroad
from pointersim.module_utils.core import FAIR_COIN, Coin, Direction, InvalidParameterError, Mode, RngStream
from pointersim.module_utils.pointer import ContinuousPointer
from pointersim.module_utils.stats import exceeds_half_test, iter_trials, run_trials

UNIFORM_10 = ContinuousPointer.uniform(0, 10)


def test_scenario_validation():
    with pytest.raises(InvalidParameterError):
        railroad.LinearScenario(pointer=UNIFORM_10)
    with pytest.raises(InvalidParameterError):
        railroad.LinearScenario(pointer=UNIFORM_10, mode=Mode.PREDICTION_ORIGIN_FIRST)
    with pytest.raises(InvalidParameterError):
        railroad.LinearScenario(destination=4)
    with pytest.raises(InvalidParameterError):
        railroad.LinearScenario(destination=4, pointer=UNIFORM_10, west_origin_probability=1.5)


@pytest.mark.parametrize('destination,expected', [(4, 0.6), (0, 0.55), (20, 0.5)])
def test_analytic_linear_success(destination, expected):
    assert railroad.analytic_linear_success(UNIFORM_10, destination) == pytest.approx(expected)


def test_enumeration_matches_analytic_under_equiprobability():
    for dist in (UNIFORM_10, ContinuousPointer.exponential(0.3), ContinuousPointer.gaussian(5, 3)):
        scenario = railroad.LinearScenario(destination=4, pointer=dist)
        assert railroad.enumerate_postdiction(scenario) == pytest.approx(railroad.analytic_linear_success(dist, 4), abs=1e-12)


def test_biased_origin_success():
    scenario = railroad.LinearScenario(destination=4, pointer=UNIFORM_10, west_origin_probability=0.9)
    expected = 0.9 * 0.7 + 0.1 * 0.5
    assert railroad.analytic_biased_origin_success(UNIFORM_10, 4, 0.9) == pytest.approx(expected)
    assert railroad.enumerate_postdiction(scenario) == pytest.approx(expected)


def test_postdiction_simulation():
    scenario = railroad.LinearScenario(destination=4, pointer=UNIFORM_10)
    estimate = run_trials(partial(railroad.simulate_postdiction, scenario), 50000, 1, confidence=0.999)
    assert estimate.ci_low <= 0.6 <= estimate.ci_high


def test_postdiction_origin_is_a_neighbour():
    scenario = railroad.LinearScenario(destination=4, pointer=UNIFORM_10)
    for record in iter_trials(partial(railroad.simulate_postdiction, scenario), 2000, 2):
        assert record.actual_direction in (Direction.EAST, Direction.WEST)
        assert record.mode is Mode.POSTDICTION


def test_known_station_is_not_better_than_half():
    estimate = run_trials(partial(railroad.simulate_known_station, 5, UNIFORM_10, FAIR_COIN), 50000, 2, confidence=0.999)
    assert estimate.ci_low <= 0.5 <= estimate.ci_high
    assert not exceeds_half_test(estimate).significant


@pytest.mark.parametrize('index', range(10))
def test_origin_first_enumeration_is_exactly_half(index):
    chooser = random.Random(index)
    kind = chooser.choice(['uniform', 'exponential', 'gaussian'])
    if kind == 'uniform':
        low = chooser.uniform(-5, 5)
        dist = ContinuousPointer.uniform(low, low + chooser.uniform(0.5, 10))
    elif kind == 'exponential':
        dist = ContinuousPointer.exponential(chooser.uniform(0.1, 3))
    else:
        dist = ContinuousPointer.gaussian(chooser.uniform(-5, 5), chooser.uniform(0.5, 4))
    scenario = railroad.LinearScenario(pointer=dist, mode=Mode.PREDICTION_ORIGIN_FIRST, origin=chooser.randint(-3, 8))
    assert railroad.enumerate_origin_first(scenario) == Fraction(1, 2)


def test_origin_first_with_biased_coin():
    scenario = railroad.LinearScenario(pointer=UNIFORM_10, mode=Mode.PREDICTION_ORIGIN_FIRST, origin=2, coin=Coin(0.9))
    assert railroad.enumerate_origin_first(scenario) == pytest.approx(0.9 * 0.8 + 0.1 * 0.2)
    estimate = run_trials(partial(railroad.simulate_prediction, scenario), 40000, 5, confidence=0.999)
    assert estimate.ci_low <= 0.74 <= estimate.ci_high


def test_claimed_prediction_rejects_biased_coin():
    scenario = railroad.LinearScenario(pointer=UNIFORM_10, mode=Mode.PREDICTION_ORIGIN_FIRST, origin=5, coin=Coin(0.6))
    with pytest.raises(InvalidParameterError):
        railroad.claimed_prediction_success(scenario)


def test_destination_first_matches_postdiction():
    scenario = railroad.LinearScenario(destination=4, pointer=UNIFORM_10, mode=Mode.PREDICTION_DESTINATION_FIRST)
    estimate = run_trials(partial(railroad.simulate_prediction, scenario), 50000, 6, confidence=0.999)
    assert estimate.ci_low <= 0.6 <= estimate.ci_high


def test_origin_first_simulation_is_half():
    scenario = railroad.LinearScenario(pointer=UNIFORM_10, mode=Mode.PREDICTION_ORIGIN_FIRST, origin=5)
    estimate = run_trials(partial(railroad.simulate_prediction, scenario), 50000, 7, confidence=0.999)
    assert estimate.ci_low <= 0.5 <= estimate.ci_high


def test_simulate_prediction_rejects_postdiction():
    scenario = railroad.LinearScenario(destination=4, pointer=UNIFORM_10)
    with pytest.raises(InvalidParameterError):
        railroad.simulate_prediction(scenario, RngStream(0))


@pytest.mark.parametrize('mode,kwargs', [
    (Mode.POSTDICTION, dict(destination=4)),
    (Mode.PREDICTION_DESTINATION_FIRST, dict(destination=4)),
    (Mode.PREDICTION_ORIGIN_FIRST, dict(origin=5)),
])
def test_shared_pointer_equivalence(mode, kwargs):
    scenario = railroad.LinearScenario(pointer=UNIFORM_10, mode=mode, **kwargs)
    assert railroad.shared_pointer_equivalence(10 ** 4, scenario, RngStream(11))


def test_passengers_only_differ_in_when_they_look():
    first, second = railroad.Passenger(), railroad.Passenger()
    assert first.guess(5, 7.5) is second.guess(5, 7.5) is Direction.EAST
    assert first.guess(5, 2.5) is Direction.WEST
    assert not vars(first)


def test_independent_pointers_disagree():
    scenario = railroad.LinearScenario(destination=4, pointer=UNIFORM_10)
    expected = railroad.expected_disagreement(scenario)
    assert expected == pytest.approx(0.5 * 2 * 0.7 * 0.3 + 0.5 * 2 * 0.5 * 0.5)
    rate = railroad.independent_pointer_disagreement(40000, scenario, RngStream(12))
    assert rate == pytest.approx(expected, abs=0.015)
    assert railroad.independent_pointer_disagreement(0, scenario, RngStream(12)) == 0.0


def test_named_track_hides_positions():
    track = railroad.NamedTrack(['Willoughby', 'Oakdale', 'Brighton'])
    assert track.names == ('Brighton', 'Oakdale', 'Willoughby')
    assert railroad.direction_oracle(track, 'Oakdale', 'Brighton') is Direction.EAST
    assert railroad.direction_oracle(track, 'Oakdale', 'Willoughby') is Direction.WEST
    with pytest.raises(railroad.StationTieError):
        railroad.direction_oracle(track, 'Oakdale', 'Oakdale')
    with pytest.raises(InvalidParameterError):
        railroad.direction_oracle(track, 'Oakdale', 'Nowhere')


def test_named_track_rejects_duplicates():
    with pytest.raises(InvalidParameterError):
        railroad.NamedTrack(['A', 'B', 'A'])


def test_three_station_track_always_succeeds():
    track = railroad.NamedTrack(['C', 'A', 'B'])
    assert railroad.enumerate_named_postdiction(track) == 1
    estimate = run_trials(partial(railroad.simulate_named_postdiction, track), 2000, 1)
    assert estimate.successes == 2000


def test_named_enumeration_matches_simulation(station_names_file):
    track = railroad.NamedTrack(railroad.load_station_names(station_names_file))
    assert len(track) == 8
    exact = railroad.enumerate_named_postdiction(track)
    assert exact > Fraction(1, 2)
    estimate = run_trials(partial(railroad.simulate_named_postdiction, track), 40000, 9, confidence=0.999)
    assert estimate.ci_low <= exact <= estimate.ci_high


def _order_preserving_renaming(names, chooser):
    fresh = sorted(chooser.sample(['Station{0:03d}'.format(i) for i in range(1000)], len(names)))
    return dict(zip(sorted(names), fresh))


@pytest.mark.parametrize('permutation', range(5))
def test_order_preserving_renaming_keeps_outcomes(permutation):
    names = ['Willoughby', 'Oakdale', 'Brighton', 'Pemberton', 'Ashford', 'Kingsbridge']
    track = railroad.NamedTrack(names)
    renamed = track.renamed(_order_preserving_renaming(names, random.Random(permutation)))
    original = [record.correct for record in iter_trials(partial(railroad.simulate_named_postdiction, track), 10 ** 4, 31)]
    again = [record.correct for record in iter_trials(partial(railroad.simulate_named_postdiction, renamed), 10 ** 4, 31)]
    assert original == again


@pytest.mark.parametrize('permutation', range(5))
def test_any_renaming_keeps_the_success_law(permutation):
    names = ['Willoughby', 'Oakdale', 'Brighton', 'Pemberton', 'Ashford', 'Kingsbridge']
    shuffled = list(names)
    random.Random(permutation).shuffle(shuffled)
    track = railroad.NamedTrack(names)
    renamed = track.renamed(dict(zip(names, shuffled)))
    assert railroad.enumerate_named_postdiction(renamed) == railroad.enumerate_named_postdiction(track)


@pytest.mark.acceptance
def test_acceptance_linear_postdiction():
    scenario = railroad.LinearScenario(destination=4, pointer=UNIFORM_10)
    estimate = run_trials(partial(railroad.simulate_postdiction, scenario), 10 ** 6, 4)
    assert abs(estimate.point_estimate - 0.6) < 0.002


@pytest.mark.acceptance
def test_acceptance_control():
    estimate = run_trials(partial(railroad.simulate_known_station, 5, UNIFORM_10, FAIR_COIN), 10 ** 6, 5)
    assert abs(estimate.point_estimate - 0.5) < 0.002
    assert not exceeds_half_test(estimate).significant


@pytest.mark.acceptance
def test_acceptance_predictions():
    destination_first = railroad.LinearScenario(destination=4, pointer=UNIFORM_10, mode=Mode.PREDICTION_DESTINATION_FIRST)
    origin_first = railroad.LinearScenario(pointer=UNIFORM_10, mode=Mode.PREDICTION_ORIGIN_FIRST, origin=5)
    assert abs(run_trials(partial(railroad.simulate_prediction, destination_first), 10 ** 6, 6).point_estimate - 0.6) < 0.002
    assert abs(run_trials(partial(railroad.simulate_prediction, origin_first), 10 ** 6, 7).point_estimate - 0.5) < 0.002
