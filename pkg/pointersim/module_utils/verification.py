# -*- coding: utf-8 -*-
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
The claim suite run by ``pointersim verify``.

Every row carries the closed-form value claimed for a scenario, the exact oracle value
and a Monte Carlo estimate, any of which may be ``None`` when it does not apply. A row
whose claimed value differs from its oracle while the simulation sides with the oracle
is a FINDING; a simulation that contradicts the reference value is a FAILURE.

Batch rows count how many of a set of sub-checks passed. Their claimed value is the
required pass rate and any shortfall is a FAILURE.
"""

import logging

from collections import namedtuple
from fractions import Fraction
from functools import partial

import numpy as np

from pointersim.module_utils import circular, envelope, markov, railroad
from pointersim.module_utils.core import FAIR_COIN, InvalidParameterError, Mode, RngStream
from pointersim.module_utils.pointer import ArcWeights, ContinuousPointer
from pointersim.module_utils.stats import (
    count_successes, estimate_from_counts, exceeds_half_test, iter_trials, run_trials, wilson_interval,
)

log = logging.getLogger(__name__)

MIN_TRIAL_BUDGET = 10 ** 5
SHARED_POINTER_TRIALS = 10 ** 4
EXACT_TOLERANCE = 1e-9

STRUCTURE_SEED = 20240601
RANDOM_POINTERS = 10
RANDOM_TRACKS = 50
RENAMINGS = 5
RENAMING_TRIALS = 10 ** 4
MARKOV_SIZES = range(3, 51)
STATIONARY_TOLERANCE = 1e-10
POSTERIOR_TOLERANCE = 1e-12
COVERAGE_REPETITIONS = 1000
COVERAGE_TRIALS = 1000
COVERAGE_PROBABILITY = 0.6
COVERAGE_REQUIRED = 930
CHUNK_TRIALS = 10 ** 4
CHUNK_LAYOUTS = ((1, 1000), (2, 1000), (8, 1000))

AGREE = 'AGREE'
FINDING = 'FINDING'
FAILURE = 'FAILURE'

NOT_APPLICABLE = 'n/a'

NAMED_STATIONS = ('Ashby', 'Bedford', 'Concord', 'Dover', 'Easton', 'Framingham', 'Groton', 'Harvard', 'Ipswich', 'Jamaica')

VerificationRow = namedtuple('VerificationRow', [
    'claim',
    'description',
    'claimed',
    'oracle',
    'n',
    'k',
    'p_hat',
    'ci_low',
    'ci_high',
    'verdict',
])


class VerificationReport(namedtuple('VerificationReport', ['seed', 'trials', 'rows'])):

    __slots__ = ()

    @property
    def findings(self):
        return sum(1 for row in self.rows if row.verdict == FINDING)

    @property
    def failures(self):
        return sum(1 for row in self.rows if row.verdict == FAILURE)

    def to_dict(self):
        return {
            'seed': self.seed,
            'trials': self.trials,
            'rows': [row_to_dict(row) for row in self.rows],
            'findings': self.findings,
            'failures': self.failures,
        }


def _number(value):
    if value is None:
        return None
    return float(value)


def row_to_dict(row):
    result = row._asdict()
    for key in ('claimed', 'oracle', 'p_hat', 'ci_low', 'ci_high'):
        result[key] = _number(result[key])
    return dict(result)


def judge(claimed, oracle, estimate, agreement_confidence, exact=False):
    """Classify one claim row."""
    reference = oracle if oracle is not None else claimed
    simulated_ok = True
    if estimate is not None and reference is not None:
        if exact:
            simulated_ok = estimate.successes == estimate.trials * int(reference)
        else:
            low, high = wilson_interval(estimate.successes, estimate.trials, agreement_confidence)
            simulated_ok = low <= float(reference) <= high
    if not simulated_ok:
        return FAILURE
    if claimed is not None and oracle is not None and abs(float(claimed) - float(oracle)) > EXACT_TOLERANCE:
        return FINDING
    return AGREE


class _Suite(object):

    def __init__(self, seed, trials, workers, confidence, agreement_confidence):
        self.seed = seed
        self.trials = trials
        self.workers = workers
        self.confidence = confidence
        self.agreement_confidence = agreement_confidence
        self.rows = []

    def simulate(self, experiment, target):
        return run_trials(experiment, self.trials, self.seed, confidence=self.confidence, target=target, workers=self.workers)

    def add(self, claim, description, claimed=None, oracle=None, estimate=None, exact=False):
        verdict = judge(claimed, oracle, estimate, self.agreement_confidence, exact=exact)
        if estimate is None:
            row = VerificationRow(claim, description, claimed, oracle, None, None, None, None, None, verdict)
        else:
            row = VerificationRow(claim, description, claimed, oracle, estimate.trials, estimate.successes,
                                  estimate.point_estimate, estimate.ci_low, estimate.ci_high, verdict)
        log.info("%s: %s", claim, verdict)
        self.rows.append(row)

    def check(self, claim, description, passed, total, required=None, seeded=False):
        """
        Row for a batch of sub-checks: ``passed`` out of ``total`` must reach ``required``.

        Seeded batches report the pass rate as an estimate, deterministic ones as the oracle.
        """
        required = total if required is None else required
        verdict = AGREE if passed >= required else FAILURE
        claimed = Fraction(required, total)
        if seeded:
            row = VerificationRow(claim, description, claimed, None, total, passed, float(passed) / total, None, None, verdict)
        else:
            row = VerificationRow(claim, description, claimed, Fraction(passed, total), total, passed, None, None, None, verdict)
        log.info("%s: %d of %d passed, %s", claim, passed, total, verdict)
        self.rows.append(row)


def _envelope_rows(suite):
    dist = ContinuousPointer.uniform(0, 3)
    pair = envelope.EnvelopePair(1, 2)
    value = envelope.analytic_success(dist, pair)
    suite.add('envelope', "switch iff pointer exceeds the amount seen, Uniform(0,3), L=1, G=2",
              claimed=value, oracle=value, estimate=suite.simulate(partial(envelope.play_round, pair, dist), value))
    suite.add('envelope-postdiction', "kept envelope label as a guess of the toss",
              claimed=value, oracle=value,
              estimate=suite.simulate(partial(envelope.play_postdiction_round, pair, dist, FAIR_COIN), value))


def _rail_rows(suite):
    dist = ContinuousPointer.uniform(0, 10)
    postdiction = railroad.LinearScenario(destination=4, pointer=dist)
    claimed = railroad.analytic_linear_success(dist, 4)
    oracle = railroad.enumerate_postdiction(postdiction)
    suite.add('rail-postdiction', "destination 4 announced, Uniform(0,10) pointer",
              claimed=claimed, oracle=oracle, estimate=suite.simulate(partial(railroad.simulate_postdiction, postdiction), oracle))

    control = railroad.enumerate_known_station(5, dist, FAIR_COIN)
    control_estimate = suite.simulate(partial(railroad.simulate_known_station, 5, dist, FAIR_COIN), control)
    suite.add('rail-control', "passenger only knows the current station 5",
              claimed=Fraction(1, 2), oracle=control, estimate=control_estimate)
    half = exceeds_half_test(control_estimate, level=0.95)
    strict = exceeds_half_test(control_estimate, level=suite.agreement_confidence)
    suite.check('rail-control-half-test',
                "control does not exceed 1/2 (z={0:.2f}, one-sided p={1:.4f}, significant at 95%: {2})".format(
                    half.z, half.p_value, 'yes' if half.significant else 'no'),
                0 if strict.significant else 1, 1, seeded=True)

    destination_first = railroad.LinearScenario(destination=4, pointer=dist, mode=Mode.PREDICTION_DESTINATION_FIRST)
    suite.add('rail-predict-dest-first', "pointer drawn before the origin is chosen given destination 4",
              claimed=claimed, oracle=railroad.enumerate_postdiction(destination_first),
              estimate=suite.simulate(partial(railroad.simulate_prediction, destination_first), oracle))

    origin_first = railroad.LinearScenario(pointer=dist, mode=Mode.PREDICTION_ORIGIN_FIRST, origin=5)
    exact = railroad.enumerate_origin_first(origin_first)
    suite.add('rail-predict-origin-first', "second passenger guesses at station 5 before the toss",
              claimed=railroad.claimed_prediction_success(origin_first), oracle=exact,
              estimate=suite.simulate(partial(railroad.simulate_prediction, origin_first), exact))
    _origin_first_rows(suite)

    track = railroad.NamedTrack(NAMED_STATIONS)
    named = railroad.enumerate_named_postdiction(track)
    suite.add('rail-named', "alphabetical station list and direction oracle, {0} stations".format(len(track)),
              oracle=named, estimate=suite.simulate(partial(railroad.simulate_named_postdiction, track), named))
    _renaming_rows(suite, track)

    agreements = railroad.shared_pointer_agreements(SHARED_POINTER_TRIALS, postdiction, RngStream(suite.seed, 0))
    suite.add('rail-shared-pointer', "two passengers sharing one pointer always agree",
              claimed=1, oracle=1, estimate=estimate_from_counts(agreements, SHARED_POINTER_TRIALS, suite.confidence, 1), exact=True)

    disagreement = railroad.expected_disagreement(postdiction)
    disagreements = railroad.independent_pointer_disagreements(SHARED_POINTER_TRIALS, postdiction, RngStream(suite.seed, 1))
    suite.add('rail-independent-pointers', "two passengers with their own pointers disagree",
              oracle=disagreement, estimate=estimate_from_counts(disagreements, SHARED_POINTER_TRIALS, suite.confidence, disagreement))


def _structures():
    """Generator for the random pointers, tracks and renamings; independent of the run seed."""
    return np.random.default_rng(STRUCTURE_SEED)


def _random_pointer(generator):
    kind = int(generator.integers(3))
    if kind == 0:
        low = float(generator.uniform(-5, 10))
        return ContinuousPointer.uniform(low, low + float(generator.uniform(0.5, 20)))
    if kind == 1:
        return ContinuousPointer.exponential(float(generator.uniform(0.05, 2)))
    return ContinuousPointer.gaussian(float(generator.uniform(-5, 10)), float(generator.uniform(0.5, 8)))


def _origin_first_rows(suite):
    generator = _structures()
    exact_half = 0
    for _index in range(RANDOM_POINTERS):
        scenario = railroad.LinearScenario(pointer=_random_pointer(generator), mode=Mode.PREDICTION_ORIGIN_FIRST,
                                           origin=int(generator.integers(0, 11)))
        exact_half += railroad.enumerate_origin_first(scenario) == Fraction(1, 2)
    suite.check('rail-origin-first-exact-half', "origin-first enumeration is exactly 1/2 for {0} random pointers".format(
        RANDOM_POINTERS), exact_half, RANDOM_POINTERS)


def _outcomes(track, seed):
    return [record.correct for record in iter_trials(partial(railroad.simulate_named_postdiction, track), RENAMING_TRIALS, seed)]


def _renaming_rows(suite, track):
    generator = _structures()
    names = list(track.names)
    reference = _outcomes(track, suite.seed)
    law = railroad.enumerate_named_postdiction(track)
    passed = 0
    for _index in range(RENAMINGS):
        fresh = sorted('Station{0:03d}'.format(int(i)) for i in generator.choice(1000, size=len(names), replace=False))
        ordered = track.renamed(dict(zip(names, fresh)))
        shuffled = track.renamed(dict(zip(names, [fresh[int(i)] for i in generator.permutation(len(names))])))
        passed += _outcomes(ordered, suite.seed) == reference and railroad.enumerate_named_postdiction(shuffled) == law
    suite.check('rail-renaming', "{0} renamings: order-preserving ones replay all {1} outcomes, any one keeps the exact law".format(
        RENAMINGS, RENAMING_TRIALS), passed, RENAMINGS, seeded=True)


def _random_track(generator):
    count = int(generator.integers(5, 17))
    weights = [int(weight) for weight in generator.integers(1, 21, size=count)]
    total = sum(weights)
    return circular.CircularTrack(count, ArcWeights([Fraction(weight, total) for weight in weights]))


def _random_track_rows(suite):
    generator = _structures()
    tracks = [(_random_track(generator), int(generator.integers(0, 5))) for _index in range(RANDOM_TRACKS)]
    checked = per_destination = opposite_half = total_probability = 0
    opposite = circular.RsPolicy.opposite()
    for track, rs in tracks:
        fixed = circular.RsPolicy.fixed(rs)
        for k in circular.valid_fixed_destinations(track, rs):
            checked += 1
            per_destination += (circular.conditional_success_given_destination(track, k, fixed)
                                == circular.claimed_conditional_formula(track, k))
        opposite_half += circular.enumerate_exact(track, opposite) == Fraction(1, 2)
        for policy in (opposite, fixed):
            weighted = sum(circular.destination_probability(track, k) * circular.conditional_success_given_destination(track, k, policy)
                           for k in range(track.station_count))
            total_probability += weighted == circular.enumerate_exact(track, policy)
    suite.check('circular-per-destination-tracks', "fixed RS outside the minor arc, {0} destinations on {1} random tracks".format(
        checked, RANDOM_TRACKS), per_destination, checked)
    suite.check('circular-opposite-half-tracks', "opposite RS gives exactly 1/2 on {0} random tracks".format(RANDOM_TRACKS),
                opposite_half, RANDOM_TRACKS)
    suite.check('circular-total-probability', "destination-weighted conditionals equal the forward value, both policies",
                total_probability, 2 * RANDOM_TRACKS)


def _circular_rows(suite):
    arcs = ArcWeights([Fraction(weight, 55) for weight in range(1, 11)])
    track = circular.CircularTrack(10, arcs)
    fixed = circular.RsPolicy.fixed(0)
    opposite = circular.RsPolicy.opposite()
    k = 5
    conditional = circular.conditional_success_given_destination(track, k, fixed)
    suite.add('circular-conditional-fixed', "destination {0} known, RS fixed at station 0, arcs 1/55..10/55".format(k),
              claimed=circular.claimed_conditional_success(track, k, 0), oracle=conditional,
              estimate=suite.simulate(partial(circular.simulate_given_destination, track, k, fixed), conditional))
    for name, policy in (('opposite', opposite), ('fixed', fixed)):
        exact = circular.enumerate_exact(track, policy)
        suite.add('circular-forward-{0}'.format(name), "uniform origin then coin, RS policy {0}".format(policy.to_spec()),
                  claimed=circular.claimed_average_success(track), oracle=exact,
                  estimate=suite.simulate(partial(circular.simulate_forward, track, policy), exact))


def _markov_rows(suite):
    chain = markov.ReflectingChain(10)
    solved = markov.stationary_distribution(chain)
    closed = markov.closed_form_stationary(chain)
    worst = max(abs(a - b) for a, b in zip(solved, closed))
    suite.add('markov-stationary', "end-station stationary mass, N=10 (largest deviation {0:.1e})".format(worst),
              claimed=closed[0], oracle=solved[0])

    west, _east = markov.origin_posterior(chain, 2)
    suite.add('markov-posterior', "western origin given destination 2, N=10",
              claimed=0.5, oracle=west, estimate=suite.simulate(partial(markov.simulate_origin_side, chain, 2), west))

    dist = ContinuousPointer.uniform(0, 11)
    claimed = markov.analytic_wake_success(chain, dist)
    exact = markov.exact_wake_success(chain, dist)
    suite.add('markov-wake', "passenger wakes at least 3 stations from an end, N=10",
              claimed=claimed, oracle=exact, estimate=suite.simulate(partial(markov.simulate_wake_postdiction, chain, dist), exact))


def _markov_size_rows(suite):
    worst_closed = worst_balance = worst_posterior = 0.0
    passed = 0
    for size in MARKOV_SIZES:
        chain = markov.ReflectingChain(size)
        solved = np.asarray(markov.stationary_distribution(chain), dtype=float)
        closed = np.asarray(markov.closed_form_stationary(chain), dtype=float)
        closed_gap = float(np.max(np.abs(solved - closed)))
        balance_gap = float(np.max(np.abs(solved.dot(markov.transition_matrix(chain)) - solved)))
        posterior_gap = max(abs(side - 0.5) for d in range(2, size) for side in markov.origin_posterior(chain, d))
        worst_closed = max(worst_closed, closed_gap)
        worst_balance = max(worst_balance, balance_gap)
        worst_posterior = max(worst_posterior, posterior_gap)
        passed += (closed_gap <= STATIONARY_TOLERANCE and balance_gap <= STATIONARY_TOLERANCE
                   and posterior_gap <= POSTERIOR_TOLERANCE)
    suite.check('markov-stationary-sizes',
                "N={0}..{1}: closed form {2:.1e}, balance {3:.1e}, interior posteriors {4:.1e} off at worst".format(
                    MARKOV_SIZES[0], MARKOV_SIZES[-1], worst_closed, worst_balance, worst_posterior),
                passed, len(MARKOV_SIZES))


def _stats_rows(suite):
    generator = np.random.default_rng(suite.seed)
    covered = 0
    for successes in generator.binomial(COVERAGE_TRIALS, COVERAGE_PROBABILITY, size=COVERAGE_REPETITIONS):
        low, high = wilson_interval(int(successes), COVERAGE_TRIALS, 0.95)
        covered += low <= COVERAGE_PROBABILITY <= high
    suite.check('stats-wilson-coverage', "95% Wilson intervals covering p={0} with n={1}".format(
        COVERAGE_PROBABILITY, COVERAGE_TRIALS), covered, COVERAGE_REPETITIONS, required=COVERAGE_REQUIRED, seeded=True)

    experiment = partial(envelope.play_round, envelope.EnvelopePair(1, 2), ContinuousPointer.uniform(0, 3))
    reference = count_successes(experiment, CHUNK_TRIALS, suite.seed)
    same = sum(count_successes(experiment, CHUNK_TRIALS, suite.seed, workers=workers, chunk_size=chunk_size) == reference
               for workers, chunk_size in CHUNK_LAYOUTS)
    suite.check('stats-chunk-invariance', "{0} envelope trials give {1} successes on 1, 2 and 8 workers".format(
        CHUNK_TRIALS, reference), same, len(CHUNK_LAYOUTS), seeded=True)


def verify_all(seed=0, trial_budget=10 ** 6, workers=1, confidence=0.95, agreement_confidence=0.9999):
    """Run the full claim suite and return a :class:`VerificationReport`."""
    if trial_budget < MIN_TRIAL_BUDGET:
        raise InvalidParameterError("verify needs at least {0} trials per claim, got {1}".format(MIN_TRIAL_BUDGET, trial_budget))
    suite = _Suite(seed, trial_budget, workers, confidence, agreement_confidence)
    for build in (_envelope_rows, _rail_rows, _circular_rows, _random_track_rows, _markov_rows, _markov_size_rows, _stats_rows):
        build(suite)
    return VerificationReport(seed, trial_budget, tuple(suite.rows))


def _cell(value, width=8):
    if value is None:
        return NOT_APPLICABLE.rjust(width)
    return '{0:.4f}'.format(float(value)).rjust(width)


def format_table(report):
    """Fixed-width table of the report for the terminal."""
    header = '{0:<28} {1:>8} {2:>8} {3:>8} {4:>19}  {5}'.format('claim', 'claimed', 'oracle', 'p_hat', 'ci', 'verdict')
    lines = [header, '-' * len(header)]
    for row in report.rows:
        interval = NOT_APPLICABLE if row.ci_low is None else '[{0:.4f}, {1:.4f}]'.format(row.ci_low, row.ci_high)
        lines.append('{0:<28} {1} {2} {3} {4:>19}  {5}'.format(
            row.claim, _cell(row.claimed), _cell(row.oracle), _cell(row.p_hat), interval, row.verdict))
    lines.append('{0} claims, {1} findings, {2} failures'.format(len(report.rows), report.findings, report.failures))
    return '\n'.join(lines)
