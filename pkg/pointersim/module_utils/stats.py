# -*- coding: utf-8 -*-
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
Monte Carlo batch engine and binomial statistics.

Trial ``i`` draws from its own stream ``(master_seed, i)``. Chunks only group trials into
work items, so counts depend neither on the chunk size nor on the number of workers.
"""

import enum
import logging
import math

from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor

from scipy.stats import norm

from pointersim.module_utils.core import InvalidParameterError, RngStream

log = logging.getLogger(__name__)

DEFAULT_CHUNK_SIZE = 16384
TRIAL_BLOCK_SIZE = 16
MIN_HALF_TEST_TRIALS = 30


class Verdict(enum.Enum):
    CONTAINS_TARGET = 'ContainsTarget'
    MISSES_TARGET = 'MissesTarget'
    NO_TARGET = 'NoTarget'


SuccessEstimate = namedtuple('SuccessEstimate', [
    'trials',
    'successes',
    'point_estimate',
    'ci_low',
    'ci_high',
    'confidence',
    'target',
    'verdict',
])

HalfTest = namedtuple('HalfTest', ['z', 'p_value', 'significant'])


def _require_confidence(confidence):
    if not 0.0 < confidence < 1.0:
        raise InvalidParameterError("confidence must lie strictly between 0 and 1, got {0}".format(confidence))


def critical_value(confidence):
    """Two-sided normal critical value for ``confidence``."""
    _require_confidence(confidence)
    return float(norm.ppf(1.0 - (1.0 - confidence) / 2.0))


def wilson_interval(k, n, confidence=0.95):
    """Wilson score interval for ``k`` successes in ``n`` trials, clamped to [0, 1]."""
    if n < 1:
        raise InvalidParameterError("wilson interval needs n >= 1, got {0}".format(n))
    if not 0 <= k <= n:
        raise InvalidParameterError("successes must satisfy 0 <= k <= n, got k={0}, n={1}".format(k, n))
    z = critical_value(confidence)
    p_hat = float(k) / n
    denominator = 1.0 + z * z / n
    center = (p_hat + z * z / (2.0 * n)) / denominator
    margin = (z / denominator) * math.sqrt(p_hat * (1.0 - p_hat) / n + z * z / (4.0 * n * n))
    low = 0.0 if k == 0 else max(0.0, min(center - margin, p_hat))
    high = 1.0 if k == n else min(1.0, max(center + margin, p_hat))
    return low, high


def estimate_from_counts(k, n, confidence=0.95, target=None):
    low, high = wilson_interval(k, n, confidence)
    if target is None:
        verdict = Verdict.NO_TARGET
    elif low <= float(target) <= high:
        verdict = Verdict.CONTAINS_TARGET
    else:
        verdict = Verdict.MISSES_TARGET
    return SuccessEstimate(n, k, float(k) / n, low, high, confidence, target, verdict)


def exceeds_half_test(estimate, level=0.95):
    """One-sided z-test of p = 1/2 against p > 1/2."""
    if estimate.trials < MIN_HALF_TEST_TRIALS:
        raise InvalidParameterError("the normal approximation needs n >= {0}, got {1}".format(MIN_HALF_TEST_TRIALS, estimate.trials))
    _require_confidence(level)
    z = (estimate.point_estimate - 0.5) / math.sqrt(0.25 / estimate.trials)
    p_value = float(norm.sf(z))
    return HalfTest(z, p_value, p_value < 1.0 - level)


def _is_success(result):
    return bool(getattr(result, 'correct', result))


def _chunks(n, chunk_size):
    if chunk_size < 1:
        raise InvalidParameterError("chunk size must be >= 1, got {0}".format(chunk_size))
    for start in range(0, n, chunk_size):
        yield start, min(start + chunk_size, n)


def trial_stream(master_seed, seed_index):
    return RngStream(master_seed, seed_index, block_size=TRIAL_BLOCK_SIZE)


def _run_trial(experiment, master_seed, seed_index):
    return experiment(trial_stream(master_seed, seed_index), seed_index=seed_index)


def _run_chunk(experiment, master_seed, start, stop):
    return sum(1 for seed_index in range(start, stop) if _is_success(_run_trial(experiment, master_seed, seed_index)))


def _run_chunk_args(args):
    return _run_chunk(*args)


def count_successes(experiment, n, master_seed, workers=1, chunk_size=DEFAULT_CHUNK_SIZE):
    if n < 1:
        raise InvalidParameterError("at least one trial is required, got {0}".format(n))
    if workers < 1:
        raise InvalidParameterError("workers must be >= 1, got {0}".format(workers))
    tasks = [(experiment, master_seed, start, stop) for start, stop in _chunks(n, chunk_size)]
    if workers == 1 or len(tasks) == 1:
        return sum(_run_chunk(*task) for task in tasks)
    log.debug("running %d chunks on %d workers", len(tasks), workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return sum(executor.map(_run_chunk_args, tasks))


def run_trials(experiment, n, master_seed, confidence=0.95, target=None, workers=1, chunk_size=DEFAULT_CHUNK_SIZE):
    """
    Run ``n`` trials of ``experiment`` and summarize them.

    ``experiment`` is called as ``experiment(rng, seed_index=i)`` and returns a trial
    record (or anything truthy on success); it must be picklable when ``workers > 1``.
    """
    _require_confidence(confidence)
    k = count_successes(experiment, n, master_seed, workers=workers, chunk_size=chunk_size)
    log.info("%d of %d trials correct (seed %d)", k, n, master_seed)
    return estimate_from_counts(k, n, confidence, target)


def iter_trials(experiment, n, master_seed):
    """Yield the per-trial results of :func:`run_trials` in trial order."""
    for seed_index in range(n):
        yield _run_trial(experiment, master_seed, seed_index)
