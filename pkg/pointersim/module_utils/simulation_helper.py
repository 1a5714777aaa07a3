# -*- coding: utf-8 -*-
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

# pylint: disable=raise-missing-from
# pylint: disable=super-with-arguments

from __future__ import absolute_import, division, print_function
__metaclass__ = type


import argparse
import csv
import datetime
import enum
import io
import json
import logging
import sys

from collections import namedtuple
from contextlib import contextmanager
from fractions import Fraction
from functools import wraps

import numpy as np
import yaml

from ansible.module_utils.basic import env_fallback
from ansible.module_utils.common.arg_spec import ArgumentSpecValidator
from ansible.module_utils.common.text.converters import to_native

from pointersim.module_utils.circular import parse_rs_policy
from pointersim.module_utils.core import ConfigError, InvalidParameterError, TrialRecord
from pointersim.module_utils.pointer import parse_arcs_spec, parse_pointer_spec
from pointersim.module_utils.railroad import load_station_names
from pointersim.module_utils.stats import iter_trials

LOGGER_NAME = 'pointersim'
LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

RC_OK = 0
RC_FAILURE = 1
RC_INVALID = 2
RC_DISAGREEMENT = 3

PAYLOAD_KEYS = ('scenario', 'params', 'n', 'k', 'p_hat', 'ci_low', 'ci_high', 'analytic', 'oracle', 'verdict', 'seed', 'details')

ExperimentConfig = namedtuple('ExperimentConfig', ['scenario', 'params', 'trials', 'seed', 'confidence', 'output_format'])

global_simulation_spec = dict(
    trials=dict(type='int', default=10 ** 6, minimum=1, fallback=(env_fallback, ['POINTERSIM_TRIALS'])),
    seed=dict(type='int', default=0, minimum=0, maximum=2 ** 64 - 1, fallback=(env_fallback, ['POINTERSIM_SEED'])),
    confidence=dict(type='float', default=0.95, between=(0.0, 1.0), fallback=(env_fallback, ['POINTERSIM_CONFIDENCE'])),
    format=dict(default='json', choices=['json', 'csv'], fallback=(env_fallback, ['POINTERSIM_FORMAT'])),
    out=dict(type='path'),
    workers=dict(type='int', default=1, minimum=1, fallback=(env_fallback, ['POINTERSIM_WORKERS'])),
    trial_log=dict(type='path'),
    verbosity=dict(type='int', default=0, minimum=0),
    config=dict(type='path', invisible=True),
)

_FILTER_SPEC_KEYS = {
    'between',
    'count_from',
    'invisible',
    'label',
    'maximum',
    'minimum',
    'type',
}
_VALUE_SPEC_KEYS = {
    'between',
    'count_from',
    'label',
    'maximum',
    'minimum',
    'type',
}

_CUSTOM_TYPES = {
    'pointer': 'str',
    'arcs': 'str',
    'rs_policy': 'str',
    'station_names': 'path',
}


def _convert_pointer(value, params, spec):
    return parse_pointer_spec(value)


def _convert_arcs(value, params, spec):
    return parse_arcs_spec(value, params[spec['count_from']])


def _convert_rs_policy(value, params, spec):
    return parse_rs_policy(value)


def _convert_station_names(value, params, spec):
    return load_station_names(value)


_CONVERTERS = {
    'pointer': _convert_pointer,
    'arcs': _convert_arcs,
    'rs_policy': _convert_rs_policy,
    'station_names': _convert_station_names,
}


def _simulation_spec_helper(spec):
    """Split a simulation spec into the value checks we run ourselves and an Ansible compatible argument_spec."""
    simulation_spec = {}
    argument_spec = {}

    for key, value in spec.items():
        simulation_value = {k: v for (k, v) in value.items() if k in _VALUE_SPEC_KEYS}
        argument_value = {k: v for (k, v) in value.items() if k not in _FILTER_SPEC_KEYS}

        simulation_type = value.get('type')
        if simulation_type in _CUSTOM_TYPES:
            argument_value['type'] = _CUSTOM_TYPES[simulation_type]
        elif simulation_type:
            argument_value['type'] = simulation_type

        simulation_spec[key] = simulation_value
        argument_spec[key] = argument_value

    return simulation_spec, argument_spec


def _check_ranges(simulation_spec, params):
    messages = []
    for key, value_spec in simulation_spec.items():
        value = params.get(key)
        if value is None:
            continue
        label = value_spec.get('label', key)
        if 'minimum' in value_spec and value < value_spec['minimum']:
            messages.append("{0}: {1} >= {2} required, got {3}".format(key, label, value_spec['minimum'], value))
        if 'maximum' in value_spec and value > value_spec['maximum']:
            messages.append("{0}: {1} <= {2} required, got {3}".format(key, label, value_spec['maximum'], value))
        if 'between' in value_spec:
            low, high = value_spec['between']
            if not low < value < high:
                messages.append("{0}: {1} must lie strictly between {2} and {3}, got {4}".format(key, label, low, high, value))
    return messages


def _convert_custom_types(simulation_spec, params):
    messages = []
    for key, value_spec in simulation_spec.items():
        converter = _CONVERTERS.get(value_spec.get('type'))
        if converter is None or params.get(key) is None:
            continue
        try:
            params[key] = converter(params[key], params, value_spec)
        except (InvalidParameterError, IOError, OSError) as e:
            messages.append("{0}: {1}".format(key, to_native(e)))
    return messages


class _ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        raise ConfigError("{0}: {1}".format(self.prog, message))


def build_parser(prog, argument_spec, description=None):
    """Every option is added with ``default=SUPPRESS`` so that only flags given on the command line override the config file."""
    parser = _ArgumentParser(prog=prog, description=description, argument_default=argparse.SUPPRESS)
    for key, value in sorted(argument_spec.items()):
        if key == 'verbosity':
            parser.add_argument('-v', '--verbose', dest='verbosity', action='count')
            continue
        flags = ['--{0}'.format(name.replace('_', '-')) for name in [key] + list(value.get('aliases', []))]
        if value.get('type') == 'bool':
            parser.add_argument(*flags, dest=key, action='store_const', const=True)
        else:
            parser.add_argument(*flags, dest=key, metavar=key.upper())
    return parser


def _read_config_file(path, argument_spec):
    try:
        with io.open(path, encoding='utf-8') as config_file:
            data = yaml.safe_load(config_file)
    except (IOError, OSError) as e:
        raise ConfigError("{0}: {1}".format(path, to_native(e)))
    except yaml.YAMLError as e:
        raise ConfigError("{0}: not valid YAML or JSON: {1}".format(path, to_native(e)))
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError("{0}: top level must be a mapping, got {1}".format(path, type(data).__name__))
    params = {}
    unknown = []
    for key, value in data.items():
        name = str(key).replace('-', '_')
        if name not in argument_spec or name == 'config':
            unknown.append("{0}: unknown key '{1}'".format(path, key))
        params[name] = value
    if unknown:
        raise ConfigError(unknown)
    return params


def load_parameters(prog, spec, argv, mutually_exclusive=None, required_if=None):
    """
    Parse ``argv`` (and the ``--config`` file it names), validate and convert.

    Returns the validated parameters; raises :class:`ConfigError` carrying every message.
    """
    simulation_spec, argument_spec = _simulation_spec_helper(dict(global_simulation_spec, **spec))
    parser = build_parser(prog, argument_spec)
    flags = vars(parser.parse_args(argv))

    params = {}
    if flags.get('config'):
        params.update(_read_config_file(flags['config'], argument_spec))
    params.update(flags)

    validator = ArgumentSpecValidator(argument_spec, mutually_exclusive=mutually_exclusive, required_if=required_if)
    result = validator.validate(params)
    if result.error_messages:
        raise ConfigError(result.error_messages)
    validated = dict(result.validated_parameters)

    messages = _check_ranges(simulation_spec, validated)
    if messages:
        raise ConfigError(messages)
    messages = _convert_custom_types(simulation_spec, validated)
    if messages:
        raise ConfigError(messages)
    return validated


def configure_logging(verbosity):
    logger = logging.getLogger(LOGGER_NAME)
    handlers = [handler for handler in logger.handlers if getattr(handler, '_pointersim', False)]
    if handlers:
        handlers[0].setStream(sys.stderr)
    else:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._pointersim = True  # pylint: disable=protected-access
        logger.addHandler(handler)
    logger.setLevel([logging.WARNING, logging.INFO, logging.DEBUG][min(verbosity, 2)])
    return logger


def jsonable(value):
    """Turn library values into plain JSON types."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for (k, v) in value.items()}
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, Fraction):
        return float(value)
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (list, tuple, frozenset, set)):
        items = sorted(value) if isinstance(value, (frozenset, set)) else value
        return [jsonable(v) for v in items]
    if hasattr(value, 'to_spec'):
        return value.to_spec()
    return value


def dump_json(payload):
    return json.dumps(jsonable(payload), sort_keys=True, indent=2) + '\n'


def _csv_cell(value):
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    if value is None:
        return ''
    return value


def dump_csv(fields, rows):
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(fields)
    for row in rows:
        row = jsonable(row)
        writer.writerow([_csv_cell(row.get(field)) for field in fields])
    return stream.getvalue()


def write_trial_log(path, experiment, n, master_seed):
    """Per-trial CSV with one row per :class:`TrialRecord`, in trial order."""
    with io.open(path, 'w', encoding='utf-8', newline='') as log_file:
        writer = csv.writer(log_file, lineterminator='\n')
        writer.writerow(TrialRecord._fields)
        for record in iter_trials(experiment, n, master_seed):
            writer.writerow([jsonable(value) for value in record])


def _exception2fail_json(msg='Generic failure: {0}'):
    """
    Decorator to convert Python exceptions into failure payloads that can be reported to the user.
    """

    def decor(f):
        @wraps(f)
        def inner(self, *args, **kwargs):
            try:
                return f(self, *args, **kwargs)
            except (InvalidParameterError, ConfigError) as e:
                self.fail_json(msg=to_native(e), rc=RC_INVALID)
            except Exception as e:  # pylint: disable=broad-except
                err_msg = "{0}: {1}".format(e.__class__.__name__, to_native(e))
                self.fail_from_exception(e, msg.format(err_msg))
        return inner
    return decor


class SimulationModule(object):
    """ Baseclass for all pointersim subcommands.
        It handles the global options and adds the concept of the `simulation_spec`.

        Besides the Ansible argument_spec keys, a simulation_spec entry may carry:

        * type: besides the Ansible types, one of 'pointer', 'arcs', 'rs_policy', 'station_names'. Values are converted after validation.
        * minimum / maximum (number): inclusive bounds.
        * between (pair): exclusive bounds.
        * label (str): name used for the value in error messages.
        * count_from (str): for 'arcs', the option holding the station count.
    """

    scenario = None

    def __init__(self, simulation_spec=None, argv=None, prog=None, mutually_exclusive=None, required_if=None, stdout=None):
        self.simulation_spec = simulation_spec or {}
        self.prog = prog or 'pointersim {0}'.format(self.scenario)
        self.stdout = stdout if stdout is not None else sys.stdout
        self.warnings = []
        self.result = {}
        self.csv_table = None
        self.exit_code = RC_OK
        self._started = None
        self.log = logging.getLogger('{0}.{1}'.format(LOGGER_NAME, self.scenario))
        try:
            self.params = load_parameters(self.prog, self.simulation_spec, sys.argv[1:] if argv is None else argv,
                                          mutually_exclusive=mutually_exclusive, required_if=required_if)
        except ConfigError as e:
            configure_logging(0)
            self.fail_json(msg=to_native(e), rc=RC_INVALID, errors=e.messages)
        configure_logging(self.params['verbosity'])

    def warn(self, msg):
        self.warnings.append(msg)
        self.log.warning(msg)

    @contextmanager
    def simulation(self):
        """
        Execute the simulation block.

        When the block has finished, call :func:`exit_json` to emit the result.
        """
        self._started = datetime.datetime.utcnow()
        yield
        self.exit_json(**self.result)

    def run(self):
        raise NotImplementedError()

    def set_result(self, payload, csv_table=None):
        self.result = payload
        self.csv_table = csv_table

    def scenario_payload(self, params, estimate, analytic=None, oracle=None, details=None):
        return dict(
            scenario=self.scenario,
            params=params,
            n=estimate.trials,
            k=estimate.successes,
            p_hat=estimate.point_estimate,
            ci_low=estimate.ci_low,
            ci_high=estimate.ci_high,
            analytic=analytic,
            oracle=oracle,
            verdict=estimate.verdict,
            seed=self.params['seed'],
            details=details or {},
        )

    def log_trials(self, experiment):
        if self.params.get('trial_log'):
            write_trial_log(self.params['trial_log'], experiment, self.params['trials'], self.params['seed'])

    def _render(self, payload):
        if self.params['format'] == 'csv':
            if self.csv_table is not None:
                return dump_csv(*self.csv_table)
            return dump_csv(PAYLOAD_KEYS, [payload])
        return dump_json(payload)

    def _write_meta(self, path):
        meta = dict(
            scenario=self.scenario,
            started=self._started.isoformat() if self._started else None,
            finished=datetime.datetime.utcnow().isoformat(),
            warnings=self.warnings,
            exit_code=self.exit_code,
        )
        with io.open(path, 'w', encoding='utf-8') as meta_file:
            meta_file.write(dump_json(meta))

    def exit_json(self, **payload):
        text = self._render(payload)
        out = self.params.get('out')
        if out:
            with io.open(out, 'w', encoding='utf-8', newline='') as out_file:
                out_file.write(text)
            self._write_meta('{0}.meta.json'.format(out))
        else:
            self.stdout.write(text)
        sys.exit(self.exit_code)

    def fail_json(self, msg, rc=RC_FAILURE, **kwargs):
        kwargs.update(failed=True, msg=msg)
        logging.getLogger(LOGGER_NAME).error(msg)
        self.stdout.write(dump_json(kwargs))
        sys.exit(rc)

    def fail_from_exception(self, exc, msg):
        self.fail_json(msg=msg, exception=exc.__class__.__name__)
