# -*- coding: utf-8 -*-
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""
``pointersim <subcommand> [options]``
"""

import importlib
import sys

from pointersim.module_utils.core import ConfigError
from pointersim.module_utils.simulation_helper import ExperimentConfig, load_parameters

SUBCOMMANDS = ('envelope', 'rail', 'circular', 'markov', 'verify')

USAGE = """usage: pointersim {{{0}}} [options]

Run `pointersim <subcommand> --help` for the options of a subcommand.
""".format(','.join(SUBCOMMANDS))


def subcommand_module(name):
    if name not in SUBCOMMANDS:
        raise ConfigError("unknown subcommand '{0}', expected one of {1}".format(name, ', '.join(SUBCOMMANDS)))
    return importlib.import_module('pointersim.modules.{0}'.format(name))


def subcommand_spec(name):
    return getattr(subcommand_module(name), '{0}_spec'.format(name))


def parse_config(argv):
    """Validate ``[subcommand, options...]`` without running anything; raises :class:`ConfigError`."""
    if not argv:
        raise ConfigError("a subcommand is required")
    name, options = argv[0], list(argv[1:])
    spec = subcommand_spec(name)
    params = load_parameters('pointersim {0}'.format(name), spec, options)
    return ExperimentConfig(name, {key: params.get(key) for key in spec}, params['trials'], params['seed'],
                            params['confidence'], params['format'])


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] in ('-h', '--help'):
        sys.stdout.write(USAGE)
        return 0 if argv else 2
    try:
        module = subcommand_module(argv[0])
    except ConfigError as e:
        sys.stderr.write('{0}\n{1}'.format(e, USAGE))
        return 2
    module.main(argv[1:])
    return 0


if __name__ == '__main__':
    sys.exit(main())
