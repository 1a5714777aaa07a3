import importlib

import pytest
import yaml

from pointersim.doc_fragments.simulation import ModuleDocFragment
from pointersim.module_utils.simulation_helper import global_simulation_spec

from .test_module_state import ALL_MODULES


def _fragment_options(name):
    _collection, _fragment, *section = name.split('.')
    text = getattr(ModuleDocFragment, section[0] if section else 'DOCUMENTATION')
    return yaml.safe_load(text)['options']


def _documented_options(module):
    documentation = yaml.safe_load(module.DOCUMENTATION)
    options = {}
    for fragment in documentation.get('extends_documentation_fragment', []):
        options.update(_fragment_options(fragment))
    options.update(documentation.get('options') or {})
    return documentation, options


@pytest.mark.parametrize('name', ALL_MODULES)
def test_documented_options_match_spec(name):
    module = importlib.import_module('pointersim.modules.{0}'.format(name))
    documentation, options = _documented_options(module)
    spec = getattr(module, '{0}_spec'.format(name))
    expected = set(spec) | {key for key, value in global_simulation_spec.items() if not value.get('invisible')}
    assert documentation['module'] == name
    assert set(options) == expected


@pytest.mark.parametrize('name', ALL_MODULES)
def test_documented_defaults_match_spec(name):
    module = importlib.import_module('pointersim.modules.{0}'.format(name))
    _documentation, options = _documented_options(module)
    spec = dict(global_simulation_spec, **getattr(module, '{0}_spec'.format(name)))
    for key, option in options.items():
        assert option.get('default') == spec[key].get('default'), key
        assert option.get('required', False) == spec[key].get('required', False), key


@pytest.mark.parametrize('name', ALL_MODULES)
def test_examples_and_return_are_yaml(name):
    module = importlib.import_module('pointersim.modules.{0}'.format(name))
    assert isinstance(yaml.safe_load(module.EXAMPLES), list)
    assert isinstance(yaml.safe_load(module.RETURN), dict)


@pytest.mark.parametrize('name', ALL_MODULES)
def test_documented_aliases_match_spec(name):
    module = importlib.import_module('pointersim.modules.{0}'.format(name))
    _documentation, options = _documented_options(module)
    spec = dict(global_simulation_spec, **getattr(module, '{0}_spec'.format(name)))
    for key, option in options.items():
        assert option.get('aliases', []) == spec[key].get('aliases', []), key
