import importlib
import json
import math

import pytest

from .conftest import TEST_CONFIGS, TEST_CONFIGS_PATH


def run_config(name, tmpdir):
    module = importlib.import_module('pointersim.modules.{0}'.format(name))
    out = tmpdir / '{0}.json'.format(name)
    with pytest.raises(SystemExit) as excinfo:
        module.main(['--config', str(TEST_CONFIGS_PATH / '{0}.yml'.format(name)), '--out', str(out)])
    return excinfo.value.code, json.loads(out.read()), out


@pytest.mark.parametrize('name', TEST_CONFIGS)
def test_config_runs(name, tmpdir):
    code, payload, out = run_config(name, tmpdir)
    assert code == 0
    assert (tmpdir / '{0}.json.meta.json'.format(name)).check()
    if name == 'verify':
        assert payload['failures'] == 0
        assert len(payload['rows']) >= 10
    else:
        assert payload['scenario'] == name
        assert abs(payload['p_hat'] - payload['oracle']) <= 5 * math.sqrt(0.25 / payload['n'])
        assert payload['ci_low'] <= payload['p_hat'] <= payload['ci_high']
