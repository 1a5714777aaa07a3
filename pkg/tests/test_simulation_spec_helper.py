from pointersim.module_utils.simulation_helper import _simulation_spec_helper


def test_empty_spec():
    spec = {}
    simulation_spec, argument_spec = _simulation_spec_helper(spec)
    assert spec == {}
    assert simulation_spec == {}
    assert argument_spec == {}


def test_full_spec():
    spec = {
        'name': {},
        'count': {'type': 'int', 'aliases': ['number'], 'minimum': 5, 'label': 'stationCount'},
        'level': {'type': 'float', 'default': 0.5, 'between': (0.0, 1.0)},
        'pointer': {'type': 'pointer', 'required': True},
        'arcs': {'type': 'arcs', 'default': 'uniform', 'count_from': 'count'},
        'policy': {'type': 'rs_policy'},
        'names': {'type': 'station_names'},
        'config': {'type': 'path', 'invisible': True},
    }
    simulation_spec, argument_spec = _simulation_spec_helper(spec)
    assert spec['count'] == {'type': 'int', 'aliases': ['number'], 'minimum': 5, 'label': 'stationCount'}
    assert simulation_spec == {
        'name': {},
        'count': {'type': 'int', 'minimum': 5, 'label': 'stationCount'},
        'level': {'type': 'float', 'between': (0.0, 1.0)},
        'pointer': {'type': 'pointer'},
        'arcs': {'type': 'arcs', 'count_from': 'count'},
        'policy': {'type': 'rs_policy'},
        'names': {'type': 'station_names'},
        'config': {'type': 'path'},
    }
    assert argument_spec == {
        'name': {},
        'count': {'type': 'int', 'aliases': ['number']},
        'level': {'type': 'float', 'default': 0.5},
        'pointer': {'type': 'str', 'required': True},
        'arcs': {'type': 'str', 'default': 'uniform'},
        'policy': {'type': 'str'},
        'names': {'type': 'path'},
        'config': {'type': 'path'},
    }
