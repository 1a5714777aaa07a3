#!/usr/bin/python
# -*- coding: utf-8 -*-
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

from __future__ import absolute_import, division, print_function
__metaclass__ = type


DOCUMENTATION = '''
---
module: rail
version_added: 1.0.0
short_description: Ride the linear Random Railroad
description:
  - Stations sit one unit apart and are numbered west to east. A coin decides whether the train moves east (heads)
    or west (tails); the passenger guesses the direction by comparing an independent pointer with the current station.
  - C(postdiction) announces the destination, the origin is one of its neighbours.
  - C(predict-dest-first) draws the pointer before the origin is chosen given the destination.
  - C(predict-origin-first) fixes the origin, draws the pointer and then tosses the coin.
  - C(control) is the passenger who only knows the current station.
  - With I(station_names) the track is only known by name and the passenger asks a direction oracle.
options:
  mode:
    description:
      - Which framing to simulate.
    default: postdiction
    choices:
      - postdiction
      - predict-dest-first
      - predict-origin-first
      - control
    type: str
  destination:
    description:
      - Announced destination station, required by C(postdiction) and C(predict-dest-first).
    type: int
  origin:
    description:
      - Current station, required by C(predict-origin-first) and C(control).
    type: int
  west_origin_probability:
    description:
      - Probability that the origin is the western neighbour of the destination.
      - Values other than 0.5 weaken the equiprobability hypothesis.
    default: 0.5
    type: float
  heads_probability:
    description:
      - Heads probability of the coin tossed in C(predict-origin-first) and C(control).
      - Closed forms are withheld for a biased coin.
    default: 0.5
    type: float
  station_names:
    description:
      - File with one station name per line in west to east order.
      - The passenger only sees the names in alphabetical order. Only C(postdiction) is supported.
    type: path
    aliases:
      - stations
extends_documentation_fragment:
  - pointersim.simulation
  - pointersim.simulation.POINTER
'''

EXAMPLES = '''
- name: "Destination 4 announced, uniform pointer over [0, 10]"
  pointersim.rail:
    pointer: "uniform:0,10"
    destination: 4

- name: "Negative control at station 5"
  pointersim.rail:
    mode: control
    pointer: "uniform:0,10"
    origin: 5

- name: "Named stations"
  pointersim.rail:
    station_names: stations.txt
'''

RETURN = '''
analytic:
  description: Closed-form success, (1 + r) / 2 for the postdiction framings and 1/2 for the control
  returned: success unless a biased coin is used
  type: float
oracle:
  description: Exact success of the simulated protocol
  returned: success
  type: float
'''


from functools import partial

from pointersim.module_utils import railroad
from pointersim.module_utils.core import Coin, InvalidParameterError, Mode
from pointersim.module_utils.pointer import gap_probabilities
from pointersim.module_utils.simulation_helper import SimulationModule, _exception2fail_json
from pointersim.module_utils.stats import run_trials

CONTROL = 'control'

rail_spec = dict(
    mode=dict(default=Mode.POSTDICTION.value, choices=[mode.value for mode in Mode] + [CONTROL]),
    pointer=dict(type='pointer'),
    destination=dict(type='int'),
    origin=dict(type='int'),
    west_origin_probability=dict(type='float', default=0.5, minimum=0.0, maximum=1.0),
    heads_probability=dict(type='float', default=0.5, between=(0.0, 1.0)),
    station_names=dict(type='station_names', aliases=['stations']),
)


class RailModule(SimulationModule):

    scenario = 'rail'

    def _named(self, coin):
        if self.params['mode'] != Mode.POSTDICTION.value:
            raise InvalidParameterError("station_names only supports mode postdiction, got {0}".format(self.params['mode']))
        track = railroad.NamedTrack(self.params['station_names'])
        experiment = partial(railroad.simulate_named_postdiction, track)
        details = dict(stations=len(track), names=list(track.names))
        return experiment, None, railroad.enumerate_named_postdiction(track), details

    def _control(self, coin):
        origin, dist = self._require('origin'), self._require('pointer')
        experiment = partial(railroad.simulate_known_station, origin, dist, coin)
        analytic = 0.5 if coin.is_fair else None
        return experiment, analytic, railroad.enumerate_known_station(origin, dist, coin), {}

    def _linear(self, coin):
        mode = Mode(self.params['mode'])
        scenario = railroad.LinearScenario(
            destination=self.params['destination'],
            pointer=self._require('pointer'),
            mode=mode,
            origin=self.params['origin'],
            west_origin_probability=self.params['west_origin_probability'],
            coin=coin,
        )
        if mode is Mode.PREDICTION_ORIGIN_FIRST:
            gaps = gap_probabilities(scenario.pointer, scenario.origin - 1, scenario.origin + 1)
            analytic = railroad.claimed_prediction_success(scenario) if coin.is_fair else None
            return partial(railroad.simulate_prediction, scenario), analytic, railroad.enumerate_origin_first(scenario), gaps._asdict()
        gaps = gap_probabilities(scenario.pointer, scenario.destination - 1, scenario.destination + 1)
        if scenario.equiprobable:
            analytic = railroad.analytic_linear_success(scenario.pointer, scenario.destination)
        else:
            analytic = railroad.analytic_biased_origin_success(scenario.pointer, scenario.destination, scenario.west_origin_probability)
        simulate = railroad.simulate_postdiction if mode is Mode.POSTDICTION else railroad.simulate_prediction
        return partial(simulate, scenario), analytic, railroad.enumerate_postdiction(scenario), gaps._asdict()

    def _require(self, key):
        if self.params.get(key) is None:
            raise InvalidParameterError("mode {0} needs {1}".format(self.params['mode'], key))
        return self.params[key]

    @_exception2fail_json(msg='Railroad simulation failed: {0}')
    def run(self):
        coin = Coin(self.params['heads_probability'])
        if self.params['station_names'] is not None:
            experiment, analytic, oracle, details = self._named(coin)
        elif self.params['mode'] == CONTROL:
            experiment, analytic, oracle, details = self._control(coin)
        else:
            experiment, analytic, oracle, details = self._linear(coin)
        if not coin.is_fair and analytic is None:
            self.warn("heads probability {0} is not 1/2: closed-form success withheld".format(coin.heads_probability))
        estimate = run_trials(experiment, self.params['trials'], self.params['seed'], confidence=self.params['confidence'],
                              target=oracle, workers=self.params['workers'])
        self.log_trials(experiment)
        params = {key: self.params[key] for key in rail_spec if key != 'station_names'}
        self.set_result(self.scenario_payload(params, estimate, analytic=analytic, oracle=oracle, details=details))


def main(argv=None):
    module = RailModule(simulation_spec=rail_spec, argv=argv)

    with module.simulation():
        module.run()


if __name__ == '__main__':
    main()
