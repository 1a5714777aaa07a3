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
module: markov
version_added: 1.0.0
short_description: Walk a finite track with reflecting barriers
description:
  - Stations 1 to I(stations); the end stations move inward, every other station moves to either neighbour with probability 1/2.
  - The stationary distribution is solved exactly and compared with its closed form.
  - With I(destination) a passenger who always answers East estimates the probability that the train came from the west.
  - Without it the passenger only wakes up at destinations at least I(min_end_distance) stations from an end and
    guesses the direction of approach with a pointer.
options:
  stations:
    description:
      - Number of stations, at least 3.
    required: true
    type: int
  destination:
    description:
      - Interior destination station to estimate the origin posterior at.
    type: int
  min_end_distance:
    description:
      - Minimum distance of a wake-up destination from either end.
    default: 3
    type: int
extends_documentation_fragment:
  - pointersim.simulation
  - pointersim.simulation.POINTER
'''

EXAMPLES = '''
- name: "Wake-up filter on a 10-station track"
  pointersim.markov:
    stations: 10

- name: "Origin posterior next to the western end"
  pointersim.markov:
    stations: 10
    destination: 2
'''

RETURN = '''
details:
  description: Solved and closed-form stationary distributions, their largest deviation and the eligible destinations
  returned: success
  type: dict
'''


from functools import partial

from pointersim.module_utils import markov
from pointersim.module_utils.pointer import ContinuousPointer
from pointersim.module_utils.simulation_helper import SimulationModule, _exception2fail_json
from pointersim.module_utils.stats import run_trials


markov_spec = dict(
    stations=dict(type='int', required=True, minimum=markov.MIN_STATIONS, label='N'),
    destination=dict(type='int'),
    min_end_distance=dict(type='int', default=3, minimum=1),
    pointer=dict(type='pointer'),
)


class MarkovModule(SimulationModule):

    scenario = 'markov'

    @_exception2fail_json(msg='Markov simulation failed: {0}')
    def run(self):
        chain = markov.ReflectingChain(self.params['stations'])
        solved = markov.stationary_distribution(chain)
        closed = markov.closed_form_stationary(chain)
        details = dict(
            stationary=solved,
            closed_form=closed,
            max_deviation=float(max(abs(solved - closed))),
        )
        destination = self.params['destination']
        dist = self.params['pointer']
        if destination is not None:
            west, east = markov.origin_posterior(chain, destination)
            details['posterior'] = dict(west=west, east=east)
            experiment = partial(markov.simulate_origin_side, chain, destination)
            analytic, oracle = 0.5, west
        else:
            if dist is None:
                dist = ContinuousPointer.uniform(0, chain.station_count + 1)
            min_end_distance = self.params['min_end_distance']
            details['eligible'] = markov.wake_filter(chain, min_end_distance)
            experiment = partial(markov.simulate_wake_postdiction, chain, dist, min_end_distance=min_end_distance)
            analytic = markov.analytic_wake_success(chain, dist, min_end_distance)
            oracle = markov.exact_wake_success(chain, dist, min_end_distance)
        estimate = run_trials(experiment, self.params['trials'], self.params['seed'], confidence=self.params['confidence'],
                              target=oracle, workers=self.params['workers'])
        self.log_trials(experiment)
        params = dict(stations=chain.station_count, destination=destination,
                      min_end_distance=self.params['min_end_distance'], pointer=dist)
        self.set_result(self.scenario_payload(params, estimate, analytic=analytic, oracle=oracle, details=details))


def main(argv=None):
    module = MarkovModule(simulation_spec=markov_spec, argv=argv)

    with module.simulation():
        module.run()


if __name__ == '__main__':
    main()
