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
module: circular
version_added: 1.0.0
short_description: Guess the direction of approach on a circular track
description:
  - Stations 0 to I(stations) - 1 sit clockwise on a circle and arc C(j) lies between station C(j - 1) and station C(j).
    The pointer is only known by the arc it lies on.
  - The passenger guesses clockwise iff the pointer lies on the clockwise arc from the current station to the reference station.
  - Without I(destination) the train starts at a uniform station and the coin decides the direction afterwards.
    With I(destination) the run is conditioned on arriving there.
options:
  stations:
    description:
      - Number of stations, at least 5.
    required: true
    type: int
  arcs:
    description:
      - Arc weights, C(uniform) or C(arcs:w0,w1,...) with one weight per station.
      - Weights may be integers, decimals or fractions such as C(1/10) and must sum to 1.
    default: uniform
    type: str
  rs_policy:
    description:
      - Where the reference station sits, C(opposite) the passenger or C(fixed:<index>).
      - A fixed reference station that coincides with the passenger's station is replaced by the diametric station.
    default: opposite
    type: str
  destination:
    description:
      - Condition the run on this destination station.
    type: int
  heads_probability:
    description:
      - Heads probability of the coin. Closed forms are withheld for a biased coin.
    default: 0.5
    type: float
extends_documentation_fragment:
  - pointersim.simulation
'''

EXAMPLES = '''
- name: "Ten stations, reference station opposite the passenger"
  pointersim.circular:
    stations: 10

- name: "Per-destination success with the reference station at 0"
  pointersim.circular:
    stations: 10
    arcs: "arcs:1/55,2/55,3/55,4/55,5/55,6/55,7/55,8/55,9/55,10/55"
    rs_policy: "fixed:0"
    destination: 5
'''

RETURN = '''
analytic:
  description: The claimed success, (1 + p_k + p_(k+1)) / 2 for a destination and 1/2 + 1/stations on average
  returned: success unless a biased coin is used or the reference station lies in the minor arc
  type: float
oracle:
  description: Exact success of the forward model by enumeration
  returned: success
  type: float
'''


from functools import partial

from pointersim.module_utils import circular
from pointersim.module_utils.core import Coin, InvalidParameterError
from pointersim.module_utils.simulation_helper import SimulationModule, _exception2fail_json
from pointersim.module_utils.stats import run_trials


circular_spec = dict(
    stations=dict(type='int', required=True, minimum=circular.MIN_REFERENCE_STATIONS,
                  maximum=circular.MAX_ENUMERATION_STATIONS, label='stationCount'),
    arcs=dict(type='arcs', default='uniform', count_from='stations'),
    rs_policy=dict(type='rs_policy', default='opposite'),
    destination=dict(type='int', minimum=0),
    heads_probability=dict(type='float', default=0.5, between=(0.0, 1.0)),
)


class CircularModule(SimulationModule):

    scenario = 'circular'

    def _claimed_conditional(self, track, k, policy, coin):
        if not coin.is_fair:
            return None
        if policy.kind == circular.FIXED:
            if k not in circular.valid_fixed_destinations(track, policy.station):
                self.warn("reference station {0} lies inside the minor arc around destination {1}: claimed success withheld".format(policy.station, k))
                return None
            return circular.claimed_conditional_success(track, k, policy.station)
        return circular.claimed_conditional_formula(track, k)

    @_exception2fail_json(msg='Circular simulation failed: {0}')
    def run(self):
        track = circular.CircularTrack(self.params['stations'], self.params['arcs'])
        policy = self.params['rs_policy']
        coin = Coin(self.params['heads_probability'])
        if policy.kind == circular.FIXED and policy.station >= track.station_count:
            raise InvalidParameterError("rs_policy: fixed reference station {0} outside 0..{1}".format(policy.station, track.station_count - 1))
        k = self.params['destination']
        details = dict(rs_policy=policy.to_spec(), arcs=track.arcs.to_spec())
        if k is not None:
            k %= track.station_count
            experiment = partial(circular.simulate_given_destination, track, k, policy, coin=coin)
            analytic = self._claimed_conditional(track, k, policy, coin)
            oracle = circular.conditional_success_given_destination(track, k, policy, coin=coin)
        else:
            experiment = partial(circular.simulate_forward, track, policy, coin=coin)
            analytic = circular.claimed_average_success(track) if coin.is_fair else None
            oracle = circular.enumerate_exact(track, policy, coin=coin)
        if not coin.is_fair:
            self.warn("heads probability {0} is not 1/2: closed-form success withheld".format(coin.heads_probability))
        if analytic is not None:
            details['claimed_minus_oracle'] = float(analytic) - float(oracle)
        estimate = run_trials(experiment, self.params['trials'], self.params['seed'], confidence=self.params['confidence'],
                              target=oracle, workers=self.params['workers'])
        self.log_trials(experiment)
        params = {key: self.params[key] for key in circular_spec}
        self.set_result(self.scenario_payload(params, estimate, analytic=analytic, oracle=oracle, details=details))


def main(argv=None):
    module = CircularModule(simulation_spec=circular_spec, argv=argv)

    with module.simulation():
        module.run()


if __name__ == '__main__':
    main()
