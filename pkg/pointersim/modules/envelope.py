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
module: envelope
version_added: 1.0.0
short_description: Play Blackwell's Bet
description:
  - Two envelopes hold a lesser and a greater amount. The player opens one at random, draws an independent pointer
    and switches iff the pointer exceeds the amount seen.
  - With I(postdiction) a coin decides which labelled envelope holds the greater amount and the label finally kept
    is the guess of the toss.
options:
  pointer:
    description:
      - Pointer distribution, one of C(uniform:a,b), C(exp:rate) or C(normal:mean,sd).
    required: true
    type: str
  lesser:
    description:
      - The lesser amount, strictly positive.
    required: true
    type: float
  greater:
    description:
      - The greater amount, strictly above I(lesser).
    required: true
    type: float
  postdiction:
    description:
      - Let a coin decide which envelope label holds the greater amount.
    default: false
    type: bool
  heads_probability:
    description:
      - Heads probability of the coin used with I(postdiction).
    default: 0.5
    type: float
extends_documentation_fragment:
  - pointersim.simulation
'''

EXAMPLES = '''
- name: "Uniform pointer over [0, 3] with amounts 1 and 2"
  pointersim.envelope:
    pointer: "uniform:0,3"
    lesser: 1
    greater: 2
    seed: 42

- name: "Same bet read as a postdiction of a coin toss"
  pointersim.envelope:
    pointer: "exp:0.5"
    lesser: 1
    greater: 2
    postdiction: true
'''

RETURN = '''
p_hat:
  description: Fraction of rounds that ended with the greater amount
  returned: success
  type: float
analytic:
  description: Closed-form success 1 - (p + q) / 2
  returned: success
  type: float
details:
  description: Pointer mass below the lesser amount (p), above the greater amount (q) and between them (r)
  returned: success
  type: dict
'''


from functools import partial

from pointersim.module_utils.core import Coin
from pointersim.module_utils.envelope import EnvelopePair, analytic_success, play_postdiction_round, play_round
from pointersim.module_utils.pointer import gap_probabilities
from pointersim.module_utils.simulation_helper import SimulationModule, _exception2fail_json
from pointersim.module_utils.stats import run_trials


envelope_spec = dict(
    pointer=dict(type='pointer', required=True),
    lesser=dict(type='float', required=True),
    greater=dict(type='float', required=True),
    postdiction=dict(type='bool', default=False),
    heads_probability=dict(type='float', default=0.5, between=(0.0, 1.0)),
)


class EnvelopeModule(SimulationModule):

    scenario = 'envelope'

    @_exception2fail_json(msg='Envelope simulation failed: {0}')
    def run(self):
        dist = self.params['pointer']
        pair = EnvelopePair(self.params['lesser'], self.params['greater'])
        if self.params['postdiction']:
            experiment = partial(play_postdiction_round, pair, dist, Coin(self.params['heads_probability']))
        else:
            experiment = partial(play_round, pair, dist)
        analytic = analytic_success(dist, pair)
        gaps = gap_probabilities(dist, pair.lesser, pair.greater)
        estimate = run_trials(experiment, self.params['trials'], self.params['seed'], confidence=self.params['confidence'],
                              target=analytic, workers=self.params['workers'])
        self.log_trials(experiment)
        params = dict(pointer=dist, lesser=pair.lesser, greater=pair.greater, postdiction=self.params['postdiction'],
                      heads_probability=self.params['heads_probability'])
        self.set_result(self.scenario_payload(params, estimate, analytic=analytic, oracle=analytic, details=gaps._asdict()))


def main(argv=None):
    module = EnvelopeModule(simulation_spec=envelope_spec, argv=argv)

    with module.simulation():
        module.run()


if __name__ == '__main__':
    main()
