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
module: verify
version_added: 1.0.0
short_description: Run the claim suite
description:
  - Runs every scenario claim and lists the claimed value, the exact oracle value and a Monte Carlo estimate side by side.
  - A claim whose closed form differs from its oracle while the simulation sides with the oracle is reported as a FINDING.
    A simulation that contradicts the reference value is a FAILURE and makes the command exit with code 3.
  - I(trials) is the budget per claim and must be at least 100000.
  - Batch rows count how many of a set of sub-checks passed over random pointers, random tracks, chain sizes 3 to 50,
    Wilson coverage replicates, worker layouts and station renamings. Any shortfall is a FAILURE.
  - A fixed width table is printed to stderr.
options:
  agreement_confidence:
    description:
      - Confidence level of the Wilson interval used to decide whether a simulation agrees with its reference value.
    default: 0.9999
    type: float
extends_documentation_fragment:
  - pointersim.simulation
'''

EXAMPLES = '''
- name: "Full suite with a smaller budget"
  pointersim.verify:
    trials: 100000
    seed: 7
'''

RETURN = '''
rows:
  description: One entry per claim with claim, description, claimed, oracle, n, k, p_hat, ci_low, ci_high and verdict
  returned: success
  type: list
  elements: dict
findings:
  description: Number of FINDING rows
  returned: success
  type: int
failures:
  description: Number of FAILURE rows
  returned: success
  type: int
'''


import sys

from pointersim.module_utils.simulation_helper import RC_DISAGREEMENT, SimulationModule, _exception2fail_json
from pointersim.module_utils.verification import VerificationRow, format_table, verify_all


verify_spec = dict(
    agreement_confidence=dict(type='float', default=0.9999, between=(0.0, 1.0)),
)


class VerifyModule(SimulationModule):

    scenario = 'verify'

    @_exception2fail_json(msg='Verification failed: {0}')
    def run(self):
        report = verify_all(
            seed=self.params['seed'],
            trial_budget=self.params['trials'],
            workers=self.params['workers'],
            confidence=self.params['confidence'],
            agreement_confidence=self.params['agreement_confidence'],
        )
        sys.stderr.write(format_table(report) + '\n')
        if report.failures:
            self.exit_code = RC_DISAGREEMENT
        payload = report.to_dict()
        self.set_result(payload, csv_table=(VerificationRow._fields, payload['rows']))


def main(argv=None):
    module = VerifyModule(simulation_spec=verify_spec, argv=argv)

    with module.simulation():
        module.run()


if __name__ == '__main__':
    main()
