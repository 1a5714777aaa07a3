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
#

from __future__ import absolute_import, division, print_function
__metaclass__ = type


class ModuleDocFragment(object):

    # Options shared by every subcommand
    DOCUMENTATION = '''
requirements:
  - numpy
  - scipy
options:
  trials:
    description:
      - Number of Monte Carlo trials.
      - If the value is not specified, the value of environment variable C(POINTERSIM_TRIALS) will be used instead.
    default: 1000000
    type: int
  seed:
    description:
      - Master seed, a non-negative 64-bit integer. Trials are split into chunks and chunk C(c) draws from the stream (seed, c).
      - If the value is not specified, the value of environment variable C(POINTERSIM_SEED) will be used instead.
    default: 0
    type: int
  confidence:
    description:
      - Confidence level of the reported Wilson interval.
      - If the value is not specified, the value of environment variable C(POINTERSIM_CONFIDENCE) will be used instead.
    default: 0.95
    type: float
  format:
    description:
      - Output format of the result.
      - If the value is not specified, the value of environment variable C(POINTERSIM_FORMAT) will be used instead.
    default: json
    choices:
      - json
      - csv
    type: str
  out:
    description:
      - Write the result to this file instead of stdout.
      - Timestamps and warnings go to C(<out>.meta.json).
    type: path
  workers:
    description:
      - Number of worker processes running trial chunks. The counts do not depend on it.
      - If the value is not specified, the value of environment variable C(POINTERSIM_WORKERS) will be used instead.
    default: 1
    type: int
  trial_log:
    description:
      - Write one CSV row per trial to this file.
    type: path
  verbosity:
    description:
      - Log level on stderr, given as C(-v) (info) or C(-vv) (debug).
    default: 0
    type: int
'''

    POINTER = '''
options:
  pointer:
    description:
      - Pointer distribution, one of C(uniform:a,b), C(exp:rate) or C(normal:mean,sd).
    type: str
'''
