#!/usr/bin/env python3
# Copyright 2026 The evreq authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent brute-force oracle for cross-checking the C++ solver.

Re-derives the strategic optimum from the model description alone, using
Python fractions: backward-induction best response with the indifference
rule (follow the recommendation, disclose), exact play, principal payoff,
all 8192 mechanisms. Shares no code with the C++ implementation.

Usage:
    scripts/crosscheck.py RHO MU0 PI C K      (rationals, e.g. 7/10)

Prints the strategic best W and the first few argmax indices; compare with
`evreq solve`.
"""
import sys
from fractions import Fraction

NULL, LOW, HIGH = 0, 1, 2
NONE, SAW0, SAW1 = 0, 1, 2
STATES = [(NONE, NULL), (SAW0, NULL), (SAW0, LOW), (SAW1, NULL), (SAW1, HIGH)]


def decode(index):
    sigma1 = index & 1
    sigma2 = [(index >> (1 + i)) & 1 for i in range(3)]
    xhat = [[(index >> (4 + 3 * i + j)) & 1 for j in range(3)] for i in range(3)]
    return sigma1, sigma2, xhat


def belief(rho, mu0, observation):
    if observation == SAW1:
        return rho
    if observation == SAW0:
        return 1 - rho
    return rho * mu0 + (1 - rho) * (1 - mu0)


def best_response(params, mech):
    rho, mu0, pi, c, _ = params
    sigma1, sigma2, xhat = mech
    v2, e2, d2 = {}, {}, {}
    for (o1, r1) in STATES:
        mu = belief(rho, mu0, o1)
        x_null = xhat[r1][NULL]
        reveal = [xhat[r1][LOW] >= x_null, xhat[r1][HIGH] >= x_null]
        e_opt = mu * max(xhat[r1][HIGH], x_null) + (1 - mu) * max(xhat[r1][LOW], x_null)
        test, wait = e_opt - c, pi * e_opt + (1 - pi) * x_null
        e2[(o1, r1)] = 1 if test > wait else (0 if test < wait else sigma2[r1])
        v2[(o1, r1)] = max(test, wait)
        d2[(o1, r1)] = reveal
    d1, after = [], []
    for w in (0, 1):
        obs = SAW1 if w else SAW0
        rep = HIGH if w else LOW
        d1.append(v2[(obs, rep)] >= v2[(obs, NULL)])
        after.append(max(v2[(obs, rep)], v2[(obs, NULL)]))
    mean = mu0 * after[1] + (1 - mu0) * after[0]
    test, wait = mean - c, pi * mean + (1 - pi) * v2[(NONE, NULL)]
    e1 = 1 if test > wait else (0 if test < wait else sigma1)
    return e1, d1, e2, d2


def principal_w(params, mech):
    rho, mu0, pi, _, k = params
    _, _, xhat = mech
    e1, d1, e2, d2 = best_response(params, mech)
    total = Fraction(0)
    for w1 in (0, 1):
        p_w1 = mu0 if w1 else 1 - mu0
        first = [(SAW1 if w1 else SAW0, Fraction(1))] if e1 else \
            ([(SAW1 if w1 else SAW0, pi)] if pi else []) + [(NONE, 1 - pi)]
        for (o1, p1) in first:
            r1 = (HIGH if w1 else LOW) if (o1 != NONE and d1[w1]) else NULL
            state = (o1, r1)
            tests2 = e2[state]
            for w2 in (0, 1):
                p_w2 = rho if w2 == w1 else 1 - rho
                second = [(SAW1 if w2 else SAW0, Fraction(1))] if tests2 else \
                    ([(SAW1 if w2 else SAW0, pi)] if pi else []) + [(NONE, 1 - pi)]
                for (o2, p2) in second:
                    r2 = (HIGH if w2 else LOW) if (o2 != NONE and d2[state][w2]) else NULL
                    x = xhat[r1][r2]
                    prob = p_w1 * p1 * p_w2 * p2
                    total += prob * ((1 if x == w2 else 0) - k * (e1 + tests2))
    return total


def main(argv):
    if len(argv) != 6:
        print(__doc__)
        return 2
    params = tuple(Fraction(a) for a in argv[1:])
    best, argmax = None, []
    for index in range(8192):
        w = principal_w(params, decode(index))
        if best is None or w > best:
            best, argmax = w, [index]
        elif w == best:
            argmax.append(index)
    print(f"strategic best W = {best}")
    print(f"argmax size {len(argmax)}, first {argmax[:8]}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
