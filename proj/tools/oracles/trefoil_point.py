#!/usr/bin/env python3
"""Find a rational point on the 2-strand trefoil augmentation system with sympy.

System: 1 + P1(z1)...P1(z5) diag(t, 1) = 0, unknowns z1..z5 and t != 0.
Writes {"z": [...], "t": [...]} as JSON to the given path (or stdout).
"""
import itertools
import json
import sys

import sympy as sp


def p_matrix(a):
    return sp.Matrix([[0, 1], [1, a]])


def main():
    z = sp.symbols("z1:6")
    t = sp.Symbol("t")
    prod = sp.eye(2)
    for zi in z:
        prod = prod * p_matrix(zi)
    res = sp.eye(2) + prod * sp.diag(t, 1)
    eqs = [sp.expand(e) for e in res]
    for z4, z5 in itertools.product(range(-2, 3), repeat=2):
        sub = [sp.expand(e.subs({z[3]: z4, z[4]: z5})) for e in eqs]
        for sol in sp.solve(sub, [z[0], z[1], z[2], t], dict=True):
            vals = [sol.get(v, v) for v in (z[0], z[1], z[2], t)]
            if any(not v.is_Rational for v in vals):
                continue
            if vals[3] == 0:
                continue
            point = {"z": [str(v) for v in vals[:3]] + [str(z4), str(z5)], "t": [str(vals[3])]}
            check = res.subs({z[0]: vals[0], z[1]: vals[1], z[2]: vals[2], z[3]: z4, z[4]: z5, t: vals[3]})
            assert check == sp.zeros(2, 2)
            text = json.dumps(point)
            if len(sys.argv) > 1:
                with open(sys.argv[1], "w") as fh:
                    fh.write(text + "\n")
            else:
                print(text)
            return 0
    print("no rational point found", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
