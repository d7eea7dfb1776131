#!/usr/bin/env python3
"""Build the ingestion file for the cubic field defined by x^3 - 10x + 1.

Finds S-units for S = places above 2 by a small search, keeps a subset of
minimal S-regulator, and writes posdiv-field/1 JSON.  The C++ loader checks
rank and 2-saturation independently.
"""
import argparse
import itertools
import json

import mpmath
import numpy as np
from sympy import Poly, ZZ, symbols, resultant, factor_list, GF
from sympy.polys.factortools import dup_zz_hensel_lift

x = symbols("x")
POLY = [1, -10, 0, 1]  # ascending
PREC = 256


def f_poly():
    return Poly(sum(c * x**i for i, c in enumerate(POLY)), x)


def norm(elt):
    a = Poly(sum(c * x**i for i, c in enumerate(elt)), x)
    return int(resultant(f_poly().as_expr(), a.as_expr(), x))


def v2(n):
    n = abs(n)
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    return k


def dyadic_factors():
    f = f_poly()
    facs = [Poly(g, x, modulus=2) for g, _ in factor_list(f.as_expr(), modulus=2)[1]]
    lifted = dup_zz_hensel_lift(ZZ(2), [ZZ(c) for c in f.all_coeffs()],
                                [[ZZ(int(c) % 2) for c in g.all_coeffs()] for g in facs], PREC, ZZ)
    out = []
    for g in lifted:
        coeffs = [int(c) % 2**PREC for c in reversed(g)]
        out.append(coeffs)
    out.sort(key=len)
    return out


def local_valuation(elt, factor):
    """v at the place cut out by the lifted factor: v2(Res(factor, elt)) / deg."""
    g = sum(c * x**i for i, c in enumerate(factor))
    a = sum(c * x**i for i, c in enumerate(elt))
    r = int(resultant(g, a, x)) % 2**PREC
    if r == 0:
        raise ValueError("precision exhausted")
    return v2(r) // (len(factor) - 1)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out")
    ap.add_argument("--bound", type=int, default=4)
    args = ap.parse_args()

    mpmath.mp.dps = 60
    roots = sorted(mpmath.polyroots(list(reversed(POLY))), key=lambda z: mpmath.re(z))
    roots = [mpmath.re(r) for r in roots]
    factors = dyadic_factors()

    fr = [float(r) for r in roots]
    cands = {}
    B = args.bound
    for a, b, c in itertools.product(range(-B, B + 1), repeat=3):
        emb = [a + b * r + c * r * r for r in fr]
        n = round(emb[0] * emb[1] * emb[2])
        if n == 0 or (abs(n) >> v2(n)) != 1:
            continue
        elt = [a, b, c]
        if norm(elt) != n:
            continue
        vals = [local_valuation(elt, g) for g in factors]
        key = tuple(round(abs(e), 9) for e in emb)
        if key not in cands:
            cands[key] = (elt, vals, [float(np.log(abs(e))) for e in emb[:2]])
    cands = sorted(cands.values(), key=lambda t: sum(map(abs, t[0])))[:40]

    best = None
    for combo in itertools.combinations(range(len(cands)), 4):
        M = np.array([[*cands[i][2], *cands[i][1]] for i in combo])
        d = abs(np.linalg.det(M))
        if d > 1e-6 and (best is None or d < best[0] - 1e-6):
            best = (d, combo)
    two_units = [cands[i][0] for i in best[1]]

    # generators cutting out each dyadic place
    gens = []
    for k, g in enumerate(factors):
        for elt in itertools.product(range(-3, 4), repeat=3):
            elt = list(elt)
            if norm(elt) == 0:
                continue
            vs = [local_valuation(elt, h) for h in factors]
            if vs[k] == 1 and all(vs[j] == 0 for j in range(len(factors)) if j != k):
                gens.append(elt)
                break

    intervals = []
    for r in roots:
        lo = mpmath.floor(r * 1000) / 1000
        intervals.append([f"{int(lo * 1000)}/1000", f"{int(lo * 1000) + 1}/1000"])

    doc = {
        "schema": "posdiv-field/1",
        "id": "x^3-10x+1",
        "poly": POLY,
        "integral_basis": [[1], [0, 1], [0, 0, 1]],
        "signature": [3, 0],
        "disc": 3973,
        "class_number": 1,
        "class_group": [],
        "two_units": two_units,
        "torsion_order": 2,
        "dyadic_places": [
            {"e": 1, "f": len(g) - 1, "gens": [2, gens[k]], "local_factor": [str(c) for c in g], "precision": PREC}
            for k, g in enumerate(factors)
        ],
        "real_roots": intervals,
    }
    with open(args.out, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    print("S-regulator", best[0], "two_units", two_units)


if __name__ == "__main__":
    main()
