#!/usr/bin/env python3
"""Generate reference data for oracle-diff using sympy as an independent CAS.

Enumerates all monic irreducible cubics and quartics with |coefficients| <= 4,
draws a seeded random sample, and records for each field: d_K, the index
[O_K : Z[a]], the trace-ideal generator t, and the splitting shape at every
prime dividing disc(f).  Everything is computed with sympy only, so the file
can serve as cross-validation for the C++ implementation.

sympy 1.14 has a known defect where round_two occasionally returns a basis
denominator/discriminant pair inconsistent with disc(f) = d_K * index^2
(e.g. a d_K containing primes that do not divide disc(f)).  Such outputs are
mathematically impossible, so entries failing the consistency guard are
skipped and replaced by the next sample; the skip count is printed.

Usage: python3 tools/gen_oracle.py [out.json]   (default tests/data/oracle_sample.json)
"""

import json
import math
import random
import sys
from itertools import product

from sympy import Poly, Symbol, ZZ
from sympy.polys.numberfields.basis import round_two
from sympy.polys.numberfields.primes import prime_decomp

SEED = 1729
SAMPLE_SIZE = 200
COEFF_BOUND = 4
DEGREES = (3, 4)

x = Symbol("x")


def corpus():
    """All monic irreducible polys of the target degrees, high-to-low coeffs."""
    polys = []
    for n in DEGREES:
        for tail in product(range(-COEFF_BOUND, COEFF_BOUND + 1), repeat=n):
            coeffs = (1,) + tail
            f = Poly(list(coeffs), x, domain=ZZ)
            if f.is_irreducible:
                polys.append(coeffs)
    return polys


def power_sums(coeffs):
    """Newton power sums p_0..p_{n-1} of the roots of a monic poly."""
    n = len(coeffs) - 1
    a = coeffs[1:]
    p = [n]
    for k in range(1, n):
        p.append(-k * a[k - 1] - sum(a[i - 1] * p[k - i] for i in range(1, k)))
    return p


def field_entry(coeffs):
    """Reference record for one field, or None if sympy's output fails the
    disc(f) = d_K * index^2 consistency guard."""
    f = Poly(list(coeffs), x, domain=ZZ)
    n = f.degree()
    disc_f = int(f.discriminant())
    ZK, dK = round_two(f)
    dK = int(dK)
    if dK == 0 or disc_f % dK != 0:
        return None
    cof = disc_f // dK
    if cof <= 0:
        return None
    idx = math.isqrt(cof)
    if idx * idx != cof:
        return None

    ps = power_sums(coeffs)
    den = int(ZK.denom)
    mat = [[int(v) for v in row] for row in ZK.matrix.to_list()]
    traces = []
    for j in range(n):
        tr = sum(mat[i][j] * ps[i] for i in range(n))
        if tr % den != 0:
            return None
        traces.append(tr // den)
    t = math.gcd(*traces)

    splittings = []
    for p in sorted(prime_factors(abs(disc_f))):
        try:
            decomp = prime_decomp(p, T=f, ZK=ZK, dK=dK)
        except Exception:
            # sympy 1.14 can fail an internal assertion here; skip the field.
            return None
        shape = sorted(((int(P.e), int(P.f)) for P in decomp), reverse=True)
        if sum(e * fdeg for e, fdeg in shape) != n:
            return None
        splittings.append({"p": str(p), "shape": [[e, fdeg] for e, fdeg in shape]})

    return {
        "polynomial": [str(c) for c in coeffs],
        "d_K": str(dK),
        "index": str(idx),
        "t": str(t),
        "splittings": splittings,
    }


def prime_factors(m):
    out = set()
    d = 2
    while d * d <= m:
        while m % d == 0:
            out.add(d)
            m //= d
        d += 1
    if m > 1:
        out.add(m)
    return out


def main():
    out_path = sys.argv[1] if len(sys.argv) > 1 else "tests/data/oracle_sample.json"
    polys = corpus()
    print(f"corpus: {len(polys)} irreducible polys")
    rng = random.Random(SEED)
    order = list(range(len(polys)))
    rng.shuffle(order)

    entries, skipped = [], []
    for i in order:
        if len(entries) == SAMPLE_SIZE:
            break
        coeffs = polys[i]
        entry = field_entry(coeffs)
        if entry is None:
            skipped.append(coeffs)
            continue
        entries.append(entry)

    entries.sort(key=lambda e: [int(c) for c in e["polynomial"]])
    with open(out_path, "w") as fh:
        json.dump(entries, fh, indent=1)
        fh.write("\n")
    print(f"wrote {len(entries)} entries to {out_path}")
    if skipped:
        print(f"skipped {len(skipped)} sympy-inconsistent fields:")
        for c in skipped:
            print("  ", c)


if __name__ == "__main__":
    main()
