#!/usr/bin/env python3
"""Independent exact-rank oracle for the windowed invariance kernel.

Builds the linear system straight from the definitions (exact-support
components of bounded diameter on a lattice window, zero difference along
every admitted transition) with Python Fractions, and prints the dimension
of the solution space projected onto the inner-window components.

Used once to derive the pinned targets in tests/data/kernel_targets.json; it shares no
code with the C++ implementation.
"""
import itertools
import sys
from fractions import Fraction


def exclusion():
    return [0, 1], {((1, 0), (0, 1)), ((0, 1), (1, 0))}


def multispecies(kappa):
    S = list(range(kappa + 1))
    phi = {((j, l), (l, j)) for j in S for l in S if j != l}
    return S, phi


def complete_binary():
    S = [0, 1]
    V = [(a, b) for a in S for b in S]
    return S, {(u, v) for u in V for v in V if u != v}


def diam(lam, k):
    return -(-(max(lam) - min(lam)) // k) if lam else 0


def kernel(S, phi, base, R, k, a, b, p, exchange_p):
    sites = list(range(a, b + 1))
    nb = [s for s in S if s != base]
    lams = []
    for m in sites:
        rest = [x for x in sites if m < x <= m + R * k]
        for r in range(len(rest) + 1):
            for c in itertools.combinations(rest, r):
                lam = (m,) + c
                if diam(lam, k) <= R:
                    lams.append(lam)
    unknowns = {}
    for lam in lams:
        for vals in itertools.product(nb, repeat=len(lam)):
            unknowns[(lam, vals)] = len(unknowns)
    lo, hi = a + R, b - R

    def row(eta, eta2, delta):
        r = {}
        for lam in lams:
            if not any(x in delta for x in lam):
                continue
            for conf, sgn in ((eta2, 1), (eta, -1)):
                vals = tuple(conf.get(x, base) for x in lam)
                if base in vals:
                    continue
                j = unknowns[(lam, vals)]
                r[j] = r.get(j, 0) + sgn
        return tuple(sorted((j, v) for j, v in r.items() if v))

    rows = set()
    adj = {}
    for (u, v) in phi:
        adj.setdefault(u, []).append(v)
    inner = [x for x in sites if lo <= x <= hi]
    for n in range(p + 1):
        for supp in itertools.combinations(sites, n):
            for vals in itertools.product(nb, repeat=n):
                eta = dict(zip(supp, vals))
                for x in inner:
                    for y in inner:
                        if x == y or abs(x - y) > k:
                            continue
                        pair = (eta.get(x, base), eta.get(y, base))
                        for (t1, t2) in adj.get(pair, []):
                            eta2 = dict(eta)
                            eta2[x] = t1
                            eta2[y] = t2
                            eta2 = {z: s for z, s in eta2.items() if s != base}
                            r = row(eta, eta2, {x, y})
                            if r:
                                rows.add(r)
                if n <= exchange_p:
                    for x, y in itertools.combinations(inner, 2):
                        if eta.get(x, base) == eta.get(y, base):
                            continue
                        eta2 = dict(eta)
                        eta2[x], eta2[y] = eta.get(y, base), eta.get(x, base)
                        eta2 = {z: s for z, s in eta2.items() if s != base}
                        r = row(eta, eta2, {x, y})
                        if r:
                            rows.add(r)
    ncols = len(unknowns)
    # Gauss-Jordan over Fractions on deduplicated sparse rows.
    pivots = {}  # col -> dict row (pivot entry 1)
    for r in sorted(rows):
        v = {j: Fraction(c) for j, c in r}
        for pc in sorted(set(v) & set(pivots)):
            c = v.get(pc, 0)
            if c:
                for j, w in pivots[pc].items():
                    v[j] = v.get(j, 0) - c * w
                v = {j: w for j, w in v.items() if w}
        v = {j: w for j, w in v.items() if w}
        if not v:
            continue
        pc = min(v)
        inv = 1 / v[pc]
        v = {j: w * inv for j, w in v.items()}
        for oc, orow in pivots.items():
            c = orow.get(pc, 0)
            if c:
                for j, w in v.items():
                    orow[j] = orow.get(j, 0) - c * w
                pivots[oc] = {j: w for j, w in orow.items() if w}
        pivots[pc] = v
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * ncols
        vec[fcol] = Fraction(1)
        for pc, prow in pivots.items():
            vec[pc] = -prow.get(fcol, 0)
        basis.append(vec)
    inner_cols = [j for (lam, _), j in unknowns.items() if lo <= min(lam) and max(lam) <= hi]
    proj = [[vec[j] for j in inner_cols] for vec in basis]
    # rank of projection
    rk = 0
    m = [row[:] for row in proj]
    ncol = len(inner_cols)
    for c in range(ncol):
        piv = next((i for i in range(rk, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][c] != 0:
                f = m[i][c] / m[rk][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rk])]
        rk += 1
    return dict(unknowns=ncols, rows=len(rows), nullity=len(free), projected=rk)


if __name__ == "__main__":
    which = sys.argv[1]
    exch = int(sys.argv[2]) if len(sys.argv) > 2 else 99
    S, phi = {"exclusion": exclusion, "ms2": lambda: multispecies(2),
              "complete": complete_binary}[which]()
    for length in (8, 10, 12):
        print(which, length, kernel(S, phi, 0, 1, 1, 0, length - 1, 4, exch), flush=True)
