"""Independent brute-force oracles used by the unit and acceptance tests."""

import itertools

from drinfeld2 import UPoly
from drinfeld2.fields import nullspace
from drinfeld2.structure import poly_mat_det


def determinantal_divisors(mat):
    """gcd of all k x k minors for each k; the Smith-form oracle."""
    n = len(mat)
    out = []
    for k in range(1, n + 1):
        g = None
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                sub = [[mat[i][j] for j in cols] for i in rows]
                det = poly_mat_det(sub)
                if det:
                    g = det.monic() if g is None else g.gcd(det)
        out.append(g)  # None when every k-minor vanishes
    return out


def point_scan_structure(mod):
    """Determine the invariant factors of L as an A-module by brute force.

    Computes dim ker phi(a) for every monic a of degree <= n directly from
    the additive action on L, then finds the unique divisibility chain of
    monic factors whose gcd-degree profile matches.  Independent of the
    Smith-form pipeline.
    """
    tw = mod.tower
    fq = tw.fq
    n = tw.n
    cands = [UPoly(fq, t + (1,)) for d in range(1, n + 1)
             for t in itertools.product(range(fq.q), repeat=d)]
    profile = {}
    for a in cands:
        fa = mod.phi(a)
        cols = [tw.vector(fa.apply(tw.q ** j)) for j in range(n)]
        rows = [[cols[j][i] for j in range(n)] for i in range(n)]
        profile[a] = len(nullspace(fq, rows))
    matches = []
    for size in range(1, n + 1):
        for combo in itertools.combinations_with_replacement(cands, size):
            if sum(int(f.degree()) for f in combo) != n:
                continue
            chain = sorted(combo, key=lambda f: -int(f.degree()))
            if any(not (chain[j] % chain[j + 1]).is_zero()
                   for j in range(len(chain) - 1)):
                continue
            if all(profile[a] == sum(int(a.gcd(f).degree()) for f in combo)
                   for a in cands):
                matches.append(tuple(sorted(f.coeffs for f in combo)))
    assert len(set(matches)) == 1, "point-scan oracle is ambiguous"
    return matches[0]
