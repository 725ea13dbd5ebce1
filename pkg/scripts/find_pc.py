"""Search for a rank-4 Z[alpha]-lattice whose trace form is E8.

The Gram matrix has 1 on the diagonal and entries u/sqrt(-7) off it, with
N(u) <= 6 so that every 2x2 minor stays positive.  The first hit with
discriminant 1/49 has an even unimodular trace lattice of dimension 8, i.e.
E8.  Run with --verify to re-check the fixture shipped in the catalog.
"""
import argparse
import sys
from fractions import Fraction



from tensorlat.catalog import get
from tensorlat.hermitian import HermLattice, herm_minimum, is_dual_scaled
from tensorlat.number_field import elements_of_norm, make_field
from tensorlat.zlattice import zl_minimum


def search():
    F = make_field(7)
    s = F.inv_sqrt
    entries = [u * s for n in range(7) for u in elements_of_norm(F, n)]
    pos = [(i, j) for j in range(1, 4) for i in range(j)]

    def leading_ok(G, k):
        try:
            HermLattice(F, [row[:k] for row in G[:k]])
            return True
        except ValueError:
            return False

    G = [[F(1) if i == j else F(0) for j in range(4)] for i in range(4)]

    def fill(t):
        if t == len(pos):
            L = HermLattice(F, G)
            return L if L.disc == Fraction(1, 49) else None
        i, j = pos[t]
        for e in entries:
            G[i][j], G[j][i] = e, e.conj()
            last = t + 1 == len(pos) or pos[t + 1][1] != j
            if last and not leading_ok(G, j + 1):
                continue
            hit = fill(t + 1)
            if hit is not None:
                return hit
        G[i][j] = G[j][i] = F(0)
        return None

    return fill(0)


def verify(L):
    F = L.field
    trace_min = zl_minimum(L.trace)
    checks = {
        "trace even": L.trace.is_even,
        "trace det 1": L.trace.det == 1,
        "trace min 2, kissing 240": trace_min == (2, 240),
        "hermitian min 1": herm_minimum(L)[0] == 1,
        "dual = sqrt(-7) L": is_dual_scaled(L, F.sqrt),
    }
    for k, v in checks.items():
        print(f"{k}: {'ok' if v else 'FAIL'}")
    return all(checks.values())


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--verify", action="store_true", help="only re-check the catalog fixture")
    args = ap.parse_args()
    if args.verify:
        return 0 if verify(get("Pc").data) else 1
    L = search()
    if L is None:
        print("no lattice found")
        return 1
    for row in L.gram:
        print("  ".join(str(x) for x in row))
    return 0 if verify(L) else 1


if __name__ == "__main__":
    sys.exit(main())
