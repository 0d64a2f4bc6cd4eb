import sys, time
from collections import Counter
from circpers.field import GF2, QQ, PrimeField
from circpers.fixtures import random_circle_map
from circpers.complexes import critical_structure
from circpers.cutting import cut_at_levels
from circpers.quiver import build_representation, decompose
from circpers.covering import covering_route_bars

F5 = PrimeField(5)
lo, hi = int(sys.argv[1]), int(sys.argv[2])
total = 0.0
bad = 0
for seed in range(lo, hi):
    t0 = time.time()
    pm = random_circle_map(seed)
    crit = critical_structure(pm)
    cut = cut_at_levels(pm, crit.cut_angles())
    dim = max(len(s) for s in pm.complex.simplices) - 1
    ok = True
    for fld in (GF2, F5, QQ):
        for r in range(min(2, dim) + 1):
            rep = build_representation(cut, crit, r, fld)
            bars, cells = decompose(rep)
            cov, rc, k = covering_route_bars(cut, crit, r, fld)
            if bars != cov:
                ok = False
                print(f"seed {seed} r={r} {fld.spec()}: MISMATCH")
    dt = time.time() - t0
    total += dt
    if not ok:
        bad += 1
    print(f"seed {seed}: {'OK' if ok else 'BAD'} {dt:.1f}s", flush=True)
print(f"total {total:.1f}s bad {bad}")
