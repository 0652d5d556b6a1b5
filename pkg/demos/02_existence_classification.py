"""Weak/strong existence of compactons from the endpoint power p.

A compacton U ~ U0 (L - |xi|)**p near its support edge is a weak
solution of K(m,n) iff p > 2/n and a classical one iff p > 3 (p > 4
for KP).  For each closed-form family those predicates reduce to exact
rational intervals in the free power.
"""

from compactons import FamilyId, classify_family, region_grid, table1_intervals

print("Existence intervals of all fourteen families:")
header = f"{'family':8s} {'param':5s} {'weak K':10s} {'strong K':10s} " \
         f"{'weak KP':10s} {'strong KP':10s}"
print(header)
for family in FamilyId:
    iv = table1_intervals(family)
    print(f"{family.value:8s} {iv['param']:5s} {str(iv['weak_K']):10s} "
          f"{str(iv['strong_K']):10s} {str(iv['weak_KP']):10s} "
          f"{str(iv['strong_KP']):10s}")
print()

print("Pointwise classification with reasons:")
for family, kwargs in [
    (FamilyId.ZSQ1, dict(n=2)),
    (FamilyId.CN1, dict(n=0.75, b=-1)),
    (FamilyId.COS2, dict(m=0.25, b=-1)),
    (FamilyId.RATCN6, dict(n=4)),
]:
    rep = classify_family(family, **kwargs)
    point = ", ".join(f"{k}={v}" for k, v in kwargs.items())
    print(f"  {family.value} ({point}): p = {rep.p:g}")
    for reason in rep.reasons:
        print(f"    {reason}")
print()

print("Region sweep (the data behind admissibility region plots):")
rows = region_grid(FamilyId.COS1, 1.05, 4.0, 8)
for row in rows:
    print(f"  n={row['n']:.3f}  weak_K={int(row['weak_K'])} "
          f"strong_K={int(row['strong_K'])} "
          f"weak_KP_case={row['weak_KP_case']} "
          f"strong_KP={int(row['strong_KP'])}")
