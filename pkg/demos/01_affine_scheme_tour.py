#!/usr/bin/env python3
"""Tour of the affine-plane scheme: points, colors, and intersection numbers.

The scheme of AG(2,p) lives on the p^2 points of the plane; two distinct
points get the color of the parallel class (slope) of the line through
them.  This script builds small instances and prints the structural laws.
"""

import numpy as np

from planeschemes import build_affine_scheme, relation_stats, is_pseudocyclic

for p in (3, 5, 7):
    X = build_affine_scheme(p)
    stats = relation_stats(X)
    print(f"p = {p}: degree {X.n}, rank {X.rank}")
    print(f"  valencies        : {sorted(set(X.valencies[1:]))} (every color)")
    print(f"  indistinguishing : {sorted(set(stats.indistinguishing[1:]))}")
    print(f"  pseudocyclic     : {is_pseudocyclic(X)}")

p = 3
X = build_affine_scheme(p)
print(f"\ncolor matrix of the p = {p} scheme (colors 1..{p} are slopes 0..{p-1}, "
      f"{p+1} is vertical):")
print(X.matrix)

print("\neach color class is a disjoint union of p complete graphs of order p:")
for s in range(1, X.rank):
    rows, cols = np.nonzero(X.matrix == s)
    lines = set()
    for a in rows.tolist():
        members = tuple(sorted(set(cols[rows == a].tolist()) | {a}))
        lines.add(members)
    print(f"  color {s}: {sorted(lines)}")

print("\na slice of the intersection tensor: c(r,s,t) for t = 1")
print(X.tensor[:, :, 1])
