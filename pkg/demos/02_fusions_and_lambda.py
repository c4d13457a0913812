#!/usr/bin/env python3
"""Every slope partition yields a fusion scheme; Lambda reads off structure.

Merging parallel classes along any set partition of the slopes always
produces an association scheme.  The set Lambda of block sizes alone
decides imprimitivity (1 in Lambda) and pseudocyclicity (|Lambda| = 1);
this demo verifies both readings against the structural computations.
"""

from planeschemes import (
    bell_number,
    fuse,
    is_primitive,
    is_pseudocyclic,
    lambda_criteria,
    partitions_iter,
)

p = 5
print(f"p = {p}: the slope set has {p+1} labels, so there are "
      f"Bell({p+1}) = {bell_number(p+1)} fusions\n")

print(f"{'partition':>9}  {'rank':>4}  {'valencies':>16}  {'Lambda':>9}  "
      f"{'imprim':>6}  {'pseudo':>6}")
shown = 0
for P in partitions_iter(p + 1):
    rec = fuse(p, P)
    imprim, pc = lambda_criteria(rec)
    assert imprim == (not is_primitive(rec.scheme))
    assert pc == is_pseudocyclic(rec.scheme)
    if shown < 12 or P.num_blocks == 1:
        vals = ",".join(str(v) for v in sorted(rec.scheme.valencies[1:]))
        lam = "{" + ",".join(str(v) for v in sorted(rec.lam)) + "}"
        print(f"{P.as_string():>9}  {rec.scheme.rank:>4}  {vals:>16}  {lam:>9}  "
              f"{str(imprim):>6}  {str(pc):>6}")
    shown += 1

print(f"\n... all {shown} fusions verified: the Lambda criteria agree with "
      f"the structural predicates everywhere")
