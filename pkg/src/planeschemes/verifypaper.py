"""Named verification checks over the desk-scale range.

Each check re-derives one verifiable claim: scheme laws of the affine
plane, the fusion property, the full algebraic automorphism group, the
Lambda criteria, subgroup orbit-size tables, the classification sweeps, the
realization of schurian fusions by projective subgroups, the four large
automorphism groups, and the exceptional primitive pseudocyclic schemes.
The quick level restricts to p <= 5; full adds the heavy primes.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

import numpy as np

from .affine import (
    SlopePartition,
    build_affine_scheme,
    fuse,
    lambda_criteria,
    partition_from_group,
    partitions_iter,
)
from .classify import classify_all
from .report import report_digest, run_sweep
from .scheme import (
    all_color_permutations_fixing_zero,
    is_algebraic_map,
    is_primitive,
    is_pseudocyclic,
)
from .subgroups import SubgroupSpec, find_subgroup, lemma_orbit_size_bound

GOLFAND_SEED = 47


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed_s: float


def check_affine_laws(primes=(3, 5, 7, 11, 13)) -> tuple[bool, str]:
    """Degree p^2, rank p+2, all valencies p-1, each color = p cliques of size p."""
    for p in primes:
        X = build_affine_scheme(p)
        if X.n != p * p or X.rank != p + 2:
            return False, f"p={p}: degree/rank {X.n}/{X.rank}"
        if set(X.valencies[1:]) != {p - 1}:
            return False, f"p={p}: valencies {set(X.valencies[1:])}"
        for s in range(1, X.rank):
            rows, cols = np.nonzero(X.matrix == s)
            comp = {}
            for a, b in zip(rows.tolist(), cols.tolist()):
                comp.setdefault(a, set()).add(b)
            # clique decomposition: each point sees p-1 others, closed under s
            seen: set[int] = set()
            cliques = 0
            for a in range(X.n):
                if a in seen or a not in comp:
                    continue
                members = {a} | comp[a]
                if len(members) != p:
                    return False, f"p={p} color {s}: component size {len(members)}"
                for u in members:
                    for v in members:
                        if u != v and X.matrix[u, v] != s:
                            return False, f"p={p} color {s}: not a clique"
                seen |= members
                cliques += 1
            if cliques != p:
                return False, f"p={p} color {s}: {cliques} cliques"
    return True, f"checked p in {tuple(primes)}"


def check_golfand(primes=(3, 5), random_p7: int = 500) -> tuple[bool, str]:
    """Every coarser slope partition yields a scheme (full at 3,5; sampled at 7)."""
    count = 0
    for p in primes:
        for P in partitions_iter(p + 1):
            fuse(p, P)   # verify_scheme inside raises on failure
            count += 1
    if random_p7:
        rng = random.Random(GOLFAND_SEED)
        pool = list(partitions_iter(8))
        for P in rng.sample(pool, random_p7):
            fuse(7, P)
            count += 1
    return True, f"{count} fusions verified"


def check_aaut_full(primes=(3, 5)) -> tuple[bool, str]:
    """Every diagonal-fixing color permutation preserves the tensor of X_A."""
    for p in primes:
        X = build_affine_scheme(p)
        total = 0
        for perm in all_color_permutations_fixing_zero(X.rank):
            if not is_algebraic_map(X, perm):
                return False, f"p={p}: {perm} fails"
            total += 1
        if total != math.factorial(p + 1):
            return False, f"p={p}: enumerated {total}"
    return True, f"all (p+1)! permutations pass for p in {tuple(primes)}"


def check_lambda_criteria(primes=(3, 5)) -> tuple[bool, str]:
    """Lambda-set predicates agree with the structural ones for every fusion."""
    count = 0
    for p in primes:
        for P in partitions_iter(p + 1):
            rec = fuse(p, P)
            imprim, pc = lambda_criteria(rec)
            if imprim != (not is_primitive(rec.scheme)):
                return False, f"p={p} {P}: imprimitivity mismatch"
            if pc != is_pseudocyclic(rec.scheme):
                return False, f"p={p} {P}: pseudocyclicity mismatch"
            count += 1
    return True, f"{count} fusions agree"


def check_orbit_tables(primes=(5, 7, 11, 13)) -> tuple[bool, str]:
    """N(K) lies in the stated set for every constructible named subgroup."""
    built = 0
    for p in primes:
        specs = [SubgroupSpec("cyclic", d) for d in range(1, p + 2)]
        specs += [SubgroupSpec("dihedral", d) for d in range(2, p + 2)]
        specs += [SubgroupSpec("frobenius", d)
                  for d in range(1, p) if (p - 1) % d == 0]
        for spec in specs:
            sub = find_subgroup(p, spec)
            if sub is None:
                continue
            data = sub.orbit_data()
            if sum(data.sizes) != p + 1:
                return False, f"p={p} {spec.describe()}: sizes {data.sizes}"
            if any(sub.order() % s for s in data.size_set):
                return False, f"p={p} {spec.describe()}: size not dividing order"
            allowed = lemma_orbit_size_bound(spec, p)
            if not data.size_set <= allowed:
                return False, (f"p={p} {spec.describe()}: N={sorted(data.size_set)} "
                               f"beyond {sorted(allowed)}")
            built += 1
    return True, f"{built} subgroups within bounds"


def check_main_sweep(primes=(3, 5, 7), jobs: int = 1) -> tuple[bool, str]:
    """Zero unclassifiable, zero unknown; every witness re-verified."""
    totals = []
    for p in primes:
        records = run_sweep(p, partitions_iter(p + 1), jobs=jobs)
        bad = [r for r in records if r.error is not None
               or r.verdict in ("Unknown", "UnclassifiableSchurian")]
        if bad:
            return False, f"p={p}: {len(bad)} bad records, first {bad[0].partition_rgs}"
        totals.append(f"p={p}:{len(records)}")
    return True, " ".join(totals)


def check_theorem_realization(primes=(3, 5)) -> tuple[bool, str]:
    """Schurian fusions come from the subgroup lattice or carry a listed group."""
    from .subgroups import lattice_subgroup, subgroup_lattice

    for p in primes:
        achievable = set()
        for ids in subgroup_lattice(p):
            sub = lattice_subgroup(p, ids)
            achievable.add(partition_from_group(sub.group).rgs)
        listed = {math.factorial(p) ** 2,
                  math.factorial(p) ** p * math.factorial(p),
                  2 * math.factorial(p) ** 2,
                  math.factorial(p * p)}
        for P, res in classify_all(p, check_witnesses=False):
            if isinstance(res, str):
                return False, f"p={p} {P}: {res}"
            if not res.schurian:
                continue
            if P.rgs not in achievable and res.aut_order not in listed:
                return False, f"p={p} {P}: no subgroup and aut order {res.aut_order}"
    return True, f"realized for p in {tuple(primes)}"


def check_group_orders_p3() -> tuple[bool, str]:
    """Aut orders at p=3: trivial 9!, Hamming 72, wreath 1296 (and grid 36)."""
    from .autsearch import automorphism_group

    cases = [
        ("0000", math.factorial(9)),   # trivial scheme: sym(9)
        ("0110", 72),                  # Hamming scheme: sym(3) wr sym(2)
        ("0111", 1296),                # wreath: sym(3) wr sym(3)
        ("0112", 36),                  # grid: sym(3) x sym(3)
    ]
    for rgs, expect in cases:
        rec = fuse(3, SlopePartition.from_string(rgs))
        aut = automorphism_group(rec.scheme)
        if aut.order != expect:
            return False, f"{rgs}: order {aut.order} != {expect}"
    return True, "orders 362880 / 72 / 1296 / 36 as listed"


def check_exceptional(with_p19: bool = True) -> tuple[bool, str]:
    """The alt(4) fusion at p=5 and alt(5) fusion at p=19 are primitive pseudocyclic."""
    details = []
    for p, kind, run in ((5, "alt4", True), (19, "alt5", with_p19)):
        if not run:
            continue
        sub = find_subgroup(p, SubgroupSpec(kind))
        if sub is None:
            return False, f"{kind} absent at p={p}"
        P = partition_from_group(sub.group)
        rec = fuse(p, P)
        if not (is_primitive(rec.scheme) and is_pseudocyclic(rec.scheme)):
            return False, f"p={p} {kind}: not primitive pseudocyclic"
        details.append(f"p={p}:{kind}:n={rec.scheme.n}:rank={rec.scheme.rank}")
    return True, " ".join(details)


def check_determinism(p: int = 3, jobs: int = 2) -> tuple[bool, str]:
    """Sweep report bytes identical across repeated runs and worker counts."""
    first = run_sweep(p, partitions_iter(p + 1), jobs=1)
    second = run_sweep(p, partitions_iter(p + 1), jobs=1)
    multi = run_sweep(p, partitions_iter(p + 1), jobs=jobs)
    d1, d2, d3 = (report_digest(r) for r in (first, second, multi))
    if d1 != d2:
        return False, "repeat run digest changed"
    if d1 != d3:
        return False, f"jobs={jobs} digest changed"
    return True, f"digest {d1[:16]}.. stable"


QUICK_CHECKS = [
    ("affine-laws", lambda: check_affine_laws((3, 5))),
    ("golfand-fusions", lambda: check_golfand((3, 5), random_p7=0)),
    ("aaut-symmetric", check_aaut_full),
    ("lambda-criteria", check_lambda_criteria),
    ("orbit-tables", lambda: check_orbit_tables((5,))),
    ("main-theorem-sweep", lambda: check_main_sweep((3, 5))),
    ("group-orders-p3", check_group_orders_p3),
    ("exceptional-schemes", lambda: check_exceptional(with_p19=False)),
    ("report-determinism", check_determinism),
]

FULL_CHECKS = [
    ("affine-laws", check_affine_laws),
    ("golfand-fusions", check_golfand),
    ("aaut-symmetric", check_aaut_full),
    ("lambda-criteria", check_lambda_criteria),
    ("orbit-tables", check_orbit_tables),
    ("main-theorem-sweep", check_main_sweep),
    ("theorem-realization", check_theorem_realization),
    ("group-orders-p3", check_group_orders_p3),
    ("exceptional-schemes", check_exceptional),
    ("report-determinism", check_determinism),
]


def run_checks(level: str = "quick") -> list[CheckResult]:
    checks = QUICK_CHECKS if level == "quick" else FULL_CHECKS
    out = []
    for name, fn in checks:
        start = time.perf_counter()
        try:
            passed, detail = fn()
        except Exception as exc:   # a crash is a failure, not an abort
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, passed, detail, time.perf_counter() - start))
    return out
