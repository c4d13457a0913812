"""Subgroup families of PGL(2,p) in its action on the projective line.

Named families (cyclic, dihedral, C_p : C_d, alt(4), sym(4), alt(5)) are
found by exhaustive search over elements and element pairs with prescribed
orders, deterministically (first hit in the lexicographic order of canonical
matrices).  For small p the full subgroup lattice is enumerated by closure
over generator pairs; every subgroup of PGL(2,p) is 2-generated, so pair
closures reach all of them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import UnsupportedPrime
from .permgroup import (
    PermGroup,
    group_closure,
    orbit_data,
    OrbitData,
    perm_order,
)
from .projline import (
    MAX_PRIME,
    PglElement,
    check_prime,
    pgl_canonical,
    pgl_elements,
    pgl_identity,
    pgl_mul,
    point_permutation,
)

_LATTICE_MAX_PRIME = 7


@dataclass(frozen=True)
class SubgroupSpec:
    """One of the subgroup families named in the orbit-size table.

    kind: "cyclic" (C_d), "dihedral" (D_2d), "frobenius" (C_p : C_d),
    "alt4", "sym4", "alt5".  d is ignored for the three exceptional kinds.
    """

    kind: str
    d: int = 0

    _KINDS = ("cyclic", "dihedral", "frobenius", "alt4", "sym4", "alt5")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown subgroup kind {self.kind!r}")
        if self.kind == "cyclic" and self.d < 1:
            raise ValueError("cyclic requires d >= 1")
        if self.kind == "dihedral" and self.d < 2:
            raise ValueError("dihedral requires d >= 2")
        if self.kind == "frobenius" and self.d < 1:
            raise ValueError("frobenius requires d >= 1")

    def describe(self) -> str:
        return {
            "cyclic": f"C{self.d}",
            "dihedral": f"D{2 * self.d}",
            "frobenius": f"C_p:C{self.d}",
            "alt4": "Alt(4)",
            "sym4": "Sym(4)",
            "alt5": "Alt(5)",
        }[self.kind]


def parse_spec(text: str) -> SubgroupSpec:
    """CLI spelling: Cyclic:4, Dihedral:3, FrobeniusPD:2, A4, S4, A5."""
    t = text.strip()
    low = t.lower()
    if low in ("a4", "alt4"):
        return SubgroupSpec("alt4")
    if low in ("s4", "sym4"):
        return SubgroupSpec("sym4")
    if low in ("a5", "alt5"):
        return SubgroupSpec("alt5")
    if ":" in t:
        name, _, arg = t.partition(":")
        d = int(arg)
        key = {"cyclic": "cyclic", "dihedral": "dihedral",
               "frobeniuspd": "frobenius"}.get(name.lower())
        if key:
            return SubgroupSpec(key, d)
    raise ValueError(f"cannot parse subgroup spec {text!r}")


@dataclass(frozen=True)
class PglSubgroup:
    """A subgroup of PGL(2,p) with matrix generators and its point action."""

    p: int
    spec: SubgroupSpec | None
    matrices: tuple[PglElement, ...]
    group: PermGroup          # on the p+1 projective points, with closure

    def order(self) -> int:
        return self.group.order()

    def orbit_data(self) -> OrbitData:
        return orbit_data(self.group)


@lru_cache(maxsize=None)
def _element_perms(p: int):
    """Permutations and orders of all PGL(2,p) elements, in canonical order."""
    els = pgl_elements(p)
    perms = tuple(point_permutation(g) for g in els)
    orders = tuple(perm_order(q) for q in perms)
    return els, perms, orders


def element_order_profile(group: PermGroup) -> dict[int, int]:
    """Multiset of element orders; identifies A4/S4/A5 among same-order groups."""
    assert group.elements is not None
    return dict(Counter(perm_order(g) for g in group.elements))


_A4_PROFILE = {1: 1, 2: 3, 3: 8}
_S4_PROFILE = {1: 1, 2: 9, 3: 8, 4: 6}
_A5_PROFILE = {1: 1, 2: 15, 3: 20, 5: 24}


def _subgroup(p, spec, matrices) -> PglSubgroup:
    perms = [point_permutation(g) for g in matrices]
    return PglSubgroup(p, spec, tuple(matrices), group_closure(perms, p + 1))


def _find_cyclic(p: int, d: int) -> PglSubgroup | None:
    els, _, orders = _element_perms(p)
    if d == 1:
        return _subgroup(p, SubgroupSpec("cyclic", 1), (pgl_identity(p),))
    for g, o in zip(els, orders):
        if o == d:
            return _subgroup(p, SubgroupSpec("cyclic", d), (g,))
    return None


def _find_dihedral(p: int, d: int) -> PglSubgroup | None:
    els, perms, orders = _element_perms(p)
    involutions = [g for g, o in zip(els, orders) if o == 2]
    for r, o in zip(els, orders):
        if o != d:
            continue
        rinv = pgl_canonical(r.d, -r.b, -r.c, r.a, p)
        powers = {r}
        q = r
        for _ in range(d - 1):
            q = pgl_mul(q, r)
            powers.add(q)
        for s in involutions:
            if s in powers:
                continue
            if pgl_mul(pgl_mul(s, r), s) == rinv:
                sub = _subgroup(p, SubgroupSpec("dihedral", d), (r, s))
                if sub.order() == 2 * d:
                    return sub
    return None


def _find_frobenius(p: int, d: int) -> PglSubgroup | None:
    if (p - 1) % d != 0:
        return None
    shift = pgl_canonical(1, 1, 0, 1, p)   # z -> z + 1
    if d == 1:
        return _subgroup(p, SubgroupSpec("frobenius", 1), (shift,))
    els, _, orders = _element_perms(p)
    for g, o in zip(els, orders):
        # diagonal torus elements z -> az fix 0 and infinity
        if o == d and g.b == 0 and g.c == 0:
            sub = _subgroup(p, SubgroupSpec("frobenius", d), (shift, g))
            if sub.order() == p * d:
                return sub
    return None


def _find_exceptional(p: int, kind: str) -> PglSubgroup | None:
    goal = {"alt4": (3, 12, _A4_PROFILE),
            "sym4": (4, 24, _S4_PROFILE),
            "alt5": (5, 60, _A5_PROFILE)}[kind]
    prod_order, size, profile = goal
    els, perms, orders = _element_perms(p)
    invol = [(g, q) for g, q, o in zip(els, perms, orders) if o == 2]
    threes = [(g, q) for g, q, o in zip(els, perms, orders) if o == 3]
    from .permgroup import compose

    for x, qx in invol:
        for y, qy in threes:
            if perm_order(compose(qx, qy)) != prod_order:
                continue
            sub = _subgroup(p, SubgroupSpec(kind), (x, y))
            if sub.order() == size and element_order_profile(sub.group) == profile:
                return sub
    return None


def find_subgroup(p: int, spec: SubgroupSpec, bound: int = MAX_PRIME) -> PglSubgroup | None:
    """Deterministic representative of the requested family, or None if absent."""
    check_prime(p, bound)
    if spec.kind == "cyclic":
        return _find_cyclic(p, spec.d)
    if spec.kind == "dihedral":
        return _find_dihedral(p, spec.d)
    if spec.kind == "frobenius":
        return _find_frobenius(p, spec.d)
    return _find_exceptional(p, spec.kind)


def lemma_orbit_size_bound(spec: SubgroupSpec, p: int) -> set[int] | None:
    """The stated orbit-size set for the family, None for the exceptional kinds.

    A dihedral group of order 2p is also C_p : C_2, so it is only required
    to satisfy the bound of the Frobenius family; the returned set is the
    union of the bounds of every family containing the group.
    """
    if spec.kind == "cyclic":
        out = {1, spec.d}
        if spec.d == p:
            out |= {1, p}
        return out
    if spec.kind == "dihedral":
        out = {2, spec.d, 2 * spec.d}
        if spec.d == p:
            out |= {1, p}
        return out
    if spec.kind == "frobenius":
        return {1, p}
    return None


# ---------------------------------------------------------------------------
# full subgroup lattice for small p


@lru_cache(maxsize=None)
def _mult_table(p: int):
    """Index-based multiplication table of PGL(2,p) plus the element perms."""
    els, perms, orders = _element_perms(p)
    index = {g.entries(): i for i, g in enumerate(els)}
    m = len(els)
    table = np.empty((m, m), dtype=np.int32)
    for i, g in enumerate(els):
        for j, h in enumerate(els):
            table[i, j] = index[pgl_mul(g, h).entries()]
    return table, els, perms, orders


@lru_cache(maxsize=None)
def _identity_index(p: int) -> int:
    els, _, _ = _element_perms(p)
    return els.index(pgl_identity(p))


@lru_cache(maxsize=None)
def subgroup_lattice(p: int) -> tuple[frozenset[int], ...]:
    """Every subgroup of PGL(2,p), as frozensets of element indices.

    Enumerated by closing all generator pairs; p <= 7 only.
    """
    check_prime(p)
    if p > _LATTICE_MAX_PRIME:
        raise UnsupportedPrime(
            f"exhaustive subgroup enumeration is limited to p <= {_LATTICE_MAX_PRIME}"
        )
    table, els, perms, orders = _mult_table(p)
    ident = _identity_index(p)
    m = len(els)

    # cyclic subgroups first, deduplicated
    cyclics: dict[frozenset[int], int] = {}
    for i in range(m):
        c = _closure_set(table, ident, (i,))
        cyclics.setdefault(c, i)
    subs = set(cyclics)
    subs.add(frozenset([ident]))
    # all pair closures
    reps = sorted(cyclics.values())
    for a_pos, i in enumerate(reps):
        for j in reps[a_pos:]:
            subs.add(_closure_set(table, ident, (i, j)))
    return tuple(sorted(subs, key=lambda s: (len(s), sorted(s))))


def _closure_set(table: np.ndarray, ident: int, gens: tuple[int, ...]) -> frozenset[int]:
    seen = {ident}
    frontier = [ident]
    gen_list = sorted(set(gens))
    while frontier:
        prods = np.unique(table[np.ix_(np.array(frontier, dtype=np.int32),
                                       np.array(gen_list, dtype=np.int32))])
        nxt = [int(x) for x in prods if int(x) not in seen]
        seen.update(nxt)
        frontier = nxt
    return frozenset(seen)


def lattice_subgroup(p: int, ids: frozenset[int]) -> PglSubgroup:
    """Wrap a lattice entry as a PglSubgroup (generators = all elements)."""
    _, els, perms, _ = _mult_table(p)
    mats = tuple(els[i] for i in sorted(ids))
    sub_perms = tuple(sorted(perms[i] for i in sorted(ids)))
    return PglSubgroup(p, None, mats, PermGroup(p + 1, sub_perms, sub_perms))


def exceptional_subgroups(p: int, kind: str) -> list[PglSubgroup]:
    """All alt(4) (kind="alt4") or alt(5) subgroups of PGL(2,p).

    Uses the exhaustive lattice for p <= 7 and conjugates of one
    representative for larger p.
    """
    size, profile = {
        "alt4": (12, _A4_PROFILE),
        "alt5": (60, _A5_PROFILE),
    }[kind]
    out = []
    if p <= _LATTICE_MAX_PRIME:
        for ids in subgroup_lattice(p):
            if len(ids) != size:
                continue
            sub = lattice_subgroup(p, ids)
            if element_order_profile(sub.group) == profile:
                out.append(sub)
        return out
    rep = find_subgroup(p, SubgroupSpec(kind))
    if rep is None:
        return []
    seen: set[frozenset] = set()
    for g in pgl_elements(p):
        ginv = pgl_canonical(g.d, -g.b, -g.c, g.a, p)
        mats = tuple(pgl_mul(pgl_mul(g, x), ginv) for x in rep.matrices)
        key_group = group_closure([point_permutation(x) for x in mats], p + 1)
        key = frozenset(key_group.elements)
        if key not in seen:
            seen.add(key)
            out.append(PglSubgroup(p, rep.spec, mats, key_group))
    return out
