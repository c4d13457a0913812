"""Association schemes as verified color matrices with intersection tensors.

A scheme on n points is stored as an n x n matrix of colors 0..r-1 with color
0 on the diagonal and nowhere else, together with the transposition map
(star) and the full intersection tensor c[r,s,t] = |alpha r  intersect
beta s*| for (alpha,beta) of color t.  Construction always goes through
:func:`verify_scheme`, which proves that every intersection number is
independent of the chosen pair before storing it.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

import numpy as np

from .errors import (
    InconsistentIntersection,
    NotAlgebraic,
    NotStarClosed,
    RankTooLarge,
)
from .permgroup import PermGroup

_MAGIC = b"AFSC"
_VERSION = 1


@dataclass(frozen=True, eq=False)
class Scheme:
    """A verified association scheme; immutable after construction."""

    matrix: np.ndarray          # (n, n) int16 color matrix
    star: tuple[int, ...]       # color -> transposed color
    tensor: np.ndarray          # (r, r, r) int64, tensor[r, s, t] = c_rs^t

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def rank(self) -> int:
        return len(self.star)

    @cached_property
    def valencies(self) -> tuple[int, ...]:
        """Per-color valency n_s = c(s, s*, 0); entry 0 is the diagonal's 1."""
        return tuple(
            int(self.tensor[s, self.star[s], 0]) for s in range(self.rank)
        )

    @cached_property
    def color_stack(self) -> np.ndarray:
        """One-hot (r, n, n) float64 indicator stack, used by matrix kernels."""
        r, n = self.rank, self.n
        stack = np.zeros((r, n, n))
        for s in range(r):
            stack[s][self.matrix == s] = 1.0
        stack.setflags(write=False)
        return stack

    @cached_property
    def composition_masks(self) -> np.ndarray:
        """(r, r) bitmasks: bit t of entry (a, b) set iff c(a, b, t) > 0."""
        bits = (np.int64(1) << np.arange(self.rank, dtype=np.int64))
        return ((self.tensor > 0) * bits).sum(axis=2)

    def __eq__(self, other) -> bool:
        return isinstance(other, Scheme) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def __repr__(self) -> str:
        return f"Scheme(n={self.n}, rank={self.rank})"


def _check_color_matrix(m: np.ndarray) -> int:
    n = m.shape[0]
    if m.ndim != 2 or m.shape[1] != n:
        raise ValueError("color matrix must be square")
    if n == 0:
        raise ValueError("empty point set")
    colors = np.unique(m)
    r = int(colors[-1]) + 1
    if not np.array_equal(colors, np.arange(r)):
        raise ValueError("colors must be exactly 0..r-1, all occurring")
    if np.any(np.diag(m) != 0):
        raise ValueError("diagonal must have color 0")
    off = m[~np.eye(n, dtype=bool)]
    if off.size and off.min() == 0:
        raise ValueError("color 0 must not occur off the diagonal")
    return r


def _compute_star(m: np.ndarray, r: int) -> tuple[int, ...]:
    star = []
    mt = m.T
    for s in range(r):
        vals = np.unique(mt[m == s])
        if len(vals) != 1:
            raise NotStarClosed(
                f"transpose of color {s} meets colors {vals.tolist()}"
            )
        star.append(int(vals[0]))
    for s, t in enumerate(star):
        if star[t] != s:
            raise NotStarClosed(f"star map is not an involution at color {s}")
    return tuple(star)


def verify_scheme(matrix) -> Scheme:
    """Check the scheme axioms on a color matrix and return the Scheme.

    For every triple (r,s,t) this verifies that |{gamma : m[a,g]=r,
    m[g,b]=s}| is the same over all (a,b) with m[a,b]=t, and stores the
    constant.  Raises NotStarClosed or InconsistentIntersection (with a
    witness pair of pairs) otherwise.
    """
    m = np.ascontiguousarray(np.asarray(matrix, dtype=np.int16))
    r = _check_color_matrix(m)
    n = m.shape[0]
    star = _compute_star(m, r)

    flat = m.ravel()
    order = np.argsort(flat, kind="stable")
    sorted_colors = flat[order]
    starts = np.searchsorted(sorted_colors, np.arange(r))
    bounds = np.append(starts, n * n)

    stack = np.zeros((r, n, n))
    for s in range(r):
        stack[s][m == s] = 1.0

    tensor = np.zeros((r, r, r), dtype=np.int64)
    for rr in range(r):
        prods = stack[rr] @ stack  # (r, n, n); prods[s] = A_rr @ A_s
        counts = np.rint(prods.reshape(r, n * n)[:, order]).astype(np.int64)
        mins = np.minimum.reduceat(counts, starts, axis=1)
        maxs = np.maximum.reduceat(counts, starts, axis=1)
        if not np.array_equal(mins, maxs):
            s, t = np.argwhere(mins != maxs)[0]
            seg = counts[s, bounds[t]:bounds[t + 1]]
            pair_ids = order[bounds[t]:bounds[t + 1]]
            i1 = pair_ids[int(np.argmin(seg))]
            i2 = pair_ids[int(np.argmax(seg))]
            raise InconsistentIntersection(
                rr, int(s), int(t),
                (int(i1) // n, int(i1) % n), (int(i2) // n, int(i2) % n),
            )
        tensor[rr] = mins

    m.setflags(write=False)
    tensor.setflags(write=False)
    return Scheme(m, star, tensor)


def trivial_scheme(n: int) -> Scheme:
    """The rank-2 scheme of degree n (rank 1 when n = 1)."""
    m = np.ones((n, n), dtype=np.int16)
    np.fill_diagonal(m, 0)
    return verify_scheme(m)


# ---------------------------------------------------------------------------
# per-relation statistics


@dataclass(frozen=True)
class RelationStats:
    """Valency and indistinguishing number per color (index 0 = diagonal)."""

    valencies: tuple[int, ...]
    indistinguishing: tuple[int, ...]   # c(s) = sum_r c(r, r*, s)


def relation_stats(X: Scheme) -> RelationStats:
    star = np.array(X.star)
    diag_slices = X.tensor[np.arange(X.rank), star, :]  # (r, t): c(r, r*, t)
    cs = diag_slices.sum(axis=0)
    return RelationStats(X.valencies, tuple(int(x) for x in cs))


def is_pseudocyclic(X: Scheme) -> bool:
    """One constant k with n_s = k = c(s) + 1 across all nonzero colors."""
    if X.rank < 2:
        return True
    stats = relation_stats(X)
    k = stats.valencies[1]
    return all(
        stats.valencies[s] == k and stats.indistinguishing[s] == k - 1
        for s in range(1, X.rank)
    )


# ---------------------------------------------------------------------------
# parabolics, quotients, restrictions


@dataclass(frozen=True)
class ParabolicSet:
    """A star-closed color subset whose union is an equivalence relation."""

    colors: frozenset[int]
    num_classes: int
    class_size: int

    def is_trivial(self, rank: int) -> bool:
        return len(self.colors) == 1 or len(self.colors) == rank


def _closed_under_composition(X: Scheme, colors: frozenset[int]) -> bool:
    allowed = 0
    for c in colors:
        allowed |= 1 << c
    masks = X.composition_masks
    return all(
        int(masks[a, b]) & ~allowed == 0 for a in colors for b in colors
    )


def parabolics(X: Scheme) -> list[ParabolicSet]:
    """All parabolics, from 1_Omega (mask 0) up to Omega^2, in mask order."""
    r = X.rank
    if r > 32:
        raise RankTooLarge(f"rank {r} exceeds the subset-enumeration bound 32")
    # enumerate subsets of star-orbits so every candidate is star-closed
    pairs = []
    seen = set()
    for s in range(1, r):
        if s in seen:
            continue
        seen.update((s, X.star[s]))
        pairs.append((s,) if X.star[s] == s else (s, X.star[s]))
    out = []
    for mask in range(1 << len(pairs)):
        colors = {0}
        for i, cc in enumerate(pairs):
            if mask >> i & 1:
                colors.update(cc)
        colors = frozenset(colors)
        if not _closed_under_composition(X, colors):
            continue
        class_size = sum(X.valencies[s] for s in colors)
        assert X.n % class_size == 0, "parabolic classes of unequal size"
        out.append(ParabolicSet(colors, X.n // class_size, class_size))
    return out


def is_primitive(X: Scheme) -> bool:
    return len(parabolics(X)) == 2


def parabolic_classes(X: Scheme, e: ParabolicSet) -> np.ndarray:
    """Class index per point, classes numbered by least member."""
    in_e = np.isin(X.matrix, list(e.colors))
    labels = np.full(X.n, -1, dtype=np.int64)
    nxt = 0
    for a in range(X.n):
        if labels[a] < 0:
            labels[in_e[a]] = nxt
            nxt += 1
    assert nxt == e.num_classes
    return labels


def quotient(X: Scheme, e: ParabolicSet) -> Scheme:
    """Quotient scheme on the classes of e, colors merged when equal as relations."""
    cls = parabolic_classes(X, e)
    k = e.num_classes
    block = cls[:, None] * k + cls[None, :]
    present = np.unique(block.ravel() * np.int64(X.rank) + X.matrix.ravel())
    blocks, colors = np.divmod(present, X.rank)
    # colors meeting a common class pair become one quotient color
    parent = list(range(X.rank))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    first_color = {}
    for bid, c in zip(blocks.tolist(), colors.tolist()):
        if bid in first_color:
            ra, rb = find(first_color[bid]), find(c)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        else:
            first_color[bid] = c
    root_of = [find(c) for c in range(X.rank)]
    labels = sorted({root_of[c] for c in range(X.rank)})
    assert root_of[0] == 0
    relabel = {root: i for i, root in enumerate(labels)}
    qm = np.zeros((k, k), dtype=np.int16)
    for bid, c in first_color.items():
        qm[bid // k, bid % k] = relabel[root_of[c]]
    return verify_scheme(qm)


def restriction(X: Scheme, points) -> Scheme:
    """Scheme induced on one class of a parabolic (any color-closed subset works)."""
    pts = np.asarray(sorted(points))
    sub = X.matrix[np.ix_(pts, pts)]
    present = np.unique(sub)
    relabel = np.zeros(X.rank, dtype=np.int16)
    for i, c in enumerate(present):
        relabel[c] = i
    return verify_scheme(relabel[sub])


# ---------------------------------------------------------------------------
# wreath, tensor and subtensor products


def wreath_product(x1: Scheme, x2: Scheme) -> Scheme:
    """Wreath product on pairs (a1, a2), point index a1 * n2 + a2.

    Inside a class of the second-coordinate parabolic the colors of x1
    survive; across classes only the x2 color of the class pair matters.
    Rank is r1 + r2 - 1.
    """
    n1, n2 = x1.n, x2.n
    r1 = x1.rank
    m1 = x1.matrix.astype(np.int16)
    m2 = x2.matrix.astype(np.int16)
    a1 = np.arange(n1 * n2) // n2
    a2 = np.arange(n1 * n2) % n2
    same = a2[:, None] == a2[None, :]
    out = np.where(same, m1[np.ix_(a1, a1)], m2[np.ix_(a2, a2)] + (r1 - 1))
    return verify_scheme(out.astype(np.int16))


def tensor_product(x1: Scheme, x2: Scheme) -> Scheme:
    """Tensor product: color of a pair is the pair of factor colors; rank r1*r2."""
    n1, n2 = x1.n, x2.n
    a1 = np.arange(n1 * n2) // n2
    a2 = np.arange(n1 * n2) % n2
    c1 = x1.matrix[np.ix_(a1, a1)].astype(np.int64)
    c2 = x2.matrix[np.ix_(a2, a2)].astype(np.int64)
    return verify_scheme(c1 * x2.rank + c2)


def is_subtensor(X: Scheme, e1: ParabolicSet, e2: ParabolicSet) -> bool:
    """Whether (e1, e2) exhibit X inside the tensor product of its two quotients.

    Requires the class systems to form a grid (each point determined by its
    pair of classes) and every color of X to lie inside one product of
    quotient colors.
    """
    all_parabolics = parabolics(X)
    if e1 not in all_parabolics or e2 not in all_parabolics:
        return False
    k1, k2 = e1.num_classes, e2.num_classes
    if k1 * k2 != X.n:
        return False
    cls1 = parabolic_classes(X, e1)
    cls2 = parabolic_classes(X, e2)
    if len(np.unique(cls1 * k2 + cls2)) != X.n:
        return False
    q1 = quotient(X, e1)
    q2 = quotient(X, e2)
    p1 = q1.matrix[np.ix_(cls1, cls1)]
    p2 = q2.matrix[np.ix_(cls2, cls2)]
    key = p1.astype(np.int64) * q2.rank + p2
    for s in range(X.rank):
        if len(np.unique(key[X.matrix == s])) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# algebraic automorphisms and fusions


def is_algebraic_map(X: Scheme, perm) -> bool:
    """Whether a color permutation fixes 0, commutes with star and preserves c."""
    perm = tuple(perm)
    if perm[0] != 0:
        return False
    if any(perm[X.star[s]] != X.star[perm[s]] for s in range(X.rank)):
        return False
    p = np.array(perm)
    return bool(np.array_equal(X.tensor[np.ix_(p, p, p)], X.tensor))


def algebraic_automorphisms(X: Scheme) -> PermGroup:
    """The group of all algebraic automorphisms, as permutations of the colors.

    Backtracking over color images with valency-class pruning; the full
    element list is returned (ranks here are small).
    """
    r = X.rank
    if r > 16:
        raise RankTooLarge(f"rank {r} exceeds the Aaut search bound 16")
    profile = [
        (X.valencies[s], X.star[s] == s, s) for s in range(1, r)
    ]
    # assign colors in (valency, self-pairedness) order for strong pruning
    cols = [s for _, _, s in sorted(profile)]
    candidates = {
        s: [t for t in range(1, r)
            if X.valencies[t] == X.valencies[s]
            and (X.star[t] == t) == (X.star[s] == s)]
        for s in cols
    }
    found: list[tuple[int, ...]] = []
    image = [0] * r
    used = [False] * r

    def consistent(k: int) -> bool:
        new = cols[k]
        assigned = cols[:k + 1] + [0]
        for a in assigned:
            for b in assigned:
                for t in assigned:
                    if new not in (a, b, t):
                        continue
                    if X.tensor[a, b, t] != X.tensor[image[a], image[b], image[t]]:
                        return False
        return True

    def extend(k: int):
        if k == len(cols):
            if is_algebraic_map(X, image):
                found.append(tuple(image))
            return
        s = cols[k]
        for t in candidates[s]:
            if used[t]:
                continue
            st = X.star[s]
            if st != s and image[st] and image[st] != X.star[t]:
                continue
            image[s] = t
            used[t] = True
            if consistent(k):
                extend(k + 1)
            image[s] = 0
            used[t] = False

    extend(0)
    elements = tuple(sorted(found))
    return PermGroup(r, elements, elements)


@dataclass(frozen=True)
class AlgebraicFusionResult:
    scheme: Scheme
    color_map: tuple[int, ...]      # old color -> new color
    involutive: bool                # the fusing group has order 2


def algebraic_fusion(X: Scheme, K: PermGroup) -> AlgebraicFusionResult:
    """Merge the colors of X along the orbits of K <= Aaut(X)."""
    for g in K.generators:
        if not is_algebraic_map(X, g):
            raise NotAlgebraic(f"generator {g} violates the intersection numbers")
    order = K.order()
    from .permgroup import orbits as _orbits

    parts = _orbits(K.generators, X.rank)
    color_map = np.zeros(X.rank, dtype=np.int16)
    nonzero = sorted(p[0] for p in parts if 0 not in p)
    rep_to_new = {rep: i + 1 for i, rep in enumerate(nonzero)}
    for part in parts:
        if 0 in part:
            assert part == [0]
            continue
        for c in part:
            color_map[c] = rep_to_new[part[0]]
    fused = verify_scheme(color_map[X.matrix])
    return AlgebraicFusionResult(fused, tuple(int(c) for c in color_map), order == 2)


def all_color_permutations_fixing_zero(rank: int):
    """Iterator over every color permutation with image(0) = 0."""
    for rest in permutations(range(1, rank)):
        yield (0,) + rest


# ---------------------------------------------------------------------------
# canonical serialization (stable across releases; cache keys hash this form)


def scheme_to_bytes(X: Scheme) -> bytes:
    """Canonical byte form: magic, version, n, r, matrix, star, tensor.

    Layout: b"AFSC", version u8, n u32le, r u32le, n*n color bytes
    (row-major, u8), r star bytes (u8), r**3 tensor entries (u32le, index
    (r*rank + s)*rank + t).
    """
    n, r = X.n, X.rank
    if r > 255:
        raise ValueError("rank above 255 not serializable")
    head = _MAGIC + struct.pack("<BII", _VERSION, n, r)
    body = X.matrix.astype(np.uint8).tobytes()
    body += bytes(X.star)
    body += X.tensor.astype(np.uint32).tobytes()
    return head + body


def scheme_from_bytes(data: bytes) -> Scheme:
    if data[:4] != _MAGIC:
        raise ValueError("bad magic")
    version, n, r = struct.unpack("<BII", data[4:13])
    if version != _VERSION:
        raise ValueError(f"unsupported version {version}")
    off = 13
    m = np.frombuffer(data, dtype=np.uint8, count=n * n, offset=off)
    m = m.reshape(n, n).astype(np.int16)
    off += n * n
    star = tuple(data[off:off + r])
    off += r
    tensor = np.frombuffer(data, dtype="<u4", count=r**3, offset=off)
    X = verify_scheme(m)
    if X.star != star or not np.array_equal(
        X.tensor.ravel(), tensor.astype(np.int64)
    ):
        raise ValueError("serialized star/tensor do not match the matrix")
    return X


def scheme_digest(X: Scheme) -> str:
    return hashlib.sha256(scheme_to_bytes(X)).hexdigest()
