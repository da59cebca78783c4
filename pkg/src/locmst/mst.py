"""Minimum spanning trees under a deterministic edge order.

Edges are compared by the key kappa(e) = (h(e), i, j) with i < j, so the
tree is unique even when base weights tie (lattice inputs, duplicated
points).  Because x -> x**alpha is strictly increasing, the same edge set
minimizes sum h(e)**alpha for every alpha > 0; algorithms here therefore
sort on base weights only and alpha enters only when scoring a tree.

Three independent constructions are provided:

* ``mst_prim_dense`` -- rowwise Prim, O(n^2) time and O(n) memory beyond
  the coordinate arrays; the workhorse for large inputs.
* ``mst_kruskal`` -- sort all pairs with np.lexsort, then union-find.
* ``mst_brute_force`` -- enumerate every labeled spanning tree through
  Prufer sequences (n <= 8) and take the kappa-lexicographic minimum.

All three must agree edge for edge; the test suite leans on that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .weights import WeightSpec, pair_weight, row_weight_fn, weight_matrix

TWO_PI = 2.0 * math.pi

BRUTE_FORCE_MAX_N = 8
_KRUSKAL_MAX_N = 500


class TooLargeForBruteForceError(ValueError):
    pass


class DuplicatePointsError(ValueError):
    """Coincident points make h(u, v) = 0, which the weight band forbids."""

    def __init__(self, i: int, j: int):
        self.indices = (i, j)
        super().__init__(f"points {i} and {j} coincide")


def _reject_duplicates(coords: np.ndarray) -> None:
    n = len(coords)
    if n < 2:
        return
    order = np.lexsort((coords[:, 1], coords[:, 0]))
    same = np.all(coords[order[1:]] == coords[order[:-1]], axis=1)
    hit = np.flatnonzero(same)
    if len(hit):
        a, b = int(order[hit[0]]), int(order[hit[0] + 1])
        raise DuplicatePointsError(min(a, b), max(a, b))


@dataclass(frozen=True)
class MstResult:
    """A spanning tree with kappa-sorted edge arrays."""

    n: int
    edge_i: np.ndarray  # int, i < j
    edge_j: np.ndarray
    base_weights: np.ndarray

    def total_weight(self, alpha: float) -> float:
        return math.fsum(float(w) ** alpha for w in self.base_weights)

    @property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        np.add.at(deg, self.edge_i, 1)
        np.add.at(deg, self.edge_j, 1)
        return deg

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n > 1 else 0

    def degree_histogram(self) -> dict[int, int]:
        vals, counts = np.unique(self.degrees, return_counts=True)
        return dict(zip(vals.tolist(), counts.tolist()))

    def edge_set(self) -> set[tuple[int, int]]:
        return set(zip(self.edge_i.tolist(), self.edge_j.tolist()))


def _sorted_result(n: int, ei, ej, w) -> MstResult:
    ei = np.asarray(ei, dtype=np.int64)
    ej = np.asarray(ej, dtype=np.int64)
    w = np.asarray(w, dtype=float)
    lo = np.minimum(ei, ej)
    hi = np.maximum(ei, ej)
    order = np.lexsort((hi, lo, w))
    return MstResult(n=n, edge_i=lo[order], edge_j=hi[order],
                     base_weights=w[order])


def mst_prim_dense(spec: WeightSpec, coords: np.ndarray) -> MstResult:
    coords = np.asarray(coords, dtype=float)
    n = len(coords)
    if n <= 1:
        return MstResult(n=n, edge_i=np.empty(0, np.int64),
                         edge_j=np.empty(0, np.int64),
                         base_weights=np.empty(0, float))
    _reject_duplicates(coords)
    row = row_weight_fn(spec, coords)
    in_tree = np.zeros(n, dtype=bool)
    best_w = np.full(n, np.inf)
    best_i = np.full(n, -1, dtype=np.int64)
    best_j = np.full(n, -1, dtype=np.int64)
    in_tree[0] = True
    w0 = row(0)
    best_w[1:] = w0[1:]
    best_i[1:] = 0
    best_j[1:] = np.arange(1, n)
    out_i = np.empty(n - 1, np.int64)
    out_j = np.empty(n - 1, np.int64)
    out_w = np.empty(n - 1, float)
    masked = best_w.copy()
    masked[0] = np.inf
    for step in range(n - 1):
        m = masked.min()
        cand = np.flatnonzero(masked == m)
        if len(cand) > 1:
            pick = np.lexsort((best_j[cand], best_i[cand]))[0]
            v = int(cand[pick])
        else:
            v = int(cand[0])
        out_i[step], out_j[step], out_w[step] = best_i[v], best_j[v], best_w[v]
        in_tree[v] = True
        masked[v] = np.inf
        wv = row(v)
        lo = np.minimum(v, np.arange(n))
        hi = np.maximum(v, np.arange(n))
        strictly = wv < best_w
        tied = (wv == best_w) & (
            (lo < best_i) | ((lo == best_i) & (hi < best_j))
        )
        upd = (strictly | tied) & ~in_tree
        best_w[upd] = wv[upd]
        best_i[upd] = lo[upd]
        best_j[upd] = hi[upd]
        masked[upd] = wv[upd]
    return _sorted_result(n, out_i, out_j, out_w)


class _UnionFind:
    __slots__ = ("parent", "rank")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def mst_kruskal(spec: WeightSpec, coords: np.ndarray) -> MstResult:
    coords = np.asarray(coords, dtype=float)
    n = len(coords)
    if n <= 1:
        return MstResult(n=n, edge_i=np.empty(0, np.int64),
                         edge_j=np.empty(0, np.int64),
                         base_weights=np.empty(0, float))
    _reject_duplicates(coords)
    w = weight_matrix(spec, coords)
    ii, jj = np.triu_indices(n, k=1)
    ww = w[ii, jj]
    order = np.lexsort((jj, ii, ww))
    uf = _UnionFind(n)
    out_i, out_j, out_w = [], [], []
    for k in order:
        a, b = int(ii[k]), int(jj[k])
        if uf.union(a, b):
            out_i.append(a)
            out_j.append(b)
            out_w.append(float(ww[k]))
            if len(out_i) == n - 1:
                break
    return _sorted_result(n, out_i, out_j, out_w)


@lru_cache(maxsize=8)
def _all_trees_by_prufer(n: int) -> np.ndarray:
    """Edge arrays of all n**(n-2) labeled trees, shape (T, n-1, 2), i < j."""
    if n == 2:
        return np.array([[[0, 1]]], dtype=np.int64)
    seq_len = n - 2
    t_count = n**seq_len
    grids = np.meshgrid(*([np.arange(n)] * seq_len), indexing="ij")
    seqs = np.stack([g.ravel() for g in grids], axis=1)  # (T, n-2)
    degree = np.ones((t_count, n), dtype=np.int64)
    np.add.at(degree.reshape(-1), seqs + n * np.arange(t_count)[:, None], 1)
    rows = np.arange(t_count)
    edges = np.empty((t_count, n - 1, 2), dtype=np.int64)
    for k in range(seq_len):
        leaf = np.argmax(degree == 1, axis=1)  # smallest index with degree 1
        u = seqs[:, k]
        edges[:, k, 0] = np.minimum(leaf, u)
        edges[:, k, 1] = np.maximum(leaf, u)
        degree[rows, leaf] -= 1
        degree[rows, u] -= 1
    last = np.nonzero(degree == 1)[1].reshape(t_count, 2)
    edges[:, seq_len, 0] = last[:, 0]
    edges[:, seq_len, 1] = last[:, 1]
    return edges


def mst_brute_force(spec: WeightSpec, coords: np.ndarray) -> MstResult:
    """Exact minimum over all labeled spanning trees; n <= 8 only.

    The winner is the tree whose sorted kappa sequence is
    lexicographically smallest; that tree simultaneously minimizes
    sum h(e)**alpha for every alpha > 0.
    """
    coords = np.asarray(coords, dtype=float)
    n = len(coords)
    if n > BRUTE_FORCE_MAX_N:
        raise TooLargeForBruteForceError(
            f"{n} points would need {n**(n - 2)} trees; max n is "
            f"{BRUTE_FORCE_MAX_N}"
        )
    if n <= 1:
        return MstResult(n=n, edge_i=np.empty(0, np.int64),
                         edge_j=np.empty(0, np.int64),
                         base_weights=np.empty(0, float))
    _reject_duplicates(coords)
    w = weight_matrix(spec, coords)
    trees = _all_trees_by_prufer(n)
    tree_w = w[trees[:, :, 0], trees[:, :, 1]]  # (T, n-1)
    sums = tree_w.sum(axis=1)
    cutoff = sums.min() + 1e-9 * max(1.0, abs(sums.min()))
    cand = np.flatnonzero(sums <= cutoff)
    best_key = None
    best_idx = -1
    for t in cand:
        key = sorted(
            (float(tree_w[t, k]), int(trees[t, k, 0]), int(trees[t, k, 1]))
            for k in range(n - 1)
        )
        if best_key is None or key < best_key:
            best_key = key
            best_idx = int(t)
    return _sorted_result(
        n, trees[best_idx, :, 0], trees[best_idx, :, 1], tree_w[best_idx]
    )


def minimum_spanning_tree(
    spec: WeightSpec, coords: np.ndarray, algorithm: str = "auto"
) -> MstResult:
    coords = np.asarray(coords, dtype=float)
    if algorithm == "auto":
        algorithm = "kruskal" if len(coords) <= _KRUSKAL_MAX_N else "prim"
    if algorithm == "prim":
        return mst_prim_dense(spec, coords)
    if algorithm == "kruskal":
        return mst_kruskal(spec, coords)
    if algorithm == "brute":
        return mst_brute_force(spec, coords)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def verify_path_criterion(
    spec: WeightSpec, coords: np.ndarray, result: MstResult
) -> tuple[bool, tuple[int, int] | None]:
    """Check the tree against every non-tree edge.

    T is the minimum tree iff for each non-tree edge e = (i, j), every
    edge f on the tree path between i and j satisfies kappa(f) < kappa(e).
    Returns (True, None) or (False, witness_pair).
    """
    coords = np.asarray(coords, dtype=float)
    n = len(coords)
    if n < 2:
        return True, None
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    tree_edges = result.edge_set()
    for a, b, wv in zip(result.edge_i, result.edge_j, result.base_weights):
        adj[int(a)].append((int(b), float(wv)))
        adj[int(b)].append((int(a), float(wv)))
    for root in range(n):
        # max kappa along the tree path from root to every other vertex
        max_kappa: list[tuple[float, int, int] | None] = [None] * n
        stack = [root]
        seen = [False] * n
        seen[root] = True
        while stack:
            u = stack.pop()
            for v, wv in adj[u]:
                if seen[v]:
                    continue
                seen[v] = True
                k_edge = (wv, min(u, v), max(u, v))
                prev = max_kappa[u]
                max_kappa[v] = k_edge if prev is None or k_edge > prev else prev
                stack.append(v)
        for j in range(root + 1, n):
            if (root, j) in tree_edges:
                continue
            k_e = (pair_weight(spec, coords[root], coords[j]), root, j)
            if not max_kappa[j] < k_e:
                return False, (root, j)
    return True, None


def alpha_invariance_check(
    spec: WeightSpec, coords: np.ndarray, alphas=(0.5, 1.0, 2.0, 3.0)
) -> bool:
    """Run Kruskal on the transformed weights h**alpha for each alpha and
    confirm the edge set never moves."""
    coords = np.asarray(coords, dtype=float)
    n = len(coords)
    if n < 2:
        return True
    base = weight_matrix(spec, coords)
    ii, jj = np.triu_indices(n, k=1)
    reference = None
    for alpha in alphas:
        ww = base[ii, jj] ** alpha
        order = np.lexsort((jj, ii, ww))
        uf = _UnionFind(n)
        chosen = set()
        for k in order:
            a, b = int(ii[k]), int(jj[k])
            if uf.union(a, b):
                chosen.add((a, b))
                if len(chosen) == n - 1:
                    break
        if reference is None:
            reference = chosen
        elif chosen != reference:
            return False
    return True


def verify_cut_property(
    spec: WeightSpec, coords: np.ndarray, result: MstResult
) -> tuple[bool, tuple[int, int] | None]:
    """Each tree edge must be the kappa-minimal edge across its own cut.

    Removing a tree edge splits the vertices in two; the removed edge has
    to beat every other edge crossing that split.  O(n^3)-ish, intended
    for n up to a few hundred.
    """
    coords = np.asarray(coords, dtype=float)
    n = len(coords)
    if n < 2:
        return True, None
    w = weight_matrix(spec, coords)
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in zip(result.edge_i, result.edge_j):
        adj[int(a)].append(int(b))
        adj[int(b)].append(int(a))
    idx = np.arange(n)
    for a, b, wv in zip(result.edge_i, result.edge_j, result.base_weights):
        a, b = int(a), int(b)
        side = np.zeros(n, dtype=bool)  # component of a once (a, b) is cut
        side[a] = True
        stack = [a]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if not side[v] and not (u == a and v == b) and not (
                    u == b and v == a
                ):
                    side[v] = True
                    stack.append(v)
        cross_w = w[np.ix_(side, ~side)]
        left = idx[side]
        right = idx[~side]
        m = cross_w.min()
        if m < wv:
            r, c = np.unravel_index(np.argmin(cross_w), cross_w.shape)
            return False, (int(left[r]), int(right[c]))
        if m == wv:
            rr, cc = np.nonzero(cross_w == m)
            pairs = sorted(
                (min(int(left[r]), int(right[c])),
                 max(int(left[r]), int(right[c])))
                for r, c in zip(rr, cc)
            )
            if pairs[0] != (min(a, b), max(a, b)):
                return False, pairs[0]
    return True, None


class InvalidKError(ValueError):
    """Sector count too small for the weight band's ratio c1/c2."""


def sector_ratio_r0(K: int, ratio: float) -> float:
    """Largest x in (0, 1] with sqrt(1 + x^2 - 2x cos(2pi/K)) >= ratio.

    Two tree edges leaving the same vertex inside one angular sector of
    width 2pi/K must have length ratio (shorter over longer) at most this
    value; otherwise replacing the longer edge by the third triangle side
    would improve the tree.  Requires sqrt(2 - 2cos(2pi/K)) < ratio, i.e.
    the sector narrow enough that the triangle argument bites at all.  At
    ratio = 1 (a single-constant band) the root degenerates to 1 and the
    audit is vacuous.
    """
    if K < 3:
        raise InvalidKError("need at least 3 sectors")
    if not 0 < ratio <= 1:
        raise ValueError("ratio must be in (0, 1]")
    theta = TWO_PI / K
    if not math.sqrt(2.0 - 2.0 * math.cos(theta)) < ratio:
        raise InvalidKError(
            f"K={K} violates sqrt(2 - 2cos(2pi/K)) < c1/c2 = {ratio}"
        )
    if ratio >= 1.0:
        return 1.0

    def g(x: float) -> float:
        return math.sqrt(1.0 + x * x - 2.0 * x * math.cos(theta))

    # g decreases from 1 at x=0 to sin(theta) at x=cos(theta); the
    # precondition puts ratio strictly between those, so the root is
    # unique on this branch and g >= ratio exactly on (0, root].
    lo, hi = 0.0, math.cos(theta)
    while hi - lo > 1e-12:
        mid = (lo + hi) / 2.0
        if g(mid) >= ratio:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def sector_ratio_audit(
    spec: WeightSpec, coords: np.ndarray, result: MstResult, K: int
) -> list[tuple[int, int, float, float]]:
    """Check incident-edge length ratios within angular sectors.

    At every vertex, incident tree edges are bucketed into K equal
    angular sectors (measured from the positive x axis); within a sector
    the Euclidean lengths are sorted descending and every consecutive
    ratio must be <= r0 + 1e-9.  Returns the violations as
    (vertex, sector, longer, shorter) tuples; empty means clean.
    """
    coords = np.asarray(coords, dtype=float)
    r0 = sector_ratio_r0(K, spec.c1 / spec.c2)
    incident: list[list[int]] = [[] for _ in range(result.n)]
    for a, b in zip(result.edge_i, result.edge_j):
        incident[int(a)].append(int(b))
        incident[int(b)].append(int(a))
    theta = TWO_PI / K
    violations = []
    for v, nbrs in enumerate(incident):
        if len(nbrs) < 2:
            continue
        buckets: dict[int, list[float]] = {}
        for u in nbrs:
            dx = coords[u, 0] - coords[v, 0]
            dy = coords[u, 1] - coords[v, 1]
            ang = math.atan2(dy, dx) % TWO_PI
            sec = min(int(ang / theta), K - 1)
            buckets.setdefault(sec, []).append(math.hypot(dx, dy))
        for sec, lens in buckets.items():
            if len(lens) < 2:
                continue
            lens.sort(reverse=True)
            for longer, shorter in zip(lens, lens[1:]):
                if shorter / longer > r0 + 1e-9:
                    violations.append((v, sec, longer, shorter))
    return violations


class SpecMissingPropertyError(ValueError):
    """The weight kind lacks the scaling or translation property."""


def scale_check(
    spec: WeightSpec, coords: np.ndarray, a: float, alpha: float
) -> tuple[float, float, bool]:
    """Homogeneity: MST(a * X) = a**alpha * MST(X) with the same edges.

    Returns (scaled total, a**alpha * original total, same_edge_set).
    """
    if not spec.homogeneous:
        raise SpecMissingPropertyError(f"{spec.kind} weights are not homogeneous")
    if a <= 0:
        raise ValueError("scale factor must be positive")
    coords = np.asarray(coords, dtype=float)
    base = minimum_spanning_tree(spec, coords)
    scaled = minimum_spanning_tree(spec, a * coords)
    return (
        scaled.total_weight(alpha),
        a**alpha * base.total_weight(alpha),
        scaled.edge_set() == base.edge_set(),
    )


def translate_check(
    spec: WeightSpec, coords: np.ndarray, b, alpha: float
) -> tuple[float, float, bool]:
    """Translation bound: MST(X + b) <= h0**alpha * MST(X) + 1e-10.

    Returns (shifted total, bound, holds).
    """
    if spec.h0 is None:
        raise SpecMissingPropertyError(
            f"{spec.kind} weights have no translation constant"
        )
    coords = np.asarray(coords, dtype=float)
    shift = np.asarray(b, dtype=float).reshape(1, 2)
    base = minimum_spanning_tree(spec, coords)
    moved = minimum_spanning_tree(spec, coords + shift)
    lhs = moved.total_weight(alpha)
    rhs = spec.h0**alpha * base.total_weight(alpha)
    return lhs, rhs, lhs <= rhs + 1e-10


def scale_translate_check(
    spec: WeightSpec, coords: np.ndarray, a: float, b, alpha: float
) -> bool:
    """Combined verdict for the scaling identity and the translation bound."""
    ok = True
    if spec.homogeneous:
        lhs, rhs, same = scale_check(spec, coords, a, alpha)
        rel = abs(lhs - rhs) / max(abs(rhs), 1e-300)
        ok &= same and rel <= 1e-10
    if spec.h0 is not None:
        ok &= translate_check(spec, coords, b, alpha)[2]
    return ok
