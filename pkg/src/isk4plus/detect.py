"""Pattern detectors and exact oracles.

Covers recognition of K4 subdivisions, search for induced K4 subdivisions
on >= 5 vertices (the K4+ pattern family), K_{s,s} subgraphs, induced
bicliques, the stable-set extraction that upgrades a K_{s,s} to an induced
K4,4 under a clique-number bound, and exact clique/chromatic numbers.

All searches break ties toward the lexicographically smallest candidate,
so every output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, bit_list, lowest_bits

# status values for budget-limited searches
FOUND = "found"
NONE = "none"
BUDGET = "budget"

DEFAULT_NODE_BUDGET = 2_000_000
ORACLE_CEILING = 16

# branch-index pairs in canonical order; witness paths follow this order
PAIR_SLOTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class SearchBudgetExceeded(RuntimeError):
    """An exact search ran out of its node budget before finishing."""


class CliquePreconditionError(ValueError):
    """A clique larger than the promised bound was found; carries it."""

    def __init__(self, clique: tuple[int, ...]):
        super().__init__(f"clique {clique} exceeds the stated clique bound")
        self.clique = clique


@dataclass(frozen=True)
class SubdivisionWitness:
    """An induced subdivision of K4 inside a host graph.

    branch holds the four degree-3 vertices in ascending order; paths has
    one vertex sequence per PAIR_SLOTS entry, endpoints included; total is
    the bitmask of all witness vertices.
    """

    branch: tuple[int, int, int, int]
    paths: tuple[tuple[int, ...], ...]
    total: int

    def vertices(self) -> list[int]:
        return bit_list(self.total)


@dataclass(frozen=True)
class Detection:
    """Three-valued search outcome: found (with witness), none, or budget."""

    status: str
    witness: SubdivisionWitness | None = None

    @property
    def found(self) -> bool:
        return self.status == FOUND


@dataclass(frozen=True)
class BicliqueWitness:
    """Two disjoint sides with all cross edges; induced means both stable."""

    side_a: int
    side_b: int
    induced: bool


def _subset_subdivision(adj, members: int):
    """If the induced subgraph on members is a K4 subdivision, return its
    structure as (branch, pathmap) where pathmap maps branch-index pairs
    to full vertex paths; otherwise None.

    A K4 subdivision is recognized by: all degrees (within members) are 2
    or 3, exactly four vertices have degree 3, the degree-2 chains join the
    four branch vertices in all six pairs exactly once, and there are no
    stray vertices (which also forces connectivity).
    """
    branch = []
    t = members
    size = 0
    while t:
        b = t & -t
        v = b.bit_length() - 1
        t ^= b
        size += 1
        d = (adj[v] & members).bit_count()
        if d == 3:
            branch.append(v)
            if len(branch) > 4:
                return None
        elif d != 2:
            return None
    if len(branch) != 4:
        return None
    bindex = {v: i for i, v in enumerate(branch)}
    bmask = 0
    for v in branch:
        bmask |= 1 << v
    pathmap = {}
    consumed = set()
    covered = 4
    for b in branch:
        nb = adj[b] & members
        while nb:
            wbit = nb & -nb
            nb ^= wbit
            w = wbit.bit_length() - 1
            if (b, w) in consumed:
                continue
            prev, cur = b, w
            interior = []
            while not (bmask >> cur) & 1:
                interior.append(cur)
                step = adj[cur] & members & ~(1 << prev)
                prev, cur = cur, step.bit_length() - 1
            if cur == b:
                return None
            consumed.add((b, w))
            consumed.add((cur, prev))
            i, j = bindex[b], bindex[cur]
            key = (i, j) if i < j else (j, i)
            if key in pathmap:
                return None
            if i < j:
                pathmap[key] = (b, *interior, cur)
            else:
                pathmap[key] = (cur, *reversed(interior), b)
            covered += len(interior)
    if len(pathmap) != 6 or covered != size:
        return None
    return tuple(branch), pathmap


def witness_from_subset(G: Graph, members: int,
                        min_total: int = 5) -> SubdivisionWitness | None:
    """Build a witness if G restricted to members is a K4 subdivision on
    at least min_total vertices."""
    if members.bit_count() < min_total:
        return None
    res = _subset_subdivision(G.adj, members)
    if res is None:
        return None
    branch, pathmap = res
    paths = tuple(pathmap[slot] for slot in PAIR_SLOTS)
    return SubdivisionWitness(branch, paths, members)


def verify_subdivision_witness(G: Graph, w: SubdivisionWitness,
                               min_total: int = 5) -> bool:
    """Independent re-verification of every witness invariant against G."""
    adj = G.adj
    n = G.n
    if len(w.branch) != 4 or len(set(w.branch)) != 4:
        return False
    if any(not 0 <= v < n for v in w.branch):
        return False
    if len(w.paths) != 6:
        return False
    bmask = 0
    for v in w.branch:
        bmask |= 1 << v
    total = bmask
    seen_interior = 0
    expected = {v: 0 for v in w.branch}
    for slot, path in zip(PAIR_SLOTS, w.paths):
        x, y = w.branch[slot[0]], w.branch[slot[1]]
        if len(path) < 2 or path[0] != x or path[-1] != y:
            return False
        for a, b in zip(path, path[1:]):
            if not (adj[a] >> b) & 1:
                return False
            expected[a] = expected.get(a, 0) | (1 << b)
            expected[b] = expected.get(b, 0) | (1 << a)
        for u in path[1:-1]:
            ub = 1 << u
            if ub & (bmask | seen_interior):
                return False
            seen_interior |= ub
            total |= ub
    if total != w.total or total.bit_count() < min_total:
        return False
    # the witness must be induced: inside its vertex set, G has exactly
    # the path edges, which also pins branch degrees to 3 and the rest to 2
    for v, want in expected.items():
        if adj[v] & total != want:
            return False
        d = want.bit_count()
        if (bmask >> v) & 1:
            if d != 3:
                return False
        elif d != 2:
            return False
    return True


def is_k4_subdivision(G: Graph) -> bool:
    """Whole-graph test: is G itself a subdivision of K4 (K4 included)?"""
    if G.n < 4:
        return False
    return _subset_subdivision(G.adj, G.vertex_mask) is not None


def is_k4plus_subdivision(G: Graph) -> bool:
    """Whole-graph test for subdivisions of the once-subdivided K4.

    These are exactly the K4 subdivisions on at least 5 vertices: the
    extra vertex singles out one K4 edge as the subdivided one.
    """
    return G.n >= 5 and is_k4_subdivision(G)


# ---------------------------------------------------------------------------
# exhaustive subset oracle

_POPCOUNT16 = None


def _popcount_table():
    global _POPCOUNT16
    if _POPCOUNT16 is None:
        import numpy as np
        t = np.zeros(1 << 16, dtype=np.uint8)
        k = 1
        while k < (1 << 16):
            t[k:2 * k] = t[:k] + 1
            k *= 2
        _POPCOUNT16 = t
    return _POPCOUNT16


def _profile_candidates(adj, n: int, min_total: int):
    """Vectorized degree screen over all 2^n subsets (n <= 16).

    Returns ascending subset masks whose induced degree profile could be a
    K4 subdivision: every member degree in {2,3} with exactly four 3s.
    """
    import numpy as np
    P = _popcount_table()
    S = np.arange(1 << n, dtype=np.int32)
    ok = P[S] >= min_total
    cnt3 = np.zeros(1 << n, dtype=np.int8)
    for v in range(n):
        member = ((S >> v) & 1).astype(bool)
        dv = P[S & adj[v]]
        is3 = member & (dv == 3)
        cnt3 += is3
        ok &= ~(member & ~(is3 | (dv == 2)))
    ok &= cnt3 == 4
    return np.nonzero(ok)[0]


_VECTOR_MIN_N = 11


def find_isk4plus_oracle(G: Graph, *, ceiling: int = ORACLE_CEILING,
                         min_total: int = 5) -> SubdivisionWitness | None:
    """Ground-truth search: enumerate vertex subsets ascending by bitmask
    value and return a witness for the first subset inducing a K4
    subdivision on >= min_total vertices."""
    n = G.n
    if n > ceiling:
        raise ValueError(f"oracle ceiling exceeded: {n} > {ceiling}")
    if n < min_total:
        return None
    adj = G.adj
    if n >= _VECTOR_MIN_N:
        for S in _profile_candidates(adj, n, min_total):
            w = witness_from_subset(G, int(S), min_total)
            if w is not None:
                return w
        return None
    for S in range(1 << n):
        if S.bit_count() < min_total:
            continue
        res = _subset_subdivision(adj, S)
        if res is not None:
            branch, pathmap = res
            paths = tuple(pathmap[slot] for slot in PAIR_SLOTS)
            return SubdivisionWitness(branch, paths, S)
    return None


# ---------------------------------------------------------------------------
# direct branch-vertex search

class _BudgetHit(Exception):
    pass


def find_isk4plus(G: Graph, *, budget: int | None = DEFAULT_NODE_BUDGET,
                  min_total: int = 5) -> Detection:
    """Search for an induced K4 subdivision on >= min_total vertices.

    Enumerates ordered 4-sets of candidate branch vertices and grows the
    six connecting paths shortest-first with full backtracking, rejecting
    any chord against already placed witness vertices.  Existence verdicts
    match the subset oracle; the returned witness may differ.  Exhausting
    the node budget yields status "budget", never a wrong verdict.
    """
    n = G.n
    adj = G.adj
    if n < min_total or n < 4:
        return Detection(NONE)
    cand = [v for v in range(n) if adj[v].bit_count() >= 3]
    if len(cand) < 4:
        return Detection(NONE)
    ticks = budget if budget is not None else -1

    def spend():
        nonlocal ticks
        if ticks > 0:
            ticks -= 1
        elif ticks == 0:
            raise _BudgetHit

    try:
        for quad in combinations(cand, 4):
            spend()
            w = _search_quad(adj, quad, min_total, spend)
            if w is not None:
                return Detection(FOUND, w)
        return Detection(NONE)
    except _BudgetHit:
        return Detection(BUDGET)


def _search_quad(adj, quad, min_total, spend):
    qmask = 0
    for v in quad:
        qmask |= 1 << v
    direct = []
    open_pairs = []
    for i, j in PAIR_SLOTS:
        x, y = quad[i], quad[j]
        if (adj[x] >> y) & 1:
            direct.append((i, j))
        else:
            open_pairs.append((i, j))
    if not open_pairs:
        if min_total > 4:
            return None
        # the quad induces K4 itself
        paths = tuple((quad[i], quad[j]) for i, j in PAIR_SLOTS)
        return SubdivisionWitness(quad, paths, qmask)

    n_bits = len(adj)
    full = (1 << n_bits) - 1
    grown: dict[tuple[int, int], tuple[int, ...]] = {}

    def place(k: int, placed: int) -> bool:
        if k == len(open_pairs):
            return True
        i, j = open_pairs[k]
        x, y = quad[i], quad[j]
        xbit, ybit = 1 << x, 1 << y
        # interiors may touch only their own endpoints among placed vertices
        forbidden = placed & ~xbit & ~ybit
        avail = full & ~placed
        max_interior = avail.bit_count()

        def extend(prev: int, depth: int, pathmask: int,
                   acc: tuple[int, ...], limit: int) -> bool:
            prevbit = 1 << prev
            pool = adj[prev] & avail & ~pathmask
            while pool:
                wbit = pool & -pool
                pool ^= wbit
                spend()
                w = wbit.bit_length() - 1
                aw = adj[w]
                if aw & forbidden:
                    continue
                if depth > 1 and aw & xbit:
                    continue
                if aw & (pathmask & ~prevbit):
                    continue
                closes = bool(aw & ybit)
                if depth == limit:
                    if closes:
                        grown[(i, j)] = (x, *acc, w, y)
                        if place(k + 1, placed | pathmask | wbit):
                            return True
                        del grown[(i, j)]
                elif not closes:
                    if extend(w, depth + 1, pathmask | wbit, acc + (w,),
                              limit):
                        return True
            return False

        for limit in range(1, max_interior + 1):
            if extend(x, 1, 0, (), limit):
                return True
        return False

    if not place(0, qmask):
        return None
    pathmap = {}
    for i, j in direct:
        pathmap[(i, j)] = (quad[i], quad[j])
    total = qmask
    for key, path in grown.items():
        pathmap[key] = path
        for u in path[1:-1]:
            total |= 1 << u
    paths = tuple(pathmap[slot] for slot in PAIR_SLOTS)
    return SubdivisionWitness(quad, paths, total)


# ---------------------------------------------------------------------------
# bicliques

def _validate_sides(G: Graph, side_a: int, side_b: int) -> None:
    if side_a & side_b:
        raise ValueError("biclique sides overlap")
    if (side_a | side_b) & ~G.vertex_mask:
        raise ValueError("biclique side outside the graph")
    for a in bit_list(side_a):
        if G.adj[a] & side_b != side_b:
            raise ValueError(f"vertex {a} misses part of the far side")


def find_biclique_subgraph(G: Graph, s: int) -> BicliqueWitness | None:
    """Smallest K_{s,s} subgraph (sides need not be stable), or None.

    Side A is grown vertex by vertex in ascending order while intersecting
    the common neighborhood; side B is the lexicographically least s-subset
    of the final common neighborhood.
    """
    if s < 1:
        raise ValueError("s must be positive")
    n = G.n
    adj = G.adj
    cand = [v for v in range(n) if adj[v].bit_count() >= s]
    if len(cand) < s:
        return None

    def grow(start: int, chosen: int, k: int, common: int):
        if k == s:
            if common.bit_count() >= s:
                return chosen, lowest_bits(common, s)
            return None
        for idx in range(start, len(cand)):
            v = cand[idx]
            ncommon = common & adj[v]
            if ncommon.bit_count() < s:
                continue
            hit = grow(idx + 1, chosen | (1 << v), k + 1, ncommon)
            if hit is not None:
                return hit
        return None

    hit = grow(0, 0, 0, G.vertex_mask)
    if hit is None:
        return None
    a, b = hit
    return BicliqueWitness(a, b, induced=False)


def _smallest_stable_subset(adj, pool: int, s: int,
                            spend=None) -> int | None:
    """Lexicographically least stable s-subset of pool, or None."""
    verts = bit_list(pool)

    def grow(start: int, chosen: int, k: int, allowed: int):
        if k == s:
            return chosen
        for idx in range(start, len(verts)):
            v = verts[idx]
            vbit = 1 << v
            if not allowed & vbit:
                continue
            if spend is not None:
                spend()
            rest = allowed & ~adj[v] & ~vbit
            # even taking every remaining allowed vertex must reach s
            if rest.bit_count() < s - k - 1:
                continue
            hit = grow(idx + 1, chosen | vbit, k + 1, rest)
            if hit is not None:
                return hit
        return None

    return grow(0, 0, 0, pool)


def find_induced_biclique(G: Graph, s: int,
                          budget: int | None = None) -> BicliqueWitness | None:
    """Smallest induced K_{s,s}: both sides stable, all cross edges present.

    An optional node budget raises SearchBudgetExceeded when exhausted.
    """
    if s < 1:
        raise ValueError("s must be positive")
    n = G.n
    adj = G.adj
    if n < 2 * s:
        return None
    cand = [v for v in range(n) if adj[v].bit_count() >= s]
    if len(cand) < 2 * s:
        return None
    ticks = budget if budget is not None else -1

    def spend():
        nonlocal ticks
        if ticks > 0:
            ticks -= 1
        elif ticks == 0:
            raise SearchBudgetExceeded("induced biclique search budget")

    def grow(start: int, chosen: int, k: int, common: int, stable_pool: int):
        if k == s:
            b = _smallest_stable_subset(adj, common, s, spend)
            if b is not None:
                return chosen, b
            return None
        for idx in range(start, len(cand)):
            v = cand[idx]
            vbit = 1 << v
            if not stable_pool & vbit:
                continue
            spend()
            ncommon = common & adj[v]
            if ncommon.bit_count() < s:
                continue
            hit = grow(idx + 1, chosen | vbit, k + 1, ncommon,
                       stable_pool & ~adj[v] & ~vbit)
            if hit is not None:
                return hit
        return None

    hit = grow(0, 0, 0, G.vertex_mask, G.vertex_mask)
    if hit is None:
        return None
    a, b = hit
    return BicliqueWitness(a, b, induced=True)


def ramsey_extract_k44(G: Graph, w: BicliqueWitness,
                       k: int) -> BicliqueWitness | None:
    """Upgrade a K_{s,s} subgraph to an induced K4,4 under clique bound k.

    Searches each side for a stable 4-subset; cross edges are inherited.
    If a side has no stable 4-set but holds a k-clique, the clique bound is
    violated (that clique plus any far-side vertex is a (k+1)-clique) and a
    CliquePreconditionError carrying the clique is raised.  Returns None
    when a side simply has no stable 4-set and no clique evidence, which
    can happen for sides smaller than the relevant Ramsey number.
    """
    if k < 1:
        raise ValueError("clique bound must be positive")
    _validate_sides(G, w.side_a, w.side_b)
    if w.side_a.bit_count() < 4 or w.side_b.bit_count() < 4:
        raise ValueError("seed sides must have at least 4 vertices")
    adj = G.adj
    picked = []
    for side, other in ((w.side_a, w.side_b), (w.side_b, w.side_a)):
        stable = _smallest_stable_subset(adj, side, 4)
        if stable is None:
            size, clique = _max_clique_in(adj, side)
            if size >= k + 1:
                raise CliquePreconditionError(tuple(bit_list(
                    lowest_bits(clique, k + 1))))
            if size == k:
                extra = other & -other
                raise CliquePreconditionError(tuple(sorted(
                    bit_list(clique) + [extra.bit_length() - 1])))
            return None
        picked.append(stable)
    out = BicliqueWitness(picked[0], picked[1], induced=True)
    _validate_sides(G, out.side_a, out.side_b)
    return out


# ---------------------------------------------------------------------------
# exact clique and chromatic numbers

def _max_clique_in(adj, pool: int, budget: int | None = None
                   ) -> tuple[int, int]:
    """Exact maximum clique within a vertex mask: (size, clique mask).

    Pivoting branch and bound on bitmask adjacency.
    """
    best_size = 0
    best_mask = 0
    ticks = budget if budget is not None else -1

    def expand(rmask: int, rsize: int, P: int):
        nonlocal best_size, best_mask, ticks
        if ticks == 0:
            raise SearchBudgetExceeded("clique search budget")
        if ticks > 0:
            ticks -= 1
        if not P:
            if rsize > best_size:
                best_size = rsize
                best_mask = rmask
            return
        if rsize + P.bit_count() <= best_size:
            return
        # pivot: vertex of P covering most of P
        pivot = -1
        cover = -1
        t = P
        while t:
            b = t & -t
            t ^= b
            u = b.bit_length() - 1
            c = (adj[u] & P).bit_count()
            if c > cover:
                cover = c
                pivot = u
        ext = P & ~adj[pivot]
        while ext:
            vbit = ext & -ext
            ext ^= vbit
            v = vbit.bit_length() - 1
            expand(rmask | vbit, rsize + 1, P & adj[v])
            P ^= vbit
            if rsize + P.bit_count() <= best_size:
                return

    expand(0, 0, pool)
    return best_size, best_mask


def clique_number(G: Graph, *, budget: int | None = None) -> int:
    """Exact clique number; raises SearchBudgetExceeded past the budget."""
    size, _ = _max_clique_in(G.adj, G.vertex_mask, budget)
    return size


def maximum_clique(G: Graph, *, budget: int | None = None) -> int:
    """Bitmask of one maximum clique (deterministic)."""
    _, mask = _max_clique_in(G.adj, G.vertex_mask, budget)
    return mask


def _dsatur_order_color(adj, n: int) -> tuple[int, list[int]]:
    """Greedy DSATUR coloring: (palette size, colors)."""
    colors = [-1] * n
    satur = [0] * n
    neigh_colors = [0] * n
    degs = [adj[v].bit_count() for v in range(n)]
    for _ in range(n):
        best = -1
        key = (-1, -1, 1)
        for v in range(n):
            if colors[v] != -1:
                continue
            cand = (satur[v], degs[v], -v)
            if cand > key:
                key = cand
                best = v
        c = 0
        used = neigh_colors[best]
        while (used >> c) & 1:
            c += 1
        colors[best] = c
        row = adj[best]
        while row:
            b = row & -row
            row ^= b
            u = b.bit_length() - 1
            if colors[u] == -1 and not (neigh_colors[u] >> c) & 1:
                neigh_colors[u] |= 1 << c
                satur[u] += 1
    return (max(colors) + 1 if n else 0), colors


def _k_colorable(adj, n: int, k: int, spend) -> bool:
    """Backtracking k-colorability, DSATUR vertex order, canonical colors."""
    colors = [-1] * n
    neigh_colors = [0] * n
    satur = [0] * n
    degs = [adj[v].bit_count() for v in range(n)]

    def rec(done: int, used: int) -> bool:
        spend()
        if done == n:
            return True
        best = -1
        key = (-1, -1, 1)
        for v in range(n):
            if colors[v] != -1:
                continue
            cand = (satur[v], degs[v], -v)
            if cand > key:
                key = cand
                best = v
        v = best
        limit = min(k, used + 1)
        for c in range(limit):
            if (neigh_colors[v] >> c) & 1:
                continue
            colors[v] = c
            touched = []
            row = adj[v]
            while row:
                b = row & -row
                row ^= b
                u = b.bit_length() - 1
                if colors[u] == -1 and not (neigh_colors[u] >> c) & 1:
                    neigh_colors[u] |= 1 << c
                    satur[u] += 1
                    touched.append(u)
            if rec(done + 1, max(used, c + 1)):
                return True
            colors[v] = -1
            for u in touched:
                neigh_colors[u] &= ~(1 << c)
                satur[u] -= 1
        return False

    return rec(0, 0)


def chromatic_number_exact(G: Graph, *, budget: int | None = None) -> int:
    """Exact chromatic number by branch and bound between the clique lower
    bound and the DSATUR greedy upper bound."""
    n = G.n
    if n == 0:
        return 0
    adj = G.adj
    lb = clique_number(G, budget=budget)
    ub, _ = _dsatur_order_color(adj, n)
    ticks = budget if budget is not None else -1

    def spend():
        nonlocal ticks
        if ticks > 0:
            ticks -= 1
        elif ticks == 0:
            raise SearchBudgetExceeded("chromatic search budget")

    for k in range(lb, ub):
        if _k_colorable(adj, n, k, spend):
            return k
    return ub
