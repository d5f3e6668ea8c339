"""Circulant graphs and the combinatorial invariants the engine needs.

Vertices are 0-indexed internally; vertex sets are plain ``int`` bitmasks.
CLI/report output converts to 1-indexing at the boundary.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import CapacityExceeded, InternalVerificationError

ISO_VERTEX_LIMIT = 24
MATCHING_VERTEX_LIMIT = 40
ENUM_VERTEX_LIMIT = 20


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions of a bitmask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Finite simple graph with an explicit loop set.

    ``adjacency[v]`` is the neighbor bitmask of v (symmetric, irreflexive);
    loops are tracked separately.
    """

    n_vertices: int
    adjacency: tuple[int, ...]
    loops: frozenset[int] = frozenset()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   loops: Iterable[int] = ()) -> Graph:
        adj = [0] * n
        loop_set = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for {n} vertices")
            if u == v:
                loop_set.add(u)
                continue
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        for v in loops:
            if not 0 <= v < n:
                raise ValueError(f"loop at {v} out of range")
            loop_set.add(v)
        return cls(n, tuple(adj), frozenset(loop_set))

    @property
    def full_mask(self) -> int:
        return (1 << self.n_vertices) - 1

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return u in self.loops
        return bool(self.adjacency[u] >> v & 1)

    def neighbors(self, v: int) -> int:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Non-loop edges (u, v) with u < v, sorted."""
        out = []
        for u in range(self.n_vertices):
            rest = self.adjacency[u] >> (u + 1) << (u + 1)
            for v in bits(rest):
                out.append((u, v))
        return out

    def n_edges(self) -> int:
        return sum(self.degree(v) for v in range(self.n_vertices)) // 2

    def add_edges(self, edges: Iterable[tuple[int, int]],
                  loops: Iterable[int] = ()) -> Graph:
        adj = list(self.adjacency)
        loop_set = set(self.loops)
        for u, v in edges:
            if u == v:
                loop_set.add(u)
            else:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        loop_set.update(loops)
        return Graph(self.n_vertices, tuple(adj), frozenset(loop_set))

    def to_text(self) -> str:
        """Fixture serialization: header, then one 0-indexed edge per line."""
        loops = ",".join(str(v) for v in sorted(self.loops))
        lines = [f"n={self.n_vertices} loops={loops}"]
        for u, v in self.edges():
            lines.append(f"{u} {v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Graph:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        header = dict(kv.split("=", 1) for kv in lines[0].split())
        n = int(header["n"])
        loops = [int(v) for v in header.get("loops", "").split(",") if v != ""]
        edges = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
        return cls.from_edges(n, edges, loops)


def circulant(m: int, S: Iterable[int]) -> Graph:
    """Circulant graph C_m(S): i ~ j iff |i-j| or m-|i-j| lies in S."""
    S = set(S)
    if m < 3:
        raise ValueError(f"need at least 3 vertices, got {m}")
    if not S or not all(1 <= s <= m // 2 for s in S):
        raise ValueError(f"generators {sorted(S)} not within 1..{m // 2}")
    edges = set()
    for i in range(m):
        for s in S:
            j = (i + s) % m
            if i != j:
                edges.add((min(i, j), max(i, j)))
    return Graph.from_edges(m, sorted(edges))


def cubic_circulant(n: int, a: int) -> Graph:
    """The cubic circulant C_{2n}(a, n)."""
    if not 1 <= a < n:
        raise ValueError(f"need 1 <= a < n, got a={a}, n={n}")
    return circulant(2 * n, {a, n})


def neighborhood(G: Graph, U: int) -> int:
    out = 0
    for v in bits(U):
        out |= G.adjacency[v]
    return out


def closed_neighborhood(G: Graph, U: int) -> int:
    return U | neighborhood(G, U)


def induced_subgraph(G: Graph, U: int) -> tuple[Graph, list[int]]:
    """Induced subgraph on bitmask U, relabeled to 0..|U|-1.

    Returns the subgraph and the vertex map: ``vmap[new] = old``.
    """
    vmap = list(bits(U))
    index = {old: new for new, old in enumerate(vmap)}
    adj = []
    for old in vmap:
        adj.append(mask_of(index[w] for w in bits(G.adjacency[old] & U)))
    loops = frozenset(index[v] for v in G.loops if U >> v & 1)
    return Graph(len(vmap), tuple(adj), loops), vmap


def delete_vertices(G: Graph, U: int) -> tuple[Graph, list[int]]:
    return induced_subgraph(G, G.full_mask & ~U)


def connected_components(G: Graph) -> list[int]:
    """Vertex bitmasks of the connected components, sorted by lowest vertex."""
    seen = 0
    comps = []
    for s in range(G.n_vertices):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= G.adjacency[v]
            frontier = nxt & ~comp
            comp |= frontier
        comps.append(comp)
        seen |= comp
    return comps


def is_bipartite(G: Graph) -> bool:
    if G.loops:
        return False
    color = [-1] * G.n_vertices
    for s in range(G.n_vertices):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in bits(G.adjacency[u]):
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def _refine_colors(G: Graph) -> list[tuple]:
    """Stable vertex invariants: degree, loop flag, triangle count, then
    iterated neighbor-color multisets."""
    tri = []
    for v in range(G.n_vertices):
        c = 0
        nb = list(bits(G.adjacency[v]))
        for i, u in enumerate(nb):
            for w in nb[i + 1:]:
                if G.adjacency[u] >> w & 1:
                    c += 1
        tri.append(c)
    colors = [(G.degree(v), v in G.loops, tri[v]) for v in range(G.n_vertices)]
    while True:
        new = [
            (colors[v], tuple(sorted(colors[u] for u in bits(G.adjacency[v]))))
            for v in range(G.n_vertices)
        ]
        # compress to keep tuples small
        palette = {c: i for i, c in enumerate(sorted(set(new)))}
        compressed = [(palette[c],) for c in new]
        if len(set(compressed)) == len(set(colors)):
            return colors
        colors = compressed


def is_isomorphic(G: Graph, H: Graph) -> bool:
    """Exact isomorphism test by invariant refinement plus backtracking."""
    if G.n_vertices != H.n_vertices:
        return False
    if max(G.n_vertices, H.n_vertices) > ISO_VERTEX_LIMIT:
        raise CapacityExceeded(
            f"isomorphism guard: {G.n_vertices} > {ISO_VERTEX_LIMIT} vertices")
    if G.n_edges() != H.n_edges() or len(G.loops) != len(H.loops):
        return False
    cg, ch = _refine_colors(G), _refine_colors(H)
    if sorted(cg) != sorted(ch):
        return False
    n = G.n_vertices
    # order G's vertices by rarest color first for early pruning
    freq = {c: cg.count(c) for c in set(cg)}
    order = sorted(range(n), key=lambda v: (freq[cg[v]], v))
    mapping = [-1] * n
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == n:
            return True
        g = order[k]
        for h in range(n):
            if used >> h & 1 or ch[h] != cg[g]:
                continue
            ok = (g in G.loops) == (h in H.loops)
            if ok:
                for g2 in order[:k]:
                    h2 = mapping[g2]
                    if (G.adjacency[g] >> g2 & 1) != (H.adjacency[h] >> h2 & 1):
                        ok = False
                        break
            if ok:
                mapping[g] = h
                used |= 1 << h
                if extend(k + 1):
                    return True
                used ^= 1 << h
                mapping[g] = -1
        return False

    return extend(0)


@dataclass(frozen=True)
class DecompositionReport:
    """Outcome of splitting a cubic circulant into connected copies."""

    n: int
    a: int
    count: int
    model: Graph
    components: tuple[int, ...]  # vertex bitmasks in the original graph
    verified: bool


def decompose_cubic(n: int, a: int) -> DecompositionReport:
    """Split C_{2n}(a, n) into connected copies of a single model circulant
    and verify each component is isomorphic to the model."""
    G = cubic_circulant(n, a)
    t = math.gcd(a, 2 * n)
    if (2 * n // t) % 2 == 0:
        count = t
        model = cubic_circulant(n // t, 1)
    else:
        count = t // 2
        model = circulant(4 * n // t, {2, 2 * n // t})
    comps = connected_components(G)
    if len(comps) != count:
        raise InternalVerificationError(
            f"C_{2*n}({a},{n}): expected {count} components, found {len(comps)}")
    for comp in comps:
        sub, _ = induced_subgraph(G, comp)
        if not is_isomorphic(sub, model):
            raise InternalVerificationError(
                f"C_{2*n}({a},{n}): component not isomorphic to model")
    return DecompositionReport(n, a, count, model, tuple(comps), True)


def induced_matching_number(G: Graph) -> int:
    """Exact induced matching number by branch and bound over edges."""
    if G.loops:
        raise ValueError("induced matching is defined for loop-free graphs")
    if G.n_vertices > MATCHING_VERTEX_LIMIT:
        raise CapacityExceeded(
            f"matching guard: {G.n_vertices} > {MATCHING_VERTEX_LIMIT} vertices")
    edge_list = G.edges()
    # for each edge, the vertices excluded once it enters the matching
    excl = [closed_neighborhood(G, mask_of((u, v))) for u, v in edge_list]
    emask = [mask_of((u, v)) for u, v in edge_list]
    best = 0

    def branch(idx: int, avail: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if count + avail.bit_count() // 2 <= best:
            return
        for i in range(idx, len(edge_list)):
            if emask[i] & ~avail:
                continue
            branch(i + 1, avail & ~excl[i], count + 1)
            # excluding edge i is implicit: the loop moves on

    branch(0, G.full_mask, 0)
    return best


def _maximal_independent_sets(G: Graph) -> list[int]:
    """Bron-Kerbosch with pivot on non-adjacency."""
    n = G.n_vertices
    full = G.full_mask
    nonadj = [full & ~G.adjacency[v] & ~(1 << v) for v in range(n)]
    out: list[int] = []

    def bk(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(r)
            return
        pivot_pool = p | x
        pivot = max(bits(pivot_pool), key=lambda v: (nonadj[v] & p).bit_count())
        for v in list(bits(p & ~nonadj[pivot])):
            bk(r | 1 << v, p & nonadj[v], x & nonadj[v])
            p &= ~(1 << v)
            x |= 1 << v

    bk(0, full, 0)
    return out


def minimal_vertex_covers(G: Graph) -> list[int]:
    """All inclusion-minimal vertex covers, as complements of maximal
    independent sets."""
    if G.loops:
        raise ValueError("vertex covers are defined for loop-free graphs")
    if G.n_vertices > ENUM_VERTEX_LIMIT:
        raise CapacityExceeded(
            f"cover guard: {G.n_vertices} > {ENUM_VERTEX_LIMIT} vertices")
    full = G.full_mask
    return sorted(full & ~s for s in _maximal_independent_sets(G))


def odd_cycles(G: Graph) -> Iterator[tuple[int, ...]]:
    """All simple cycles of odd length, once per rotation/reflection class.

    Each cycle is reported starting at its smallest vertex, with the second
    vertex smaller than the last.
    """
    if G.n_vertices > ENUM_VERTEX_LIMIT:
        raise CapacityExceeded(
            f"cycle guard: {G.n_vertices} > {ENUM_VERTEX_LIMIT} vertices")

    n = G.n_vertices
    path: list[int] = []

    def extend(start: int, visited: int) -> Iterator[tuple[int, ...]]:
        u = path[-1]
        for v in bits(G.adjacency[u] & ~visited):
            if v <= start:
                continue
            path.append(v)
            if len(path) >= 3 and len(path) % 2 == 1 \
                    and G.adjacency[v] >> start & 1 and path[1] < path[-1]:
                yield tuple(path)
            yield from extend(start, visited | 1 << v)
            path.pop()

    for s in range(n):
        path[:] = [s]
        yield from extend(s, 1 << s)
