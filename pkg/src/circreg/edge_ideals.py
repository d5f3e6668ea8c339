"""Edge ideals, their powers and symbolic powers, colon ideals by edge
products, and even-connection graphs.

The colon of I(G)^t by a product of t-1 edges equals the edge ideal of the
graph obtained by adding an edge for every even-connected pair of vertices
(a loop when a vertex is even-connected to itself); the functions here
compute both sides so they can be compared as an oracle check.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import reduce

from .errors import CapacityExceeded
from .graphs import Graph, bits, mask_of, minimal_vertex_covers
from .monomials import Monomial, MonomialIdeal, minimalize

SYMBOLIC_WORK_LIMIT = 600  # cover count * exponent guard


def edge_ideal(G: Graph) -> MonomialIdeal:
    """x_i x_j per edge, and x_j^2 per loop."""
    n = G.n_vertices
    gens = [Monomial.from_support(n, e) for e in G.edges()]
    for j in G.loops:
        e = [0] * n
        e[j] = 2
        gens.append(Monomial(tuple(e)))
    return minimalize(n, gens)


def edge_monomial(G: Graph, e: tuple[int, int]) -> Monomial:
    u, v = e
    if not G.has_edge(u, v):
        raise ValueError(f"({u},{v}) is not an edge")
    return Monomial.from_support(G.n_vertices, (u, v))


@dataclass(frozen=True)
class EdgeTuple:
    """An ordered tuple of t-1 (possibly repeated) edges of a base graph."""

    graph: Graph
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = tuple((min(u, v), max(u, v)) for u, v in self.edges)
        for u, v in norm:
            if not self.graph.has_edge(u, v):
                raise ValueError(f"({u},{v}) is not an edge of the base graph")
        object.__setattr__(self, "edges", norm)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def multiplicities(self) -> Counter:
        return Counter(self.edges)

    @property
    def support_edges(self) -> tuple[tuple[int, int], ...]:
        """Distinct edges, in order of first appearance."""
        seen: dict[tuple[int, int], None] = {}
        for e in self.edges:
            seen.setdefault(e)
        return tuple(seen)

    def monomial(self) -> Monomial:
        m = Monomial.one(self.graph.n_vertices)
        for e in self.edges:
            m = m * edge_monomial(self.graph, e)
        return m

    def deduplicated(self) -> EdgeTuple:
        return EdgeTuple(self.graph, self.support_edges)

    def drop_last(self) -> EdgeTuple:
        return EdgeTuple(self.graph, self.edges[:-1])

    def __str__(self) -> str:
        # 1-indexed, matching report output
        return "[" + ",".join(f"({u + 1},{v + 1})" for u, v in self.edges) + "]"


def even_connection_graph(G: Graph, e: EdgeTuple) -> Graph:
    """The graph G_e: G plus an edge {u,v} for every pair even-connected
    with respect to the tuple (u = v gives a loop at u).

    A walk alternates plain edges of G with tuple edges, starting and ending
    on a plain edge, consuming each tuple edge at most its multiplicity;
    at least one tuple edge must be used.
    """
    if e.graph != G:
        raise ValueError("tuple was built over a different graph")
    if not len(e):
        return G
    multis = e.multiplicities
    edge_keys = tuple(sorted(multis))
    full = tuple(multis[k] for k in edge_keys)

    new_edges: set[tuple[int, int]] = set()
    new_loops: set[int] = set()
    for u in range(G.n_vertices):
        # states: (vertex at an even walk position, residual multiplicities)
        reachable: set[tuple[int, tuple[int, ...]]] = set()
        frontier = [(u, full)]
        seen = {(u, full)}
        while frontier:
            nxt = []
            for w, residual in frontier:
                for y in bits(G.adjacency[w]):
                    for i, (a, b) in enumerate(edge_keys):
                        if residual[i] == 0 or y not in (a, b):
                            continue
                        z = b if y == a else a
                        res2 = residual[:i] + (residual[i] - 1,) + residual[i + 1:]
                        state = (z, res2)
                        if state not in seen:
                            seen.add(state)
                            nxt.append(state)
                        reachable.add(state)
            frontier = nxt
        for z, _ in reachable:
            for v in bits(G.adjacency[z]):
                if v == u:
                    new_loops.add(u)
                elif not G.has_edge(u, v):
                    new_edges.add((min(u, v), max(u, v)))
    return G.add_edges(sorted(new_edges), sorted(new_loops))


def colon_by_tuple(G: Graph, e: EdgeTuple) -> MonomialIdeal:
    """I(G)^t : x^e with t = len(e) + 1, computed by plain ideal arithmetic."""
    t = len(e) + 1
    return edge_ideal(G).power(t).colon(e.monomial())


def verify_banerjee(G: Graph, e: EdgeTuple) -> bool:
    """Does the colon of the power equal the edge ideal of G_e?"""
    return colon_by_tuple(G, e) == edge_ideal(even_connection_graph(G, e))


def symbolic_power(G: Graph, t: int) -> MonomialIdeal:
    """Intersection of the t-th powers of the cover ideals' primes."""
    if G.loops:
        raise ValueError("symbolic powers are defined for loop-free graphs")
    if t < 1:
        raise ValueError("t must be >= 1")
    n = G.n_vertices
    covers = minimal_vertex_covers(G)
    if len(covers) * t > SYMBOLIC_WORK_LIMIT:
        raise CapacityExceeded(
            f"{len(covers)} covers at power {t} exceeds the symbolic guard")
    # intersect in increasing cover-size order to keep intermediates small
    covers.sort(key=lambda c: (c.bit_count(), c))
    result: MonomialIdeal | None = None
    for cover in covers:
        vs = list(bits(cover))
        gens = []
        for combo in itertools.combinations_with_replacement(vs, t):
            exps = [0] * n
            for v in combo:
                exps[v] += 1
            gens.append(Monomial(tuple(exps)))
        P_t = minimalize(n, gens)
        result = P_t if result is None else result.intersect(P_t)
    assert result is not None, "a graph with no cover has no edges"
    return result


def symbolic_membership(G: Graph, t: int, m: Monomial) -> bool:
    """Membership in the t-th symbolic power without computing it: the
    exponent sum over every minimal vertex cover must reach t."""
    for cover in minimal_vertex_covers(G):
        if sum(m.exponents[v] for v in bits(cover)) < t:
            return False
    return True


def symbolic_only_generators(G: Graph, t: int) -> tuple[Monomial, ...]:
    """Minimal generators of the symbolic power outside the ordinary power."""
    ordinary = edge_ideal(G).power(t)
    return tuple(g for g in symbolic_power(G, t) if not ordinary.contains(g))


def intermediate_ideal(G: Graph, t: int,
                       selected: tuple[Monomial, ...]) -> MonomialIdeal:
    """The ordinary power plus a subset of the symbolic power's minimal
    generators; always sandwiched between the two powers."""
    symbolic = symbolic_power(G, t)
    for m in selected:
        if m not in symbolic.gens:
            raise ValueError(f"{m} is not a minimal generator of the symbolic power")
    ordinary = edge_ideal(G).power(t)
    L = minimalize(G.n_vertices, ordinary.gens + tuple(selected))
    assert L.contains_ideal(ordinary) and symbolic.contains_ideal(L)
    return L


def radical_colon_check(G: Graph, t: int, m: Monomial) -> bool | None:
    """Radical of the colon by m agrees for the ordinary and symbolic power.

    Returns None (a skip marker) when m lies in the symbolic power, where
    the identity is not claimed.
    """
    I = edge_ideal(G)
    if symbolic_membership(G, t, m):
        return None
    lhs = I.power(t).colon(m).radical()
    rhs = symbolic_power(G, t).colon(m).radical()
    return lhs == rhs


def squarefree_colon_reduction_check(G: Graph, e: EdgeTuple) -> bool:
    """Colon by a repeated-edge tuple equals colon by its deduplication."""
    return colon_by_tuple(G, e) == colon_by_tuple(G, e.deduplicated())


def loop_dominance_check(G: Graph, e: EdgeTuple) -> bool:
    """Every loop vertex of G_e must be adjacent in G_e to all vertices."""
    Ge = even_connection_graph(G, e)
    full = Ge.full_mask
    for j in Ge.loops:
        if (Ge.adjacency[j] | (1 << j)) != full:
            return False
    return True


def radical_splitting_check(G: Graph, e: EdgeTuple) -> bool:
    """The radical of I(G_e) splits as the intersection of the radicals of
    I(G_{e'}) : x_u and I(G_{e'}) : x_v, where {u,v} is the last tuple edge."""
    if len(e) < 1:
        raise ValueError("need at least one tuple edge")
    if len(set(e.edges)) != len(e.edges):
        raise ValueError("tuple edges must be distinct")
    u, v = e.edges[-1]
    n = G.n_vertices
    prev = edge_ideal(even_connection_graph(G, e.drop_last()))
    lhs = edge_ideal(even_connection_graph(G, e)).radical()
    xu, xv = Monomial.variable(n, u), Monomial.variable(n, v)
    rhs = prev.colon(xu).radical().intersect(prev.colon(xv).radical())
    return lhs == rhs


def disjoint_union(G: Graph, k: int) -> Graph:
    """k vertex-shifted copies of G."""
    n = G.n_vertices
    edges = []
    loops = []
    for c in range(k):
        off = c * n
        edges.extend((u + off, v + off) for u, v in G.edges())
        loops.extend(j + off for j in G.loops)
    return Graph.from_edges(k * n, edges, loops)
