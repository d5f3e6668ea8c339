"""Circulant graph construction and combinatorial invariants."""

import itertools

import pytest

from circreg.errors import CapacityExceeded, InternalVerificationError
from circreg.graphs import (Graph, bits, circulant, closed_neighborhood,
                            connected_components, cubic_circulant,
                            decompose_cubic, delete_vertices,
                            induced_matching_number, induced_subgraph,
                            is_bipartite, is_isomorphic, mask_of,
                            minimal_vertex_covers, odd_cycles)


class TestConstruction:
    def test_cubic_circulant_is_3_regular(self):
        for n, a in ((3, 1), (3, 2), (5, 2), (7, 1)):
            G = cubic_circulant(n, a)
            assert G.n_vertices == 2 * n
            assert all(G.degree(v) == 3 for v in range(2 * n))

    def test_k33_is_c6_1_3(self):
        # C_6(1,3) is the complete bipartite graph on parts {0,2,4},{1,3,5}
        G = cubic_circulant(3, 1)
        for u, v in itertools.combinations(range(6), 2):
            assert G.has_edge(u, v) == ((u + v) % 2 == 1)

    def test_prism_is_c6_2_3(self):
        # C_6(2,3): two triangles {0,2,4},{1,3,5} joined by a perfect matching
        G = cubic_circulant(3, 2)
        assert G.has_edge(0, 2) and G.has_edge(2, 4) and G.has_edge(0, 4)
        assert G.has_edge(0, 3) and G.has_edge(1, 4) and G.has_edge(2, 5)
        assert not G.has_edge(0, 1)

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            cubic_circulant(3, 3)
        with pytest.raises(ValueError):
            circulant(6, {4})

    def test_vertex_transitivity_of_rotation(self):
        # i -> i+1 mod 2n is an automorphism of any circulant
        G = cubic_circulant(5, 2)
        m = G.n_vertices
        for u, v in G.edges():
            assert G.has_edge((u + 1) % m, (v + 1) % m)

    def test_text_round_trip(self):
        G = Graph.from_edges(4, [(0, 1), (2, 3)], loops=[1])
        assert Graph.from_text(G.to_text()) == G


class TestBasicOperations:
    def test_induced_subgraph_relabels(self):
        G = cubic_circulant(3, 1)
        sub, vmap = induced_subgraph(G, mask_of([0, 1, 3]))
        assert vmap == [0, 1, 3]
        assert sub.n_edges() == 2  # edges 0-1 and 0-3 survive

    def test_delete_vertices(self):
        G = cubic_circulant(3, 1)
        sub, vmap = delete_vertices(G, mask_of([0]))
        assert sub.n_vertices == 5
        assert 0 not in vmap

    def test_components_and_bipartiteness(self):
        assert len(connected_components(cubic_circulant(4, 2))) == 2
        assert len(connected_components(cubic_circulant(5, 2))) == 1
        assert is_bipartite(cubic_circulant(3, 1))
        assert not is_bipartite(cubic_circulant(3, 2))
        # C_{2n}(1,n) is bipartite exactly when n is odd
        assert not is_bipartite(cubic_circulant(4, 1))
        assert is_bipartite(cubic_circulant(5, 1))

    def test_closed_neighborhood(self):
        G = cubic_circulant(3, 1)
        assert closed_neighborhood(G, mask_of([0])) == mask_of([0, 1, 3, 5])


class TestIsomorphism:
    def test_triangle_vs_path(self):
        T = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
        P = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert not is_isomorphic(T, P)

    def test_relabeled_circulant(self):
        G = cubic_circulant(4, 1)
        perm = [3, 5, 0, 7, 2, 1, 6, 4]
        H = Graph.from_edges(8, [(perm[u], perm[v]) for u, v in G.edges()])
        assert is_isomorphic(G, H)

    def test_same_degree_sequence_different_graphs(self):
        assert not is_isomorphic(cubic_circulant(3, 1), cubic_circulant(3, 2))

    def test_loop_placement_matters(self):
        A = Graph.from_edges(2, [(0, 1)], loops=[0])
        B = Graph.from_edges(2, [(0, 1)], loops=[0, 1])
        assert not is_isomorphic(A, B)

    def test_capacity_guard(self):
        big = circulant(30, {1})
        with pytest.raises(CapacityExceeded):
            is_isomorphic(big, big)


class TestDecomposition:
    def test_full_parameter_grid(self):
        for n in range(2, 9):
            for a in range(1, n):
                rep = decompose_cubic(n, a)
                assert rep.verified
                assert rep.count * rep.model.n_vertices == 2 * n

    def test_disconnected_example_splits(self):
        # gcd(2, 8) = 2 with 2n/t = 4 even: two 4-cycles
        rep = decompose_cubic(4, 2)
        assert rep.count == 2
        assert rep.model.n_vertices == 4

    def test_odd_case_gives_doubled_generator(self):
        # (n, a) = (9, 6): gcd(6, 18) = 6 with 2n/gcd = 3 odd, so three
        # copies of C_6(2, 3)
        rep = decompose_cubic(9, 6)
        assert rep.count == 3
        assert rep.model.n_vertices == 6
        assert is_isomorphic(rep.model, cubic_circulant(3, 2))


class TestInducedMatching:
    def test_formula_grid(self):
        for n in range(3, 10):
            for a in (1, 2):
                if a == 2 and n % 2 == 0:
                    continue
                G = cubic_circulant(n, a)
                assert induced_matching_number(G) == n // 2, (n, a)

    def test_small_known_values(self):
        path4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        assert induced_matching_number(path4) == 1
        two_edges = Graph.from_edges(4, [(0, 1), (2, 3)])
        assert induced_matching_number(two_edges) == 2

    def test_rejects_loops(self):
        with pytest.raises(ValueError):
            induced_matching_number(Graph.from_edges(2, [(0, 1)], loops=[0]))


class TestCoversAndCycles:
    def test_covers_cover_all_edges_and_are_minimal(self):
        for n, a in ((3, 1), (3, 2), (5, 2)):
            G = cubic_circulant(n, a)
            covers = minimal_vertex_covers(G)
            for c in covers:
                assert all(c >> u & 1 or c >> v & 1 for u, v in G.edges())
                for v in bits(c):
                    smaller = c & ~(1 << v)
                    assert not all(smaller >> x & 1 or smaller >> y & 1
                                   for x, y in G.edges())
            assert len(set(covers)) == len(covers)

    def test_k33_covers_are_the_two_sides(self):
        # any cover of K_3,3 missing a vertex from one side must contain
        # the entire other side, so only the two sides are minimal
        covers = minimal_vertex_covers(cubic_circulant(3, 1))
        assert sorted(covers) == [mask_of([0, 2, 4]), mask_of([1, 3, 5])]

    def test_bipartite_graphs_have_no_odd_cycles(self):
        assert list(odd_cycles(cubic_circulant(3, 1))) == []
        assert list(odd_cycles(cubic_circulant(5, 1))) == []

    def test_prism_odd_cycles(self):
        # the prism has its two triangles and six 5-cycles
        cycles = sorted(odd_cycles(cubic_circulant(3, 2)))
        assert [c for c in cycles if len(c) == 3] == [(0, 2, 4), (1, 3, 5)]
        assert sum(1 for c in cycles if len(c) == 5) == 6
        assert len(cycles) == 8

    def test_cycle_count_on_c5(self):
        pentagon = circulant(5, {1})
        assert list(odd_cycles(pentagon)) == [(0, 1, 2, 3, 4)]

    def test_odd_cycle_closed_neighborhood_covers_graph(self):
        # every odd cycle of a connected cubic circulant dominates it
        for n, a in ((3, 2), (5, 2), (7, 1), (7, 2)):
            G = cubic_circulant(n, a)
            for cyc in odd_cycles(G):
                nbhd = 0
                for v in cyc:
                    nbhd |= G.adjacency[v] | 1 << v
                assert nbhd == G.full_mask, (n, a, cyc)

    def test_odd_cycle_open_neighborhood_covers_graph(self):
        # the open neighborhood alone already covers every vertex
        for n, a in ((3, 2), (5, 2), (7, 1), (7, 2)):
            G = cubic_circulant(n, a)
            for cyc in odd_cycles(G):
                nbhd = 0
                for v in cyc:
                    nbhd |= G.adjacency[v]
                assert nbhd == G.full_mask, (n, a, cyc)
