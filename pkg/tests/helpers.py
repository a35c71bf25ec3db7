"""Shared helpers for the test suite: naive reference checkers and
canonical forms for isomorphism-class caching."""

from itertools import combinations, permutations, product

from edgedeform import build_graph
from edgedeform.monomials import Monomial


def naive_graded_count(graph, d):
    """Count degree-d monomials outside the ideal by raw enumeration."""
    ideal = graph.edge_ideal()
    verts = graph.vertices
    if d == 0:
        return 1
    count = 0
    for combo in combinations(range(len(verts) + d - 1), d):
        exps = {}
        for k, c in enumerate(combo):
            var = verts[c - k]
            exps[var] = exps.get(var, 0) + 1
        if not ideal.contains(Monomial(exps)):
            count += 1
    return count


def brute_force_products_in_ideal(factors, extras, ideal):
    """Unpruned reference for the product containment check."""
    if any(not f for f in factors):
        return True
    for choice in product(*[sorted(f) for f in factors]):
        prod = Monomial.from_vertices(choice)
        for s in sorted(extras):
            if not ideal.contains(prod.times(s)):
                return False
    return True


def naive_induced_cycles(graph, lengths):
    """Reference induced-cycle finder via vertex sequences."""
    verts = graph.vertices
    n = len(verts)
    found = set()
    for k in lengths:
        for seq in permutations(range(n), k):
            if seq[0] != min(seq):
                continue
            ok = True
            for i in range(k):
                for j in range(i + 1, k):
                    adjacent = graph.has_edge(verts[seq[i]], verts[seq[j]])
                    consecutive = (j - i == 1) or (i == 0 and j == k - 1)
                    if adjacent != consecutive:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                found.add(frozenset(seq))
    return found


_PERM_CACHE = {}


def canonical_key(graph):
    """Isomorphism-class key for a simple graph: minimal edge bitmask."""
    n = len(graph.vertices)
    pairs = list(combinations(range(n), 2))
    pair_index = {p: i for i, p in enumerate(pairs)}
    if n not in _PERM_CACHE:
        tables = []
        for perm in permutations(range(n)):
            tables.append([pair_index[tuple(sorted((perm[i], perm[j])))]
                           for i, j in pairs])
        _PERM_CACHE[n] = tables
    mask = 0
    for i, j in graph.edges:
        mask |= 1 << pair_index[(i, j)]
    best = None
    for table in _PERM_CACHE[n]:
        m = 0
        rest = mask
        while rest:
            b = (rest & -rest).bit_length() - 1
            m |= 1 << table[b]
            rest &= rest - 1
        if best is None or m < best:
            best = m
    return (n, best)


def atlas_graphs(min_nodes=2, max_nodes=7, connected=True):
    """All unlabeled simple graphs with >= 1 edge from the networkx atlas."""
    import networkx as nx
    from networkx.generators.atlas import graph_atlas_g

    out = []
    for g in graph_atlas_g():
        n = g.number_of_nodes()
        if n < min_nodes or n > max_nodes or g.number_of_edges() == 0:
            continue
        if connected and not nx.is_connected(g):
            continue
        edges = [(f"a{u}", f"a{v}") for u, v in g.edges()]
        out.append(build_graph(edges))
    return out


def small_loop_graphs():
    """A handful of loop-carrying graphs exercising the non-simple paths."""
    return [
        build_graph([("a", "a")]),
        build_graph([("a", "a"), ("a", "b")]),
        build_graph([("a", "a"), ("b", "b"), ("a", "b")]),
        build_graph([("a", "a"), ("a", "b"), ("b", "c")]),
        build_graph([("a", "b"), ("b", "b"), ("b", "c"), ("c", "a")]),
    ]


def relabeled(graph, seed=0):
    """A deterministic relabeling/reordering of the same graph."""
    import random

    rng = random.Random(seed)
    names = list(graph.vertices)
    new_names = [f"z{i}" for i in range(len(names))]
    rng.shuffle(new_names)
    mapping = dict(zip(names, new_names))
    g2 = graph.relabel(mapping)
    order = list(g2.vertices)
    rng.shuffle(order)
    return g2.reorder(order), mapping
