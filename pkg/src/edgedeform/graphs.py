"""Finite graphs with loops, posets, graph families, and the separation
and polarization transforms.

The vertex order declared at construction induces the canonical edge order
(lexicographic on sorted index pairs); every downstream sign convention
derives from it.  Graphs are immutable after construction.
"""

from __future__ import annotations

import re
from itertools import combinations

from .errors import (
    EmptyGraphError,
    NameCollisionError,
    NotASeparationPairError,
    ParseError,
    SimpleGraphRequiredError,
    UnknownEdgeError,
    UnknownVertexError,
)

VERTEX_TOKEN = re.compile(r"[A-Za-z0-9_']+\Z")

POLARIZE_SUFFIX = "'pol"
SEPARATE_SUFFIX = "'sep"


class Graph:
    """A finite graph; a pair (v, v) is a loop.

    ``vertices`` is an ordered tuple of names and ``edges`` holds the
    canonically ordered index pairs (i, j) with i <= j.  Construction with
    ``strip_isolated=True`` removes vertices that lie on no edge and
    records their names in ``stripped``; operations that produce
    neighborhood complements keep isolated vertices on purpose.
    """

    __slots__ = ("vertices", "edges", "stripped", "_index", "_adj", "_ideal")

    def __init__(self, vertices, edges, strip_isolated=False):
        seen = {}
        for v in vertices:
            if not isinstance(v, str) or not VERTEX_TOKEN.match(v):
                raise UnknownVertexError(f"bad vertex name {v!r}")
            seen.setdefault(v, None)
        order = list(seen)
        declared = set(order)
        name_edges = set()
        for u, v in edges:
            if u not in declared:
                raise UnknownVertexError(f"edge endpoint {u!r} is not a declared vertex")
            if v not in declared:
                raise UnknownVertexError(f"edge endpoint {v!r} is not a declared vertex")
            name_edges.add((u, v))
        stripped = ()
        if strip_isolated:
            used = set()
            for u, v in name_edges:
                used.add(u)
                used.add(v)
            stripped = tuple(v for v in order if v not in used)
            order = [v for v in order if v in used]
        index = {v: i for i, v in enumerate(order)}
        edge_set = set()
        for u, v in name_edges:
            i, j = index[u], index[v]
            edge_set.add((i, j) if i <= j else (j, i))
        self.vertices = tuple(order)
        self.stripped = stripped
        self._index = index
        self.edges = tuple(sorted(edge_set))
        adj = [set() for _ in order]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        self._adj = tuple(frozenset(s) for s in adj)
        self._ideal = None

    # -- basic queries -------------------------------------------------

    def index(self, v):
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {v!r}") from None

    def has_vertex(self, v):
        return v in self._index

    def has_edge(self, u, v):
        i, j = self.index(u), self.index(v)
        return j in self._adj[i] if i != j else i in self._adj[i]

    def canonical_edge(self, u, v):
        """The edge as an ordered name pair following the vertex order."""
        if not self.has_edge(u, v):
            raise UnknownEdgeError(f"no edge {u!r}-{v!r}")
        i, j = self.index(u), self.index(v)
        if i > j:
            i, j = j, i
        return (self.vertices[i], self.vertices[j])

    def edge_list(self):
        """All edges as ordered name pairs in the canonical order."""
        return tuple((self.vertices[i], self.vertices[j]) for i, j in self.edges)

    def neighborhood(self, v):
        """N(v); contains v itself exactly when v carries a loop."""
        return frozenset(self.vertices[j] for j in self._adj[self.index(v)])

    def closed_neighborhood(self, vs):
        out = set(vs)
        for v in vs:
            out |= self.neighborhood(v)
        return frozenset(out)

    def degree(self, v):
        """Vertex degree; a loop contributes 2."""
        i = self.index(v)
        d = len(self._adj[i])
        if i in self._adj[i]:
            d += 1
        return d

    def has_loop(self, v):
        i = self.index(v)
        return i in self._adj[i]

    def loops(self):
        return tuple(self.vertices[i] for i, j in self.edges if i == j)

    @property
    def is_simple(self):
        return not any(i == j for i, j in self.edges)

    def require_simple(self, operation):
        if not self.is_simple:
            raise SimpleGraphRequiredError(
                f"{operation} requires a graph without loops", loops=self.loops())

    def edge_ideal(self):
        from .monomials import EdgeIdeal

        if self._ideal is None:
            self._ideal = EdgeIdeal(self)
        return self._ideal

    def sorted_vertices(self, names):
        """Names sorted by the graph's vertex order."""
        return tuple(sorted(names, key=self.index))

    # -- derived graphs ------------------------------------------------

    def complement_neighborhood(self, v):
        """The complement of the underlying simple graph induced on N(v).

        Loops are discarded before complementing, so the result is always
        simple; isolated vertices are kept (they matter as connected
        components).
        """
        nbrs = self.sorted_vertices(self.neighborhood(v))
        edges = []
        for x, y in combinations(nbrs, 2):
            if not self.has_edge(x, y):
                edges.append((x, y))
        return Graph(nbrs, edges)

    def induced_subgraph(self, names):
        keep = self.sorted_vertices(set(names))
        keep_set = set(keep)
        edges = [(self.vertices[i], self.vertices[j]) for i, j in self.edges
                 if self.vertices[i] in keep_set and self.vertices[j] in keep_set]
        return Graph(keep, edges)

    def relabel(self, mapping):
        """Rename vertices through a bijective mapping, keeping slot order."""
        verts = [mapping[v] for v in self.vertices]
        edges = [(mapping[u], mapping[w]) for u, w in self.edge_list()]
        return Graph(verts, edges)

    def reorder(self, new_order):
        """Same vertices and edges under a different declared order."""
        if set(new_order) != set(self.vertices) or len(new_order) != len(self.vertices):
            raise UnknownVertexError("reorder must permute the existing vertices")
        return Graph(new_order, self.edge_list())

    # -- edge classification -------------------------------------------

    def edge_flags(self, u, v):
        """Leaf/branch/isolated-edge/isolated-loop flags of an edge."""
        a, b = self.canonical_edge(u, v)
        if a == b:
            is_leaf = False
            is_isolated_edge = False
            is_isolated_loop = self.degree(a) == 2
        else:
            is_leaf = self.degree(a) == 1 or self.degree(b) == 1
            is_isolated_edge = self.degree(a) == 1 and self.degree(b) == 1
            is_isolated_loop = False
        is_branch = False
        for x, y in self.edge_list():
            if (x, y) == (a, b):
                continue
            if {x, y} & {a, b}:
                if x != y and (self.degree(x) == 1 or self.degree(y) == 1):
                    is_branch = True
                    break
        return EdgeFlags(is_leaf, is_branch, is_isolated_edge, is_isolated_loop)

    # -- induced cycles --------------------------------------------------

    def induced_cycles(self, lengths):
        """All induced cycles with length in ``lengths`` (subsets of 3..6).

        Exhaustive over vertex subsets; each cycle is reported once, as the
        traversal starting at its smallest vertex toward its smaller
        neighbor (canonical up to rotation and reflection).
        """
        lengths = sorted(set(lengths))
        for k in lengths:
            if k < 3 or k > 6:
                raise ValueError("cycle lengths must lie in 3..6")
        self.require_simple("induced cycle detection")
        n = len(self.vertices)
        found = []
        for k in lengths:
            for subset in combinations(range(n), k):
                sset = set(subset)
                degs = {i: len(self._adj[i] & sset) for i in subset}
                if any(d != 2 for d in degs.values()):
                    continue
                # Degree-2 regular with k vertices: a disjoint union of
                # cycles; connectivity makes it a single k-cycle.
                start = subset[0]
                prev = None
                cur = start
                walk = []
                while True:
                    walk.append(cur)
                    nxt = sorted(self._adj[cur] & sset)
                    if prev is None:
                        step = nxt[0]
                    else:
                        step = nxt[0] if nxt[0] != prev else nxt[1]
                    prev, cur = cur, step
                    if cur == start:
                        break
                if len(walk) == k:
                    found.append(tuple(self.vertices[i] for i in walk))
        return found

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Graph)
                and self.vertices == other.vertices
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        edges = ", ".join(f"{u}-{v}" for u, v in self.edge_list())
        return f"Graph({len(self.vertices)} vertices: {edges})"


class EdgeFlags:
    __slots__ = ("is_leaf", "is_branch", "is_isolated_edge", "is_isolated_loop")

    def __init__(self, is_leaf, is_branch, is_isolated_edge, is_isolated_loop):
        self.is_leaf = is_leaf
        self.is_branch = is_branch
        self.is_isolated_edge = is_isolated_edge
        self.is_isolated_loop = is_isolated_loop

    def as_dict(self):
        return {
            "is_leaf": self.is_leaf,
            "is_branch": self.is_branch,
            "is_isolated_edge": self.is_isolated_edge,
            "is_isolated_loop": self.is_isolated_loop,
        }

    def __repr__(self):
        return f"EdgeFlags({self.as_dict()})"


def build_graph(edge_list):
    """Normalize an edge list into a Graph.

    Duplicate edges merge (multiplicity carries no information for the
    edge ideal), loops are kept, and vertices appear in order of first
    occurrence.  An empty edge list is an error: there is no edge ideal
    to study.
    """
    edge_list = list(edge_list)
    if not edge_list:
        raise EmptyGraphError("empty edge list")
    vertices = []
    seen = set()
    for u, v in edge_list:
        for w in (u, v):
            if w not in seen:
                seen.add(w)
                vertices.append(w)
    return Graph(vertices, edge_list, strip_isolated=True)


def parse_graph_text(text):
    """Parse the one-edge-per-line format: "u v", '#' comments, blanks ignored."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected two vertex tokens, got {len(tokens)}", line=lineno)
        for t in tokens:
            if not VERTEX_TOKEN.match(t):
                raise ParseError(f"bad vertex token {t!r}", line=lineno)
        edges.append((tokens[0], tokens[1]))
    if not edges:
        raise ParseError("no edges in input")
    return build_graph(edges)


# -- families ----------------------------------------------------------


def family(kind, n):
    """Standard labeled families with vertices a0..a{n-1}."""
    names = [f"a{i}" for i in range(n)]
    if kind == "cycle":
        if n < 3:
            raise ParseError("cycle needs n >= 3")
        edges = [(names[i], names[(i + 1) % n]) for i in range(n)]
    elif kind == "path":
        if n < 2:
            raise ParseError("path needs n >= 2")
        edges = [(names[i], names[i + 1]) for i in range(n - 1)]
    elif kind == "complete":
        if n < 2:
            raise ParseError("complete needs n >= 2")
        edges = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n)]
    elif kind == "star":
        if n < 2:
            raise ParseError("star needs n >= 2")
        edges = [(names[0], names[i]) for i in range(1, n)]
    else:
        raise ParseError(f"unknown family kind {kind!r}")
    return Graph(names, edges)


def cycle(n):
    return family("cycle", n)


def path(n):
    return family("path", n)


def labeled_graphs(n, connected=True, triangle_free=False):
    """All labeled simple graphs on vertices a0..a{n-1} with >= 1 edge.

    Exhaustive bitmask enumeration over the C(n, 2) vertex pairs; used by
    the census harness and the exhaustive cross-validation runs.
    """
    names = [f"a{i}" for i in range(n)]
    pairs = list(combinations(range(n), 2))
    npairs = len(pairs)
    for mask in range(1, 1 << npairs):
        adj = [0] * n
        edges = []
        for b in range(npairs):
            if mask >> b & 1:
                i, j = pairs[b]
                adj[i] |= 1 << j
                adj[j] |= 1 << i
                edges.append((names[i], names[j]))
        if triangle_free:
            bad = False
            for i, j in pairs:
                if adj[i] >> j & 1 and adj[i] & adj[j]:
                    bad = True
                    break
            if bad:
                continue
        if connected:
            used = [i for i in range(n) if adj[i]]
            if not used:
                continue
            if set(used) != set(range(n)):
                continue
            seen = 1 << used[0]
            stack = [used[0]]
            while stack:
                i = stack.pop()
                rest = adj[i] & ~seen
                while rest:
                    b = (rest & -rest).bit_length() - 1
                    seen |= 1 << b
                    stack.append(b)
                    rest &= rest - 1
            if seen != (1 << n) - 1:
                continue
        yield Graph(names, edges)


# -- posets and letterplace graphs --------------------------------------


class Poset:
    """A finite poset given by its elements and the closure of some relations."""

    def __init__(self, elements, relations=()):
        seen = {}
        for p in elements:
            seen.setdefault(p, None)
        self.elements = tuple(seen)
        idx = {p: i for i, p in enumerate(self.elements)}
        n = len(self.elements)
        leq = [[False] * n for _ in range(n)]
        for i in range(n):
            leq[i][i] = True
        for p, q in relations:
            if p not in idx or q not in idx:
                raise ParseError(f"relation references unknown element {p!r} or {q!r}")
            leq[idx[p]][idx[q]] = True
        changed = True
        while changed:
            changed = False
            for i in range(n):
                for j in range(n):
                    if leq[i][j]:
                        for k in range(n):
                            if leq[j][k] and not leq[i][k]:
                                leq[i][k] = True
                                changed = True
        for i in range(n):
            for j in range(i + 1, n):
                if leq[i][j] and leq[j][i]:
                    raise ParseError(
                        f"not antisymmetric: {self.elements[i]!r} and {self.elements[j]!r}")
        self._leq = leq
        self._idx = idx

    def leq(self, p, q):
        return self._leq[self._idx[p]][self._idx[q]]

    def relation_pairs(self):
        """All (p, q) with p <= q, reflexive pairs included."""
        out = []
        for i, p in enumerate(self.elements):
            for j, q in enumerate(self.elements):
                if self._leq[i][j]:
                    out.append((p, q))
        return out

    def height(self):
        """Length (number of strict steps) of a longest chain."""
        n = len(self.elements)
        memo = [None] * n

        def longest(i):
            if memo[i] is not None:
                return memo[i]
            best = 0
            for j in range(n):
                if j != i and self._leq[i][j]:
                    best = max(best, 1 + longest(j))
            memo[i] = best
            return best

        return max((longest(i) for i in range(n)), default=0)

    @classmethod
    def chain(cls, n):
        names = [f"p{i}" for i in range(n)]
        return cls(names, [(names[i], names[i + 1]) for i in range(n - 1)])

    @classmethod
    def antichain(cls, n):
        return cls([f"p{i}" for i in range(n)])


def parse_poset_text(text):
    """Lines "p < q" give relations; a bare token declares an element."""
    elements = []
    seen = set()
    relations = []

    def declare(token, lineno):
        if not VERTEX_TOKEN.match(token):
            raise ParseError(f"bad element token {token!r}", line=lineno)
        if token not in seen:
            seen.add(token)
            elements.append(token)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) == 1:
            declare(tokens[0], lineno)
        elif len(tokens) == 3 and tokens[1] == "<":
            declare(tokens[0], lineno)
            declare(tokens[2], lineno)
            relations.append((tokens[0], tokens[2]))
        else:
            raise ParseError("expected 'p < q' or a bare element name", line=lineno)
    if not elements:
        raise ParseError("no poset elements in input")
    return Poset(elements, relations)


def letterplace2(poset):
    """The graph of the second letterplace ideal of a poset.

    Two vertices p1, p2 per element, and an edge p1-q2 for every relation
    p <= q (reflexive relations give the edges p1-p2).
    """
    vertices = []
    for p in poset.elements:
        vertices.append(f"{p}1")
        vertices.append(f"{p}2")
    edges = [(f"{p}1", f"{q}2") for p, q in poset.relation_pairs()]
    return Graph(vertices, edges)


# -- separation and polarization ----------------------------------------


def _complement_components(graph, v):
    """Connected components of the neighborhood complement at v, as name tuples."""
    comp_graph = graph.complement_neighborhood(v)
    names = comp_graph.vertices
    seen = set()
    comps = []
    for start in names:
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in comp_graph.neighborhood(x):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(tuple(sorted(comp, key=graph.index)))
    return comps


def separation_pairs(graph, v):
    """All separation pairs (A, B) at v, oriented and deduplicated.

    A pair splits N(v) into two nonempty sides with every cross pair
    adjacent; equivalently both sides are unions of connected components
    of the neighborhood complement.  When v carries a loop, v's side is
    always reported as B (the side rewired to the fresh vertex); an
    isolated loop contributes the extra pair (∅, {v}).
    """
    nbhd = graph.neighborhood(v)
    pairs = []
    if nbhd == frozenset({v}):
        pairs.append(((), (v,)))
        return pairs
    comps = _complement_components(graph, v)
    k = len(comps)
    if k >= 2:
        loop = graph.has_loop(v)
        # comps[k-1] is pinned to side B; the other components choose a
        # side freely, except the split leaving side A empty.
        for mask in range((1 << (k - 1)) - 1):
            side_a = []
            side_b = list(comps[k - 1])
            for i in range(k - 1):
                if mask >> i & 1:
                    side_b.extend(comps[i])
                else:
                    side_a.extend(comps[i])
            a = tuple(sorted(side_a, key=graph.index))
            b = tuple(sorted(side_b, key=graph.index))
            if loop and v in a:
                a, b = b, a
            elif not loop and graph.index(b[0]) < graph.index(a[0]):
                a, b = b, a
            pairs.append((a, b))
    pairs.sort()
    return pairs


def separating_vertices(graph):
    """Vertices admitting a separation, with all their separation pairs."""
    out = []
    for v in graph.vertices:
        pairs = separation_pairs(graph, v)
        if pairs:
            out.append((v, pairs))
    return out


def is_inseparable(graph):
    """Simple with every neighborhood complement connected."""
    if not graph.is_simple:
        return False
    for v in graph.vertices:
        if len(_complement_components(graph, v)) > 1:
            return False
    return True


def _fresh_name(graph, base, extra=()):
    if graph.has_vertex(base) or base in extra:
        raise NameCollisionError(f"fresh vertex name {base!r} already exists")
    return base


def separate(graph, v, pair, new_name=None):
    """The separation of the graph at v along the pair (A, B).

    Adds a fresh vertex v', removes every edge from v to B (the loop vv
    when v is in B), and joins v' to every vertex of B.  Raises
    NotASeparationPairError unless (A, B) is a valid, correctly oriented
    separation pair of v.
    """
    a_side, b_side = tuple(pair[0]), tuple(pair[1])
    graph.index(v)
    nbhd = graph.neighborhood(v)
    a_set, b_set = set(a_side), set(b_side)
    if len(a_set) != len(a_side) or len(b_set) != len(b_side) or a_set & b_set:
        raise NotASeparationPairError("sides must be disjoint and duplicate-free")
    if not a_set:
        if b_set != {v} or nbhd != frozenset({v}):
            raise NotASeparationPairError(
                "the pair (∅, {v}) needs an isolated loop on v")
    else:
        if not b_set:
            raise NotASeparationPairError("both sides must be nonempty")
        if a_set | b_set != set(nbhd):
            raise NotASeparationPairError("the sides must cover N(v) exactly")
        for x in a_set:
            for y in b_set:
                if not graph.has_edge(x, y):
                    raise NotASeparationPairError(
                        f"vertices {x!r} and {y!r} are not adjacent")
        if graph.has_loop(v) and v not in b_set:
            raise NotASeparationPairError(
                "when v carries a loop it must lie on the B side")
    fresh = _fresh_name(graph, new_name if new_name is not None else v + SEPARATE_SUFFIX)
    edges = []
    for x, y in graph.edge_list():
        if (x == v and y in b_set) or (y == v and x in b_set):
            continue
        edges.append((x, y))
    for b in sorted(b_set, key=graph.index):
        edges.append((fresh, b))
    return Graph(list(graph.vertices) + [fresh], edges)


def polarize(graph):
    """Replace every loop by a pendant edge to a fresh vertex.

    The fresh vertex for a loop at x is named x + "'pol"; a simple graph
    comes back unchanged, so applying the transform twice is idempotent.
    """
    loops = graph.loops()
    if not loops:
        return Graph(graph.vertices, graph.edge_list())
    fresh = {}
    for x in loops:
        name = x + POLARIZE_SUFFIX
        if graph.has_vertex(name) or name in fresh.values():
            raise NameCollisionError(f"fresh vertex name {name!r} already exists")
        fresh[x] = name
    edges = []
    for u, v in graph.edge_list():
        if u == v:
            edges.append((u, fresh[u]))
        else:
            edges.append((u, v))
    return Graph(list(graph.vertices) + [fresh[x] for x in loops], edges)


def contract_fresh(graph, fresh, target):
    """Undo a separation: identify the fresh vertex with its original."""
    edges = []
    for u, v in graph.edge_list():
        u2 = target if u == fresh else u
        v2 = target if v == fresh else v
        edges.append((u2, v2))
    return Graph([v for v in graph.vertices if v != fresh], edges)
