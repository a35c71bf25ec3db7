"""First-order deformation maps of an edge ideal and rigidity decisions.

A homomorphism I -> R/I is determined by its images on the quadratic
generators, subject to the pair relations of the ideal.  Two combinatorial
families generate everything: maps supported on a single edge ("edge
maps") and maps supported on the star of a vertex ("star maps"), together
with the images of the coordinate derivations.  Rigidity reduces to
containment of certain neighborhood products in the ideal, checked here by
a pruned search and cross-checked by the exact linear-algebra oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    DegreeCapExceededError,
    InvalidChoiceError,
    PreconditionViolatedError,
)
from .monomials import Monomial, ONE, QuotientClass, sqrt_products, product_times_set_in_ideal

DEFAULT_STAR_CAP = 16


@dataclass(frozen=True)
class Classification:
    """Verdict on a single deformation map.

    status is "zero", "trivial" or "nontrivial"; a trivial map carries the
    derivation combination that reproduces it, as (coefficient,
    multiplier, vertex) summands of coefficient * multiplier * d/d(vertex).
    """

    status: str
    reason: str
    derivation: tuple = ()


class DeformHom:
    """A homogeneous map from the ideal generators to classes of R/I."""

    __slots__ = ("kind", "graph", "source", "subset", "multiplier", "images", "degree")

    def __init__(self, kind, graph, source, subset, multiplier, images, degree):
        self.kind = kind
        self.graph = graph
        self.source = source
        self.subset = subset
        self.multiplier = multiplier
        self.images = {e: q for e, q in images.items() if not q.is_zero()}
        self.degree = degree

    def image(self, edge):
        key = self.graph.canonical_edge(*edge)
        return self.images.get(key, QuotientClass.zero())

    def is_zero(self):
        return not self.images

    def image_key(self):
        """Canonical form of the image table, for deduplication."""
        return tuple(sorted((e, q.terms) for e, q in self.images.items()))

    def label(self):
        if self.kind == "edge":
            return f"{self.source[0]}*{self.source[1]} -> {self.multiplier}"
        if self.kind == "star":
            subset = ",".join(self.subset)
            return f"star {self.source} L={{{subset}}} lambda={self.multiplier}"
        return f"d/d{self.source}"

    def as_dict(self, classification=None):
        """JSON-ready form: kind, source, L, lambda, degree, images."""
        out = {
            "kind": self.kind,
            "source": (f"{self.source[0]}*{self.source[1]}"
                       if self.kind == "edge" else self.source),
            "L": list(self.subset) if self.subset is not None else None,
            "lambda": str(self.multiplier) if self.multiplier is not None else None,
            "degree": self.degree,
            "images": {f"{e[0]}*{e[1]}": str(q) for e, q in sorted(self.images.items())},
        }
        if classification is not None:
            out["classification"] = {"status": classification.status,
                                     "reason": classification.reason}
        return out

    def __repr__(self):
        return f"DeformHom({self.label()})"


@dataclass(frozen=True)
class EdgeContext:
    """Neighborhood data attached to one edge.

    boundary: vertices adjacent to either endpoint (endpoints themselves
    belong only via loops); factors: for each boundary vertex, its
    neighbors away from the edge; multipliers: square-free parts of all
    one-per-factor products (the admissible image monomials).
    """

    edge: tuple
    boundary: tuple
    factors: dict
    multipliers: tuple


def edge_context(graph, edge):
    a, b = graph.canonical_edge(*edge)
    if a == b:
        boundary = set(graph.neighborhood(a)) - {a}
    else:
        boundary = (set(graph.neighborhood(a)) - {b}) | (set(graph.neighborhood(b)) - {a})
    boundary = graph.sorted_vertices(boundary)
    factors = {g: graph.sorted_vertices(set(graph.neighborhood(g)) - {a, b})
               for g in boundary}
    multipliers = tuple(sorted(sqrt_products([factors[g] for g in boundary])))
    return EdgeContext((a, b), boundary, factors, multipliers)


def edge_homs(graph, edge):
    """All edge-supported maps at one edge, with their classification.

    One map per admissible multiplier: the edge goes to the multiplier,
    every other generator to zero.  Multipliers inside the ideal give the
    zero map (kept for diagnostics); nonzero maps are always nontrivial.
    """
    ideal = graph.edge_ideal()
    ctx = edge_context(graph, edge)
    a, b = ctx.edge
    out = []
    for lam in ctx.multipliers:
        images = {(a, b): ideal.normal_form([(lam, 1)])}
        hom = DeformHom("edge", graph, (a, b), None, lam, images, lam.degree - 2)
        if hom.is_zero():
            cls = Classification("zero", "multiplier lies in the ideal")
        else:
            cls = Classification("nontrivial",
                                 "edge map with multiplier coprime to the edge")
        out.append((hom, cls))
    return out


@dataclass(frozen=True)
class StarContext:
    """Neighborhood-complement data attached to a vertex and a subset L.

    boundary: vertices of the complement graph adjacent to L but outside
    it; factors: for each boundary vertex, its graph neighbors other than
    the center; multipliers: square-free parts of the one-per-factor
    products.
    """

    vertex: str
    subset: tuple
    boundary: tuple
    factors: dict
    multipliers: tuple


def star_context(graph, vertex, subset):
    comp = graph.complement_neighborhood(vertex)
    sub = set(subset)
    if not sub:
        raise InvalidChoiceError("the subset L must be nonempty")
    for x in sub:
        if not comp.has_vertex(x):
            raise InvalidChoiceError(
                f"{x!r} is not a vertex of the neighborhood complement of {vertex!r}")
    boundary = set()
    for x in sub:
        boundary |= set(comp.neighborhood(x))
    boundary -= sub
    boundary = graph.sorted_vertices(boundary)
    factors = {g: graph.sorted_vertices(set(graph.neighborhood(g)) - {vertex})
               for g in boundary}
    multipliers = tuple(sorted(sqrt_products([factors[g] for g in boundary])))
    return StarContext(vertex, graph.sorted_vertices(sub), boundary, factors, multipliers)


def _star_hom(graph, ideal, vertex, subset, lam):
    images = {}
    for x in subset:
        e = graph.canonical_edge(vertex, x)
        images[e] = ideal.normal_form([(lam.times_variable(x), 1)])
    return DeformHom("star", graph, vertex, tuple(subset), lam, images, lam.degree - 1)


def _classify_star(graph, ideal, vertex, subset, lam, hom):
    if hom.is_zero():
        return Classification("zero", "all images vanish in the quotient")
    nbhd = graph.sorted_vertices(graph.neighborhood(vertex))
    if not graph.has_loop(vertex):
        outside = [y for y in nbhd if y not in set(subset)]
        if all(ideal.contains(lam.times_variable(y)) for y in outside):
            return Classification(
                "trivial", "equals multiplier times the coordinate derivation",
                ((Fraction(1), lam, vertex),))
        return Classification(
            "nontrivial", "differs from every derivation multiple on some neighbor")
    if set(nbhd) == {vertex}:
        return Classification(
            "trivial", "isolated loop: the map is half the coordinate derivation",
            ((Fraction(1, 2), ONE, vertex),))
    return Classification("nontrivial", "separation-type map at a loop vertex")


def star_homs(graph, vertex, cap=DEFAULT_STAR_CAP):
    """All star-supported maps at one vertex, with classifications.

    Enumerates every nonempty subset L of the neighborhood and every
    admissible multiplier; refuses when the neighborhood is larger than
    the cap (the enumeration is exponential in the degree).
    """
    ideal = graph.edge_ideal()
    nbhd = graph.sorted_vertices(graph.neighborhood(vertex))
    if len(nbhd) > cap:
        raise DegreeCapExceededError(
            f"neighborhood of {vertex!r} has {len(nbhd)} vertices (cap {cap})",
            vertex=vertex)
    out = []
    for mask in range(1, 1 << len(nbhd)):
        subset = tuple(nbhd[i] for i in range(len(nbhd)) if mask >> i & 1)
        ctx = star_context(graph, vertex, subset)
        for lam in ctx.multipliers:
            hom = _star_hom(graph, ideal, vertex, subset, lam)
            out.append((hom, _classify_star(graph, ideal, vertex, subset, lam, hom)))
    return out


def derivation_hom(graph, vertex):
    """Image of the coordinate derivation d/d(vertex) on the generators."""
    ideal = graph.edge_ideal()
    images = {}
    for u, v in graph.edge_list():
        if u == v == vertex:
            images[(u, v)] = ideal.normal_form([(Monomial.variable(vertex), 2)])
        elif u == vertex:
            images[(u, v)] = ideal.normal_form([(Monomial.variable(v), 1)])
        elif v == vertex:
            images[(u, v)] = ideal.normal_form([(Monomial.variable(u), 1)])
    return DeformHom("derivation", graph, vertex, None, None, images, -1)


def hom_generators(graph, cap=DEFAULT_STAR_CAP):
    """A generating set for the module of first-order deformation maps.

    All nonzero edge maps, all nontrivial star maps, and the coordinate
    derivations (which span the trivial part as a module); deduplicated
    by image table.
    """
    out = []
    seen = set()

    def push(hom):
        key = hom.image_key()
        if key not in seen:
            seen.add(key)
            out.append(hom)

    for e in graph.edge_list():
        for hom, cls in edge_homs(graph, e):
            if cls.status != "zero":
                push(hom)
    for v in graph.vertices:
        for hom, cls in star_homs(graph, v, cap=cap):
            if cls.status == "nontrivial":
                push(hom)
    for v in graph.vertices:
        push(derivation_hom(graph, v))
    return out


def generator_pair_relations(graph):
    """The defining relations between pairs of ideal generators.

    For generators m1, m2 the relation is (lcm/m1) e1 - (lcm/m2) e2; for
    an adjacent pair the coefficients are single vertices, for a disjoint
    pair they are the opposite generators (Koszul form).
    """
    ideal = graph.edge_ideal()
    gens = ideal.generators
    pairs = []
    for i, j in combinations(range(len(gens)), 2):
        g = gens[i].gcd(gens[j])
        lcm = gens[i].times(gens[j].divide(g))
        pairs.append((i, j, lcm.divide(gens[i]), lcm.divide(gens[j])))
    return pairs


def validate_hom(graph, hom):
    """Check every pair relation of the ideal against the image table."""
    ideal = graph.edge_ideal()
    edges = graph.edge_list()
    for i, j, ci, cj in generator_pair_relations(graph):
        lhs = ideal.multiply(hom.images.get(edges[i], QuotientClass.zero()), ci)
        rhs = ideal.multiply(hom.images.get(edges[j], QuotientClass.zero()), cj)
        diff = ideal.normal_form(list(lhs.terms) + [(m, -c) for m, c in rhs.terms])
        if not diff.is_zero():
            return False
    return True


def evaluate(hom, multiplier, edge):
    """Normal form of multiplier * hom(edge): the module action on maps."""
    ideal = hom.graph.edge_ideal()
    return ideal.multiply(hom.image(edge), multiplier)


def derivation_expression_hom(graph, expression):
    """The map given by a derivation combination, for soundness checks."""
    ideal = graph.edge_ideal()
    images = {}
    for u, v in graph.edge_list():
        terms = []
        for coeff, mult, vertex in expression:
            if u == v == vertex:
                terms.append((mult.times_variable(vertex), 2 * coeff))
            elif u == vertex:
                terms.append((mult.times_variable(v), coeff))
            elif v == vertex:
                terms.append((mult.times_variable(u), coeff))
        images[(u, v)] = ideal.normal_form(terms)
    return images


# -- rigidity ------------------------------------------------------------


class RigidityResult:
    """Verdict of a rigidity check, with a replayable witness on failure."""

    __slots__ = ("rigid", "witness")

    def __init__(self, rigid, witness=None):
        self.rigid = rigid
        self.witness = witness

    def __bool__(self):
        return self.rigid

    def __repr__(self):
        return f"RigidityResult(rigid={self.rigid}, witness={self.witness})"


def _on_triangle(graph, v):
    nbrs = graph.sorted_vertices(set(graph.neighborhood(v)) - {v})
    for x, y in combinations(nbrs, 2):
        if graph.has_edge(x, y):
            return True
    return False


def _on_leaf(graph, v):
    if graph.degree(v) == 1:
        return True
    return any(x != v and graph.degree(x) == 1 for x in graph.neighborhood(v))


def is_rigid(graph, cap=DEFAULT_STAR_CAP):
    """Local rigidity criterion for the edge ideal of a simple graph.

    Rigid iff (1) for every edge, all one-per-boundary-vertex products lie
    in the ideal, and (2) for every vertex and nonempty subset L of its
    neighborhood, the boundary products times the leftover neighbors lie
    in the ideal.  Branch edges skip (1) and vertices off 3-cycles or on
    leaves skip (2): both conditions hold automatically there.  A graph
    with a loop is never rigid.
    """
    loops = graph.loops()
    if loops:
        return RigidityResult(False, {"kind": "loop", "vertex": loops[0]})
    ideal = graph.edge_ideal()
    for e in graph.edge_list():
        if graph.edge_flags(*e).is_branch:
            continue
        ctx = edge_context(graph, e)
        ok, witness = product_times_set_in_ideal(
            [ctx.factors[g] for g in ctx.boundary], {ONE}, ideal)
        if not ok:
            return RigidityResult(False, {
                "kind": "edge",
                "edge": e,
                "lambda": str(witness.product),
            })
    for a in graph.vertices:
        if not _on_triangle(graph, a) or _on_leaf(graph, a):
            continue
        nbhd = graph.sorted_vertices(graph.neighborhood(a))
        if len(nbhd) > cap:
            raise DegreeCapExceededError(
                f"neighborhood of {a!r} has {len(nbhd)} vertices (cap {cap})", vertex=a)
        for mask in range(1, 1 << len(nbhd)):
            subset = tuple(nbhd[i] for i in range(len(nbhd)) if mask >> i & 1)
            ctx = star_context(graph, a, subset)
            residual = [y for y in nbhd
                        if y not in set(subset) and y not in set(ctx.boundary)]
            if not residual:
                continue
            ok, witness = product_times_set_in_ideal(
                [ctx.factors[g] for g in ctx.boundary],
                {Monomial.variable(y) for y in residual}, ideal)
            if not ok:
                return RigidityResult(False, {
                    "kind": "star",
                    "vertex": a,
                    "L": list(subset),
                    "lambda": str(witness.product),
                    "x": str(witness.extra),
                })
    return RigidityResult(True)


def is_rigid_independent_sets(graph):
    """Rigidity via independent sets: a global cross-criterion.

    Rigid iff for every independent set X (the empty set included), the
    graph left after deleting the closed neighborhood of X has no
    isolated edge, and every one of its vertices has a connected
    neighborhood complement (computed inside the leftover graph).
    """
    graph.require_simple("the independent-set rigidity criterion")
    n = len(graph.vertices)
    adj = [set() for _ in range(n)]
    for i, j in graph.edges:
        adj[i].add(j)
        adj[j].add(i)

    def complement_connected(inside, x):
        nbrs = sorted(adj[x] & inside)
        if len(nbrs) <= 1:
            return True
        comp_adj = {u: [w for w in nbrs if w != u and w not in adj[u]] for u in nbrs}
        seen = {nbrs[0]}
        stack = [nbrs[0]]
        while stack:
            u = stack.pop()
            for w in comp_adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(nbrs)

    for mask in range(1 << n):
        members = [i for i in range(n) if mask >> i & 1]
        if any(j in adj[i] for i, j in combinations(members, 2)):
            continue
        removed = set(members)
        for i in members:
            removed |= adj[i]
        inside = set(range(n)) - removed
        for i in inside:
            deg = len(adj[i] & inside)
            if deg == 1:
                (j,) = adj[i] & inside
                if len(adj[j] & inside) == 1:
                    return False
            if not complement_connected(inside, i):
                return False
    return True


def rigid_no456(graph):
    """Rigidity decision valid on graphs with no induced 4-, 5- or 6-cycle.

    Under that hypothesis the graph is rigid iff every edge is a branch
    and every vertex of a 3-cycle belongs to a leaf.
    """
    graph.require_simple("the no-4/5/6-cycle rigidity criterion")
    cycles = graph.induced_cycles({4, 5, 6})
    if cycles:
        raise PreconditionViolatedError(
            f"induced {len(cycles[0])}-cycle present: {cycles[0]}", witness=cycles[0])
    for e in graph.edge_list():
        if not graph.edge_flags(*e).is_branch:
            return False
    triangle_vertices = set()
    for tri in graph.induced_cycles({3}):
        triangle_vertices |= set(tri)
    for v in triangle_vertices:
        if not _on_leaf(graph, v):
            return False
    return True
