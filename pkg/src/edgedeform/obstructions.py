"""The adjacent-pair presentation of the relation module modulo Koszul
relations, its homomorphisms to R/I, and vanishing criteria for the
second cotangent cohomology of an edge ideal.

Everything in this module requires a simple graph: with loops the
two-endpoint divisibility structure of the relation images breaks down.
The generators of the presented module are indexed by adjacent edge pairs
and sit in degree 3; signs are derived from the canonical edge order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import (
    DegreeCapExceededError,
    InvalidChoiceError,
    TriangleFoundError,
    UnknownEdgeError,
)
from .monomials import Monomial, QuotientClass, sqrt_products

DEFAULT_PAIR_CAP = 16


@dataclass(frozen=True)
class KGenerator:
    """A generator indexed by two adjacent edges, first one smaller.

    The relation it presents is  -(outer2) e_{edge1} + (outer1) e_{edge2},
    where outer1/outer2 are the endpoints away from the shared vertex.
    """

    edge1: tuple
    edge2: tuple
    shared: str
    outer1: str
    outer2: str

    @property
    def key(self):
        return (self.edge1, self.edge2)

    def coefficient_of(self, edge):
        """Signed coefficient (sign, vertex) of e_edge, or None."""
        if edge == self.edge1:
            return (-1, self.outer2)
        if edge == self.edge2:
            return (1, self.outer1)
        return None

    def label(self):
        return (f"{self.edge1[0]}*{self.edge1[1]}|{self.edge2[0]}*{self.edge2[1]}")

    def __repr__(self):
        return f"KGenerator({self.label()})"


@dataclass(frozen=True)
class KRelation:
    """A relation among adjacent-pair generators.

    terms: (sign, coefficient monomial, generator key) triples; rtype 1
    comes from the shared-vertex Koszul element, rtypes 2..5 from edge
    triples (disjoint edge, path, star, triangle).
    """

    rtype: int
    terms: tuple
    source: tuple


def edge_rank(graph, edges, edge):
    """Rank of an edge inside a set of edges under the canonical order."""
    keys = []
    target = None
    e = graph.canonical_edge(*edge)
    for f in edges:
        f = graph.canonical_edge(*f)
        keys.append((graph.index(f[0]), graph.index(f[1])))
        if f == e:
            target = keys[-1]
    if target is None:
        raise UnknownEdgeError(f"edge {edge!r} is not a member of the set")
    return sum(1 for k in set(keys) if k < target)


def kk0_generators(graph):
    """All adjacent edge pairs, in canonical order."""
    graph.require_simple("the adjacent-pair presentation")
    edges = graph.edge_list()
    gens = []
    for (i, e1), (j, e2) in combinations(list(enumerate(edges)), 2):
        shared = set(e1) & set(e2)
        if len(shared) != 1:
            continue
        v = next(iter(shared))
        out1 = e1[0] if e1[1] == v else e1[1]
        out2 = e2[0] if e2[1] == v else e2[1]
        gens.append(KGenerator(e1, e2, v, out1, out2))
    return gens


def kgen_key(graph, e, f):
    """Canonical generator key for an unordered adjacent edge pair."""
    e = graph.canonical_edge(*e)
    f = graph.canonical_edge(*f)
    ei = (graph.index(e[0]), graph.index(e[1]))
    fi = (graph.index(f[0]), graph.index(f[1]))
    return (e, f) if ei < fi else (f, e)


def kk0_relations(graph):
    """All defining relations of the adjacent-pair module.

    Type 1 per generator (shared vertex times the generator); types 2..5
    from the master relation of every edge triple containing at least one
    adjacent pair, with the Koszul summands dropped.
    """
    gens = kk0_generators(graph)
    edges = graph.edge_list()
    rels = []
    for g in gens:
        rels.append(KRelation(1, ((1, Monomial.variable(g.shared), g.key),), g.key))
    for fi in combinations(range(len(edges)), 3):
        triple = [edges[i] for i in fi]
        lcm_all = Monomial({v: 1 for e in triple for v in e})
        terms = []
        adj_count = 0
        for pos in range(3):
            other = [triple[p] for p in range(3) if p != pos]
            key = kgen_key(graph, other[0], other[1]) if \
                len(set(other[0]) & set(other[1])) == 1 else None
            if key is None:
                continue
            adj_count += 1
            lcm_other = Monomial({v: 1 for e in other for v in e})
            coeff = lcm_all.divide(lcm_other)
            sign = -1 if pos % 2 else 1
            terms.append((sign, coeff, key))
        if not terms:
            continue
        if adj_count == 1:
            rtype = 2
        elif adj_count == 2:
            rtype = 3
        else:
            common = set(triple[0]) & set(triple[1]) & set(triple[2])
            rtype = 4 if common else 5
        rels.append(KRelation(rtype, tuple(terms), tuple(triple)))
    return rels


class T2Hom:
    """A homogeneous map from the adjacent-pair generators to R/I."""

    __slots__ = ("graph", "provenance", "images", "degree")

    def __init__(self, graph, provenance, images, degree):
        self.graph = graph
        self.provenance = provenance
        self.images = {k: q for k, q in images.items() if not q.is_zero()}
        self.degree = degree

    def image(self, key):
        return self.images.get(key, QuotientClass.zero())

    def is_zero(self):
        return not self.images

    def image_key(self):
        return tuple(sorted((k, q.terms) for k, q in self.images.items()))

    def as_dict(self, status=None):
        """JSON-ready form: provenance, degree, images keyed "u*v|x*y"."""
        def render(value):
            if isinstance(value, tuple):
                return [render(v) for v in value]
            return str(value) if not isinstance(value, (str, int)) else value

        keys = {k: f"{k[0][0]}*{k[0][1]}|{k[1][0]}*{k[1][1]}" for k in self.images}
        out = {
            "provenance": render(self.provenance),
            "degree": self.degree,
            "images": {keys[k]: str(q) for k, q in sorted(self.images.items())},
        }
        if status is not None:
            out["status"] = status
        return out

    def __repr__(self):
        return f"T2Hom({self.provenance})"


def projection_map(graph, edge):
    """The map induced by the coordinate projection onto one generator.

    Sends each adjacent pair containing the edge to the signed outer
    vertex it carries on that coordinate, everything else to zero; these
    maps generate the image of the comparison map from Hom(R^m, R/I).
    """
    ideal = graph.edge_ideal()
    e = graph.canonical_edge(*edge)
    images = {}
    for g in kk0_generators(graph):
        coeff = g.coefficient_of(e)
        if coeff is not None:
            sign, vertex = coeff
            images[g.key] = ideal.normal_form([(Monomial.variable(vertex), sign)])
    return T2Hom(graph, ("projection", e), images, -2)


@dataclass(frozen=True)
class PairContext:
    """Data attached to an edge (a, b) and admissible subsets L_a, L_b.

    exposed_a: vertices outside L_a on the a side that see some L vertex
    through a non-edge (symmetrically exposed_b); factors: outside
    neighbors of each exposed vertex; multipliers: square-free parts of
    the one-per-factor products.
    """

    edge: tuple
    subset_a: tuple
    subset_b: tuple
    lbar_a: tuple
    lbar_b: tuple
    exposed_a: tuple
    exposed_b: tuple
    exposed: tuple
    factors: dict
    multipliers: tuple


def pair_context(graph, edge, subset_a, subset_b, allow_empty=False):
    graph.require_simple("pair maps")
    a, b = edge
    if not graph.has_edge(a, b):
        raise UnknownEdgeError(f"no edge {a!r}-{b!r}")
    na = set(graph.neighborhood(a)) - {b}
    nb = set(graph.neighborhood(b)) - {a}
    sa, sb = set(subset_a), set(subset_b)
    if not sa <= na:
        raise InvalidChoiceError("L_a must consist of neighbors of a other than b")
    if not sb <= nb:
        raise InvalidChoiceError("L_b must consist of neighbors of b other than a")
    for z in na & nb:
        if (z in sa) != (z in sb):
            raise InvalidChoiceError(
                f"common neighbor {z!r} must belong to both sides or neither")
    if not (sa or sb) and not allow_empty:
        raise InvalidChoiceError("L_a and L_b cannot both be empty")
    ideal = graph.edge_ideal()

    def escapes(x, ys):
        return any(not ideal.contains(Monomial.from_vertices((x, y))) for y in ys)

    lbar_a = graph.sorted_vertices(na - sa)
    lbar_b = graph.sorted_vertices(nb - sb)
    exposed_a = tuple(x for x in lbar_a if escapes(x, sb) or escapes(x, sa))
    exposed_b = tuple(x for x in lbar_b if escapes(x, sa) or escapes(x, sb))
    exposed = graph.sorted_vertices(set(exposed_a) | set(exposed_b))
    factors = {x: graph.sorted_vertices(set(graph.neighborhood(x)) - {a, b})
               for x in exposed}
    multipliers = tuple(sorted(sqrt_products([factors[x] for x in exposed])))
    return PairContext((a, b), graph.sorted_vertices(sa), graph.sorted_vertices(sb),
                       lbar_a, lbar_b, exposed_a, exposed_b, exposed,
                       factors, multipliers)


def _pair_hom(graph, ideal, ctx, lam):
    a, b = ctx.edge
    ab = graph.canonical_edge(a, b)
    images = {}
    for center, x_list in ((a, ctx.subset_a), (b, ctx.subset_b)):
        for x in x_list:
            cx = graph.canonical_edge(center, x)
            key = kgen_key(graph, ab, cx)
            sign = -1 if key[0] == ab else 1
            prev = images.get(key, QuotientClass.zero())
            term = ideal.normal_form(
                list(prev.terms) + [(lam.times_variable(x), sign)])
            images[key] = term
    return T2Hom(graph, ("pair", ab, ctx.subset_a, ctx.subset_b, lam),
                 images, lam.degree + 1 - 3)


def _pair_status(ideal, ctx, lam, hom):
    if hom.is_zero():
        return "zero"
    leftovers = list(ctx.lbar_a) + list(ctx.lbar_b)
    if all(ideal.contains(lam.times_variable(y)) for y in leftovers):
        return "trivial"
    return "nontrivial"


def pair_homs(graph, edge, cap=DEFAULT_PAIR_CAP):
    """All pair maps at one edge with their cohomology status.

    Enumerates compatible subsets (L_a, L_b) with nonempty union and every
    admissible multiplier.  Status "trivial" means the map is the
    multiplier times the projection map of the edge (so it dies in the
    cohomology quotient); "nontrivial" maps represent nonzero classes.
    """
    graph.require_simple("pair maps")
    a, b = edge
    ab = graph.canonical_edge(a, b)
    ideal = graph.edge_ideal()
    na = graph.sorted_vertices(set(graph.neighborhood(a)) - {b})
    nb = graph.sorted_vertices(set(graph.neighborhood(b)) - {a})
    common = [x for x in na if x in set(nb)]
    only_a = [x for x in na if x not in set(common)]
    only_b = [x for x in nb if x not in set(common)]
    slots = len(common) + len(only_a) + len(only_b)
    if slots > cap:
        raise DegreeCapExceededError(
            f"edge {ab!r} has {slots} subset slots (cap {cap})", vertex=None)
    out = []
    for cmask in range(1 << len(common)):
        chosen_common = [common[i] for i in range(len(common)) if cmask >> i & 1]
        for amask in range(1 << len(only_a)):
            la = chosen_common + [only_a[i] for i in range(len(only_a)) if amask >> i & 1]
            for bmask in range(1 << len(only_b)):
                lb = chosen_common + [only_b[i] for i in range(len(only_b)) if bmask >> i & 1]
                if not la and not lb:
                    continue
                ctx = pair_context(graph, (a, b), la, lb)
                for lam in ctx.multipliers:
                    hom = _pair_hom(graph, ideal, ctx, lam)
                    out.append((hom, _pair_status(ideal, ctx, lam, hom)))
    return out


class T2Result:
    """Verdict of a vanishing check, with a replayable witness on failure."""

    __slots__ = ("vanishes", "witness")

    def __init__(self, vanishes, witness=None):
        self.vanishes = vanishes
        self.witness = witness

    def __bool__(self):
        return self.vanishes

    def __repr__(self):
        return f"T2Result(vanishes={self.vanishes}, witness={self.witness})"


def require_triangle_free(graph, operation):
    triangles = graph.induced_cycles({3})
    if triangles:
        raise TriangleFoundError(
            f"{operation} requires a triangle-free graph", triangle=triangles[0])


def t2_vanishes_trianglefree(graph, cap=DEFAULT_PAIR_CAP):
    """Vanishing criterion for the obstruction module, triangle-free case.

    The module vanishes iff every pair map is either the zero map or a
    multiplier times the projection map of its edge; concretely, for
    every edge, admissible subsets with nonempty union, and admissible
    multiplier that does not kill the whole subset, the multiplier times
    each leftover neighbor must lie in the ideal.  With both subsets
    nonempty the condition is automatic for triangle-free graphs, so only
    single-sided subsets are enumerated.  Multipliers killing the whole
    subset give the zero map and are skipped: they carry no cohomology
    class (a failing product there says nothing, as the graded oracle
    confirms on six-vertex graphs).
    """
    graph.require_simple("the vanishing criterion")
    require_triangle_free(graph, "the vanishing criterion")
    ideal = graph.edge_ideal()
    for a, b in graph.edge_list():
        for first, second in (((a, b), False), ((b, a), True)):
            u, v = first
            nbrs = graph.sorted_vertices(set(graph.neighborhood(u)) - {v})
            if len(nbrs) > cap:
                raise DegreeCapExceededError(
                    f"vertex {u!r} has {len(nbrs)} usable neighbors (cap {cap})",
                    vertex=u)
            for mask in range(1, 1 << len(nbrs)):
                subset = [nbrs[i] for i in range(len(nbrs)) if mask >> i & 1]
                la, lb = ([], subset) if second else (subset, [])
                ctx = pair_context(graph, (a, b), la, lb)
                residual = sorted(
                    (set(graph.neighborhood(a)) | set(graph.neighborhood(b)))
                    - {a, b} - set(la) - set(lb) - set(ctx.exposed),
                    key=graph.index)
                if not residual:
                    continue
                for lam in ctx.multipliers:
                    if all(ideal.contains(lam.times_variable(x)) for x in subset):
                        continue
                    for y in residual:
                        if not ideal.contains(lam.times_variable(y)):
                            return T2Result(False, {
                                "edge": (a, b),
                                "L_a": list(la),
                                "L_b": list(lb),
                                "lambda": str(lam),
                                "x": y,
                            })
    return T2Result(True)


def t2_zero_sufficient(graph):
    """No induced 3- or 4-cycles forces the obstruction module to vanish."""
    graph.require_simple("the sufficiency test")
    return not graph.induced_cycles({3, 4})


def validate_t2hom(graph, hom):
    """Check every relation of the adjacent-pair module against the map."""
    ideal = graph.edge_ideal()
    for rel in kk0_relations(graph):
        terms = []
        for sign, coeff, key in rel.terms:
            img = hom.image(key)
            for m, c in img.terms:
                terms.append((m.times(coeff), c * sign))
        if not ideal.normal_form(terms).is_zero():
            return False
    return True
