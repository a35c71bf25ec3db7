"""Brute-force graded verification by exact linear algebra.

For each degree the space of maps (ideal generators -> quotient classes)
satisfying the defining relations is cut out by a sparse integer linear
system; dimensions of the map space, of the trivial part (derivation
images, respectively projection-map multiples) and of the cohomology
quotient fall out of exact rank computations.  Verdicts are bounded to
the requested degree window: this module never certifies vanishing in
all degrees, the combinatorial criteria do.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .deform import generator_pair_relations, hom_generators, DEFAULT_STAR_CAP
from .linalg import RowReducer, dot, rank_of_rows
from .monomials import QuotientClass
from .obstructions import (
    kk0_generators,
    kk0_relations,
    pair_homs,
    projection_map,
    require_triangle_free,
)

T1_WINDOW = (-2, 3)
T2_WINDOW = (-3, 2)

WINDOW_NOTE = ("dimensions are exact in the listed degrees only; vanishing in all "
               "degrees is certified by the combinatorial criteria, not by this report")


@dataclass
class DegreeRow:
    c: int
    hom_dim: int
    trivial_dim: int
    cohomology_dim: int
    generation_ok: bool | None = None

    def as_dict(self):
        return {
            "c": self.c,
            "hom_dim": self.hom_dim,
            "trivial_dim": self.trivial_dim,
            "cohomology_dim": self.cohomology_dim,
            "generation_ok": self.generation_ok,
        }


@dataclass
class GradedReport:
    kind: str
    degrees: list = field(default_factory=list)
    window: tuple = T1_WINDOW
    caps: dict = field(default_factory=dict)
    note: str = WINDOW_NOTE

    def dim(self, c):
        for row in self.degrees:
            if row.c == c:
                return row.cohomology_dim
        raise KeyError(c)

    def all_zero(self):
        return all(row.cohomology_dim == 0 for row in self.degrees)

    def generation_all_ok(self):
        return all(row.generation_ok for row in self.degrees)

    def as_dict(self):
        return {
            "kind": self.kind,
            "degrees": [row.as_dict() for row in self.degrees],
            "window": list(self.window),
            "caps": dict(self.caps),
            "note": self.note,
        }


class _LinearSystem:
    """Constraint system for maps (generators -> degree-d quotient classes)."""

    def __init__(self, ideal, gen_count, image_degree):
        self.ideal = ideal
        self.gen_count = gen_count
        self.basis = ideal.graded_basis(image_degree) if image_degree >= 0 else ()
        self.bindex = {m: k for k, m in enumerate(self.basis)}
        self.ncols = gen_count * len(self.basis)
        self.rows = []
        self._col_rows = {}

    def col(self, gen_idx, monomial):
        return gen_idx * len(self.basis) + self.bindex[monomial]

    def add_relation_rows(self, terms):
        """terms: (sign, coefficient monomial, generator index) triples."""
        acc = {}
        for sign, coeff, gi in terms:
            for mu in self.basis:
                nu = mu.times(coeff)
                if not self.ideal.contains(nu):
                    row = acc.setdefault(nu, {})
                    c = self.col(gi, mu)
                    row[c] = row.get(c, 0) + sign
        for row in acc.values():
            if row:
                self.rows.append(row)

    def solve(self):
        self.reducer = RowReducer()
        for idx, row in enumerate(self.rows):
            for c in row:
                self._col_rows.setdefault(c, []).append(idx)
            self.reducer.add(row)
        self.rank = self.reducer.rank
        self.nullity = self.ncols - self.rank
        return self.nullity

    def assert_member(self, vec, what):
        """A vector claimed to satisfy the constraints must dot to zero."""
        touched = set()
        for c in vec:
            touched.update(self._col_rows.get(c, ()))
        for idx in touched:
            if dot(self.rows[idx], vec) != 0:
                raise RuntimeError(f"{what} violates the relation constraints")

    def vector_from_images(self, images, gen_keys, multiplier=None):
        """Sparse integer coordinates of an image table, optionally multiplied."""
        vec = {}
        for key, qc in images.items():
            gi = gen_keys[key]
            for m, coeff in qc.terms:
                nu = m.times(multiplier) if multiplier is not None else m
                if not self.ideal.contains(nu):
                    c = self.col(gi, nu)
                    vec[c] = vec.get(c, 0) + coeff
        vec = {c: v for c, v in vec.items() if v}
        if not vec:
            return {}
        denom = 1
        for v in vec.values():
            d = getattr(v, "denominator", 1)
            denom = denom * d // gcd(denom, d)
        return {c: int(v * denom) for c, v in vec.items()}

    def nullspace_images(self, gen_labels):
        """Null space basis rendered back into image tables."""
        basis_vectors = self.reducer.nullspace_basis(self.ncols)
        out = []
        nb = len(self.basis)
        for vec in basis_vectors:
            images = {}
            for c, v in vec.items():
                gi, bi = divmod(c, nb)
                images.setdefault(gen_labels[gi], []).append((self.basis[bi], v))
            out.append({k: QuotientClass(t) for k, t in images.items()})
        return out


# -- first cotangent cohomology ------------------------------------------


def _t1_system(graph, c):
    if c < -2:
        raise ValueError("degrees below -2 carry no maps")
    ideal = graph.edge_ideal()
    system = _LinearSystem(ideal, len(ideal.generators), 2 + c)
    for i, j, ci, cj in generator_pair_relations(graph):
        system.add_relation_rows(((1, ci, i), (-1, cj, j)))
    system.solve()
    return system


def _derivation_vectors(graph, system, c):
    ideal = graph.edge_ideal()
    vecs = []
    if c + 1 < 0:
        return vecs
    edges = graph.edge_list()
    for m in ideal.graded_basis(c + 1):
        for v in graph.vertices:
            vec = {}
            for i, (u, w) in enumerate(edges):
                if u == w == v:
                    contributions = [(m.times_variable(v), 2)]
                elif u == v:
                    contributions = [(m.times_variable(w), 1)]
                elif w == v:
                    contributions = [(m.times_variable(u), 1)]
                else:
                    continue
                for nu, coeff in contributions:
                    if not ideal.contains(nu):
                        col = system.col(i, nu)
                        vec[col] = vec.get(col, 0) + coeff
            if vec:
                system.assert_member(vec, f"derivation image d/d{v} * {m}")
                vecs.append(vec)
    return vecs


def hom_dim(graph, c):
    """Dimension of the degree-c space of relation-respecting maps."""
    return _t1_system(graph, c).nullity


def hom_basis(graph, c):
    """A basis of the degree-c map space, as image tables edge -> class."""
    system = _t1_system(graph, c)
    return system.nullspace_images(graph.edge_list())


def t1_dim(graph, c):
    """Degree-c dimension of the first cotangent cohomology."""
    system = _t1_system(graph, c)
    return system.nullity - rank_of_rows(_derivation_vectors(graph, system, c))


def _t1_generation_vectors(graph, system, c, gens):
    ideal = graph.edge_ideal()
    edge_index = {e: i for i, e in enumerate(graph.edge_list())}
    vecs = []
    for hom in gens:
        mdeg = c - hom.degree
        if mdeg < 0:
            continue
        for m in ideal.graded_basis(mdeg):
            vec = system.vector_from_images(hom.images, edge_index, multiplier=m)
            if vec:
                system.assert_member(vec, f"generator multiple {m} * ({hom.label()})")
                vecs.append(vec)
    return vecs


def t1_report(graph, window=T1_WINDOW, check_generation=False, cap=DEFAULT_STAR_CAP):
    """Graded dimensions of Hom and of the cohomology quotient over a window."""
    lo, hi = window
    report = GradedReport("t1", window=(lo, hi), caps={"star_cap": cap})
    gens = hom_generators(graph, cap=cap) if check_generation else None
    for c in range(max(lo, -2), hi + 1):
        system = _t1_system(graph, c)
        dvecs = _derivation_vectors(graph, system, c)
        trivial = rank_of_rows(dvecs)
        row = DegreeRow(c, system.nullity, trivial, system.nullity - trivial)
        if check_generation:
            span = rank_of_rows(_t1_generation_vectors(graph, system, c, gens))
            row.generation_ok = span == system.nullity
        report.degrees.append(row)
    return report


def generation_check_t1(graph, window=T1_WINDOW, cap=DEFAULT_STAR_CAP):
    """Do the combinatorial generators span every hom component in the window?"""
    return t1_report(graph, window=window, check_generation=True, cap=cap)


# -- second cotangent cohomology -------------------------------------------


def _t2_system(graph, c):
    if c < -3:
        raise ValueError("degrees below -3 carry no maps")
    gens = kk0_generators(graph)
    key_index = {g.key: i for i, g in enumerate(gens)}
    ideal = graph.edge_ideal()
    system = _LinearSystem(ideal, len(gens), 3 + c)
    for rel in kk0_relations(graph):
        system.add_relation_rows(
            [(sign, coeff, key_index[key]) for sign, coeff, key in rel.terms])
    system.solve()
    return system, gens, key_index


def homK_dim(graph, c):
    """Dimension of the degree-c maps out of the adjacent-pair module."""
    system, _, _ = _t2_system(graph, c)
    return system.nullity


def homK_basis(graph, c):
    system, gens, _ = _t2_system(graph, c)
    return system.nullspace_images([g.key for g in gens])


def _projection_vectors(graph, system, key_index, c):
    ideal = graph.edge_ideal()
    vecs = []
    if c + 2 < 0:
        return vecs
    for e in graph.edge_list():
        phi = projection_map(graph, e)
        for m in ideal.graded_basis(c + 2):
            vec = system.vector_from_images(phi.images, key_index, multiplier=m)
            if vec:
                system.assert_member(vec, f"projection multiple {m} * phi_{e}")
                vecs.append(vec)
    return vecs


def t2_dim(graph, c):
    """Degree-c dimension of the second cotangent cohomology."""
    system, _, key_index = _t2_system(graph, c)
    return system.nullity - rank_of_rows(_projection_vectors(graph, system, key_index, c))


def t2_report(graph, window=T2_WINDOW, check_generation=False, cap=DEFAULT_STAR_CAP):
    """Graded dimensions for the adjacent-pair module maps over a window."""
    lo, hi = window
    report = GradedReport("t2", window=(lo, hi), caps={"pair_cap": cap})
    span_homs = None
    if check_generation:
        require_triangle_free(graph, "the generation check")
        span_homs = []
        for e in graph.edge_list():
            span_homs.extend(h for h, _status in pair_homs(graph, e, cap=cap))
    for c in range(max(lo, -3), hi + 1):
        system, _, key_index = _t2_system(graph, c)
        pvecs = _projection_vectors(graph, system, key_index, c)
        trivial = rank_of_rows(pvecs)
        row = DegreeRow(c, system.nullity, trivial, system.nullity - trivial)
        if check_generation:
            ideal = graph.edge_ideal()
            vecs = list(pvecs)
            for hom in span_homs:
                mdeg = c - hom.degree
                if mdeg < 0:
                    continue
                for m in ideal.graded_basis(mdeg):
                    vec = system.vector_from_images(hom.images, key_index, multiplier=m)
                    if vec:
                        system.assert_member(vec, "pair-map multiple")
                        vecs.append(vec)
            row.generation_ok = rank_of_rows(vecs) == system.nullity
        report.degrees.append(row)
    return report


def generation_check_t2(graph, window=T2_WINDOW, cap=DEFAULT_STAR_CAP):
    """Projection maps plus pair-map multiples must span every component."""
    return t2_report(graph, window=window, check_generation=True, cap=cap)


# -- separation regularity --------------------------------------------------


def separation_regularity_check(graph, separated, v, fresh, degree_bound=5):
    """Windowed regularity of (fresh - v) on the separated quotient ring.

    Checks degree by degree up to the bound that multiplication by the
    difference is injective; a kernel element in any checked degree means
    the candidate is not a separation.  Certifies nothing beyond the
    window.
    """
    graph.index(v)
    separated.index(fresh)
    ideal = separated.edge_ideal()
    for d in range(0, degree_bound + 1):
        lower = ideal.graded_basis(d)
        upper = {m: i for i, m in enumerate(ideal.graded_basis(d + 1))}
        reducer = RowReducer()
        for mu in lower:
            vec = {}
            plus = mu.times_variable(fresh)
            if not ideal.contains(plus):
                vec[upper[plus]] = 1
            minus = mu.times_variable(v)
            if not ideal.contains(minus):
                vec[upper[minus]] = -1
            if not vec or not reducer.add(vec):
                return False
    return True
