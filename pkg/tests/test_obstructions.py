from fractions import Fraction

import pytest

from edgedeform import (
    Graph,
    Poset,
    build_graph,
    cycle,
    edge_rank,
    family,
    kk0_generators,
    kk0_relations,
    letterplace2,
    pair_context,
    pair_homs,
    path,
    projection_map,
    t2_vanishes_trianglefree,
    t2_zero_sufficient,
    validate_t2hom,
)
from edgedeform.errors import (
    InvalidChoiceError,
    SimpleGraphRequiredError,
    TriangleFoundError,
    UnknownEdgeError,
)
from edgedeform.monomials import Monomial, ONE
from edgedeform.obstructions import T2Hom, kgen_key

from helpers import atlas_graphs, relabeled


def M(text):
    return Monomial.parse(text)


def test_kk0_generators():
    assert len(kk0_generators(cycle(3))) == 3
    gens = kk0_generators(cycle(4))
    assert len(gens) == 4
    for g in gens:
        assert len(set(g.edge1) & set(g.edge2)) == 1
        assert g.shared not in (g.outer1, g.outer2)
    assert kk0_generators(build_graph([("a", "b")])) == []
    with pytest.raises(SimpleGraphRequiredError):
        kk0_generators(build_graph([("a", "a"), ("a", "b")]))


def test_kk0_relation_census():
    assert [r.rtype for r in kk0_relations(path(3))] == [1]
    assert sorted(r.rtype for r in kk0_relations(path(4))) == [1, 1, 3]
    assert sorted(r.rtype for r in kk0_relations(cycle(3))) == [1, 1, 1, 5]
    assert sorted(r.rtype for r in kk0_relations(family("star", 4))) == [1, 1, 1, 4]
    # a path next to a far-away edge produces the disjoint-multiple relation
    g = build_graph([("a", "b"), ("b", "c"), ("d", "e")])
    rels = kk0_relations(g)
    assert sorted(r.rtype for r in rels) == [1, 2]
    (two,) = [r for r in rels if r.rtype == 2]
    ((sign, coeff, key),) = two.terms
    assert coeff == M("d*e") and key == (("a", "b"), ("b", "c"))


def test_relation_degrees_are_homogeneous():
    for g in (cycle(4), cycle(5), family("complete", 4), family("star", 5)):
        for rel in kk0_relations(g):
            degs = {coeff.degree for _sign, coeff, _key in rel.terms}
            assert len(degs) == 1


def test_edge_rank():
    g = Graph(["b", "a", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    F = [("a", "b"), ("b", "c"), ("a", "c")]
    assert edge_rank(g, F, ("a", "c")) == 2
    assert edge_rank(g, F, ("a", "b")) == 0
    assert edge_rank(g, [("a", "b")], ("a", "b")) == 0
    g2 = build_graph([("a", "b"), ("c", "d")])
    assert edge_rank(g2, [("a", "b"), ("c", "d")], ("a", "b")) == 0
    with pytest.raises(UnknownEdgeError):
        edge_rank(g2, [("a", "b")], ("c", "d"))


def test_projection_map_c4():
    c4 = cycle(4)
    phi = projection_map(c4, ("a0", "a1"))
    assert phi.degree == -2
    ab = ("a0", "a1")
    keys = [k for k in (g.key for g in kk0_generators(c4)) if ab in k]
    assert set(phi.images) == set(keys)
    outer = {frozenset(k[0] if k[1] == ab else k[1]) - {"a0", "a1"}
             for k in keys}
    assert outer == {frozenset({"a2"}), frozenset({"a3"})}
    for k, img in phi.images.items():
        ((mono, coeff),) = img.terms
        assert coeff in (Fraction(1), Fraction(-1))
    assert validate_t2hom(c4, phi)


def test_projection_map_small():
    k2 = build_graph([("a", "b")])
    assert projection_map(k2, ("a", "b")).is_zero()
    c3 = cycle(3)
    phi = projection_map(c3, ("a0", "a1"))
    vals = {k: str(v) for k, v in phi.images.items()}
    assert len(vals) == 2 and all(v in ("a2", "-a2") for v in vals.values())
    assert validate_t2hom(c3, phi)


def test_all_projection_maps_validate():
    for g in (cycle(4), cycle(5), family("complete", 4), family("star", 5), path(5)):
        for e in g.edge_list():
            assert validate_t2hom(g, projection_map(g, e))


def test_pair_context_examples():
    c4 = cycle(4)
    ctx = pair_context(c4, ("a0", "a1"), ("a3",), ())
    assert ctx.exposed == () and ctx.multipliers == (ONE,)

    p3 = path(3)
    ctx = pair_context(p3, ("a0", "a1"), (), ("a2",))
    assert ctx.exposed == () and ctx.multipliers == (ONE,)

    c6 = cycle(6)
    ctx = pair_context(c6, ("a0", "a1"), ("a5",), ())
    assert ctx.exposed_a == () and ctx.exposed_b == ("a2",)
    assert ctx.factors["a2"] == ("a3",)
    assert ctx.multipliers == (M("a3"),)


def test_pair_context_validation():
    c4 = cycle(4)
    with pytest.raises(InvalidChoiceError):
        pair_context(c4, ("a0", "a1"), ("a1",), ())
    with pytest.raises(InvalidChoiceError):
        pair_context(c4, ("a0", "a1"), (), ())
    tri = build_graph([("a", "b"), ("b", "c"), ("a", "c")])
    with pytest.raises(InvalidChoiceError):
        pair_context(tri, ("a", "b"), ("c",), ())  # common neighbor must match
    ctx = pair_context(tri, ("a", "b"), ("c",), ("c",))
    assert ctx.subset_a == ("c",) and ctx.subset_b == ("c",)
    with pytest.raises(UnknownEdgeError):
        pair_context(c4, ("a0", "a2"), ("a3",), ())


def test_pair_homs_statuses():
    c4 = cycle(4)
    results = {(h.provenance[2], h.provenance[3], h.provenance[4]): status
               for h, status in pair_homs(c4, ("a0", "a1"))}
    assert results[(("a3",), (), ONE)] == "nontrivial"

    p3 = path(3)
    results = pair_homs(p3, ("a0", "a1"))
    assert [status for _h, status in results] == ["trivial"]
    (hom, _status) = results[0]
    phi = projection_map(p3, ("a0", "a1"))
    assert hom.images == phi.images

    for hom, _status in pair_homs(c4, ("a0", "a1")):
        assert validate_t2hom(c4, hom)


def test_pair_hom_sign_matches_projection():
    # on the subset side the pair map must literally be lambda * projection
    c6 = cycle(6)
    for hom, status in pair_homs(c6, ("a0", "a1")):
        lam = hom.provenance[4]
        phi = projection_map(c6, ("a0", "a1"))
        ideal = c6.edge_ideal()
        for key in hom.images:
            expected = ideal.multiply(phi.image(key), lam)
            if not expected.is_zero():
                assert hom.image(key) == expected


def test_t2_vanishing_cycles():
    res = t2_vanishes_trianglefree(cycle(4))
    assert not res.vanishes
    assert res.witness == {"edge": ("a0", "a1"), "L_a": ["a3"], "L_b": [],
                           "lambda": "1", "x": "a2"}
    assert t2_vanishes_trianglefree(path(3)).vanishes
    for n in (5, 6, 7, 8):
        assert t2_vanishes_trianglefree(cycle(n)).vanishes
    with pytest.raises(TriangleFoundError):
        t2_vanishes_trianglefree(cycle(3))
    with pytest.raises(SimpleGraphRequiredError):
        t2_vanishes_trianglefree(build_graph([("a", "a")]))


def test_t2_witness_replay():
    res = t2_vanishes_trianglefree(cycle(4))
    w = res.witness
    ctx = pair_context(cycle(4), w["edge"], w["L_a"], w["L_b"])
    lam = M(w["lambda"])
    assert lam in set(ctx.multipliers) or lam == ONE
    assert not cycle(4).edge_ideal().contains(lam.times(M(w["x"])))


def test_t2_letterplace():
    assert t2_vanishes_trianglefree(letterplace2(Poset.antichain(2))).vanishes
    assert t2_vanishes_trianglefree(letterplace2(Poset.chain(2))).vanishes
    res = t2_vanishes_trianglefree(letterplace2(Poset.chain(3)))
    assert not res.vanishes
    assert t2_vanishes_trianglefree(letterplace2(Poset.chain(4))).vanishes is False
    v_poset = Poset(["p", "q", "r"], [("p", "q"), ("p", "r")])
    assert t2_vanishes_trianglefree(letterplace2(v_poset)).vanishes  # height 1


def test_t2_zero_sufficient():
    assert t2_zero_sufficient(path(5))
    assert t2_zero_sufficient(family("star", 5))
    assert not t2_zero_sufficient(cycle(4))
    assert t2_zero_sufficient(cycle(5))
    assert not t2_zero_sufficient(cycle(3))


def test_sufficient_implies_vanishing():
    for g in atlas_graphs(max_nodes=5):
        if not g.induced_cycles({3}) and t2_zero_sufficient(g):
            assert t2_vanishes_trianglefree(g).vanishes


def test_validate_t2hom_rejects_broken_map():
    c4 = cycle(4)
    gens = kk0_generators(c4)
    ideal = c4.edge_ideal()
    # sending a generator to its shared vertex violates its type-1 relation
    shared = gens[0].shared
    broken = T2Hom(c4, ("manual",), {
        gens[0].key: ideal.normal_form([(Monomial.variable(shared), 1)])}, -2)
    assert not validate_t2hom(c4, broken)
    # an outer vertex, by contrast, is one of the eight valid degree -2 maps
    outer = T2Hom(c4, ("manual",), {
        gens[0].key: ideal.normal_form([(Monomial.variable(gens[0].outer1), 1)])}, -2)
    assert validate_t2hom(c4, outer)
    zero = T2Hom(c4, ("manual",), {}, -2)
    assert validate_t2hom(c4, zero)


def test_cover_identity_without_small_cycles():
    # with no induced 3- or 4-cycles every neighbor is swallowed by
    # L_a, L_b and the exposed set
    for g in atlas_graphs(max_nodes=6):
        if g.induced_cycles({3, 4}):
            continue
        for a, b in g.edge_list():
            na = g.sorted_vertices(set(g.neighborhood(a)) - {b})
            nb = g.sorted_vertices(set(g.neighborhood(b)) - {a})
            for mask_a in range(1 << min(len(na), 3)):
                la = [na[i] for i in range(min(len(na), 3)) if mask_a >> i & 1]
                for mask_b in range(1 << min(len(nb), 3)):
                    lb = [nb[i] for i in range(min(len(nb), 3)) if mask_b >> i & 1]
                    if not la and not lb:
                        continue
                    ctx = pair_context(g, (a, b), la, lb)
                    covered = {a, b} | set(la) | set(lb) | set(ctx.exposed)
                    assert set(g.neighborhood(a)) | set(g.neighborhood(b)) == covered


def test_t2_verdict_relabeling_invariance():
    for seed, g in enumerate([cycle(4), cycle(6), path(5), letterplace2(Poset.chain(3))]):
        h, _mapping = relabeled(g, seed=seed)
        assert t2_vanishes_trianglefree(g).vanishes == t2_vanishes_trianglefree(h).vanishes


def test_kgen_key_order():
    c4 = cycle(4)
    key = kgen_key(c4, ("a1", "a2"), ("a0", "a1"))
    assert key == (("a0", "a1"), ("a1", "a2"))


def test_pair_homs_in_triangles_respect_relations():
    # the well-definedness of pair maps does not need triangle-freeness:
    # type-5 relations are where the sign bookkeeping earns its keep
    for g in (cycle(3), family("complete", 4)):
        for e in g.edge_list():
            for hom, _status in pair_homs(g, e):
                assert validate_t2hom(g, hom)


def test_t2hom_serialization():
    c4 = cycle(4)
    phi = projection_map(c4, ("a0", "a1"))
    d = phi.as_dict(status="trivial")
    assert d["degree"] == -2 and d["status"] == "trivial"
    assert set(d["images"]) == {"a0*a1|a0*a3", "a0*a1|a1*a2"}
    assert d["provenance"][0] == "projection"
    ((hom, status),) = [r for r in pair_homs(c4, ("a0", "a1"))
                        if r[0].provenance[2] == ("a3",) and r[0].provenance[3] == ()]
    d = hom.as_dict(status=status)
    assert d["status"] == "nontrivial"
    assert d["images"] == {"a0*a1|a0*a3": "-a3"}


def test_t2hom_images_are_homogeneous():
    for g in (cycle(4), cycle(6), path(5)):
        for e in g.edge_list():
            phi = projection_map(g, e)
            for qc in phi.images.values():
                assert qc.degree == phi.degree + 3
            for hom, _status in pair_homs(g, e):
                for qc in hom.images.values():
                    assert qc.degree == hom.degree + 3


def test_letterplace_height_criterion_vs_oracle():
    # obstruction vanishing for a letterplace graph detects poset height:
    # vanishes exactly when there is no chain of two strict steps
    from test_acceptance import _all_labeled_posets
    from edgedeform import t2_report

    for n in (1, 2, 3):
        names = [f"p{i}" for i in range(n)]
        for rel in _all_labeled_posets(names):
            poset = Poset(names, sorted(rel))
            g = letterplace2(poset)
            verdict = t2_vanishes_trianglefree(g).vanishes
            assert verdict == (poset.height() <= 1)
            assert verdict == t2_report(g, window=(-3, 2)).all_zero()


def test_kgenerators_are_syzygies():
    # the signed relation -outer2*e1 + outer1*e2 must kill the generators:
    # outer2 * m(edge1) == outer1 * m(edge2) == their least common multiple
    for g in (cycle(4), cycle(6), family("complete", 4), family("star", 5), path(6)):
        for kg in kk0_generators(g):
            m1 = Monomial.from_vertices(kg.edge1)
            m2 = Monomial.from_vertices(kg.edge2)
            lhs = m1.times_variable(kg.outer2)
            rhs = m2.times_variable(kg.outer1)
            assert lhs == rhs
            assert lhs == Monomial.from_vertices(
                (kg.shared, kg.outer1, kg.outer2))


def test_pair_hom_zero_status():
    # a multiplier that already contains a generator kills every image
    g = build_graph([("a0", "a1"), ("a0", "a2"), ("a0", "a3"),
                     ("a0", "a4"), ("a1", "a2")])
    statuses = {(h.provenance[2], h.provenance[3], h.provenance[4]): s
                for h, s in pair_homs(g, ("a0", "a3"))}
    lam = M("a1*a2")
    assert statuses[(("a4",), (), lam)] == "zero"
    assert g.edge_ideal().contains(lam.times_variable("a4"))
