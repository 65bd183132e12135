"""Tests for obstruction families, the minimality checker and search."""
import random
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest

from cographpart import (
    FAMILY_A2_DSL,
    Graph,
    Triple,
    build_H,
    canonical_code,
    check_partition,
    chromatic_number,
    contains_induced,
    count_Oi,
    count_Oi_report,
    family_A2,
    family_Ap,
    family_Ap_dsl,
    family_Oi,
    is_family_free,
    is_minimal_obstruction,
    is_partitionable,
    iter_family_Oi,
    leaf_count,
    parse_expr,
    realize,
    search_minimal_obstructions,
    star_forests,
    to_expr,
    vertex_arboricity,
)

from conftest import to_nx


def codes(trees):
    return {canonical_code(t) for t in trees}


def witness_checks_out(graph, witness):
    """Relabel a deletion witness into the deleted subgraph and validate."""
    kept = sorted(v for v, _ in witness.labels)
    assert kept == [u for u in range(graph.n) if u != witness.vertex]
    sub = graph.induced_subgraph(kept)
    by_vertex = dict(witness.labels)
    labels = tuple(by_vertex[v] for v in kept)
    return check_partition(sub, labels, witness.triple)


def test_family_a2_shapes():
    trees = family_A2()
    assert len(trees) == 7
    assert [leaf_count(t) for t in trees] == [5, 9, 8, 11, 7, 9, 7]
    assert len(codes(trees)) == 7
    for t, dsl in zip(trees, FAMILY_A2_DSL):
        assert canonical_code(t) == canonical_code(parse_expr(dsl))


def test_family_a2_members_are_obstructions():
    for t in family_A2():
        assert not is_partitionable(t, (2, 0, 0))


def test_family_a2_small_members_minimal():
    # the three smallest members in full; the rest are covered in the
    # acceptance suite
    for idx in (0, 4, 6):
        t = family_A2()[idx]
        report = is_minimal_obstruction(t, Triple(2, 0, 0))
        assert report.is_obstruction and report.is_minimal
        g = realize(t)
        assert len(report.witnesses) == g.n
        for w in report.witnesses:
            assert witness_checks_out(g, w)


def test_family_ap_dsl_matches_a2():
    assert family_Ap_dsl(2) == FAMILY_A2_DSL
    assert codes(family_Ap(2)) == codes(family_A2())


def test_family_ap_sizes():
    assert len(family_Ap(3)) == 8
    assert len(family_Ap(4)) == 8
    assert len(family_Ap(5)) == 9
    assert len(codes(family_Ap(3))) == 8
    with pytest.raises(ValueError):
        family_Ap(1)


def test_family_ap3_members_fail_goal():
    for t in family_Ap(3):
        assert not is_partitionable(t, (3, 0, 0))


def test_star_forests_counts():
    assert [len(star_forests(m)) for m in (2, 3, 4, 5)] == [1, 2, 4, 6]
    assert to_expr(star_forests(2)[0]) == "K(2)"
    assert [to_expr(t) for t in star_forests(4)] == [
        "J(K(1),I(3))", "U(J(K(1),I(2)),K(1))", "2*K(2)", "U(K(2),2*K(1))"]
    with pytest.raises(ValueError):
        star_forests(1)


def test_star_forests_are_forests_with_an_edge():
    from cographpart import find_p4
    for m in (2, 3, 4, 5, 6):
        seen = codes(star_forests(m))
        assert len(seen) == len(star_forests(m))
        for t in star_forests(m):
            g = realize(t)
            assert g.n == m
            assert g.is_forest()
            assert g.m >= 1
            assert find_p4(g) is None


def test_family_oi_edge_cases():
    for p in (2, 3):
        zero = family_Oi(p, 0, [])
        want = parse_expr(f"C(U({p + 1}*K({p + 1})))")
        assert canonical_code(zero) == canonical_code(want)
        top = family_Oi(p, p, [star_forests(2)[0]] * p)
        assert canonical_code(top) == canonical_code(parse_expr(f"K({2 * p + 1})"))


def test_family_oi_vertex_count():
    for f in star_forests(4):
        assert leaf_count(family_Oi(3, 1, [f])) == 13


def test_family_oi_rejects_wrong_forest():
    with pytest.raises(ValueError):
        family_Oi(3, 1, [star_forests(3)[0]])  # needs forests on 4 vertices
    with pytest.raises(ValueError):
        family_Oi(3, 1, [parse_expr("I(4)")])  # not a star forest


def test_count_oi():
    assert count_Oi(2, 0) == 1 and count_Oi(3, 0) == 1
    assert count_Oi(3, 1) == 4
    assert count_Oi(2, 2) == 1 and count_Oi(3, 3) == 1
    assert [count_Oi(3, i) for i in range(4)] == [1, 4, 3, 1]


def test_count_oi_report_flags_formula():
    rep = count_Oi_report(3, 1)
    assert (rep.distinct, rep.multiset_count) == (4, 4)
    assert rep.formula_matches
    rep = count_Oi_report(3, 2)
    assert (rep.distinct, rep.multiset_count) == (3, 3)
    assert rep.formula_value == Fraction(2)
    assert not rep.formula_matches
    rep = count_Oi_report(3, 3)
    assert rep.distinct == 1
    assert rep.formula_value == Fraction(1, 6)
    assert not rep.formula_matches


def test_iter_family_oi_members_distinct():
    members = list(iter_family_Oi(3, 2))
    assert len(members) == 3
    assert len(codes(members)) == 3
    for t in members:
        assert leaf_count(t) == 3 * (3 + 2 - 2) + 1


def test_build_h_first_level():
    g1 = parse_expr("C(U(3*K(3)))")
    h = build_H(g1, g1, 2)
    assert leaf_count(h) == 22
    assert to_expr(h) == "J(2*J(I(3),I(3),I(3)),I(4))"
    assert vertex_arboricity(h) == 4
    assert chromatic_number(h) == 4
    report = is_minimal_obstruction(h, Triple(3, 0, 0))
    assert report.is_minimal


def test_build_h_iterates():
    g1 = parse_expr("C(U(3*K(3)))")
    h = build_H(g1, g1, 2)
    h2 = build_H(h, h, 3)
    assert leaf_count(h2) == 49
    assert is_minimal_obstruction(h2, Triple(4, 0, 0)).is_minimal


def test_build_h_rejects_bad_inputs():
    g1 = parse_expr("C(U(3*K(3)))")
    # K_5 is a minimal obstruction for (2,0,0) but has chromatic number 5
    with pytest.raises(ValueError):
        build_H(g1, parse_expr("K(5)"), 2)
    # K_4 is not an obstruction for (2,0,0) at all
    with pytest.raises(ValueError):
        build_H(g1, parse_expr("K(4)"), 2)


def test_is_minimal_obstruction_k5():
    report = is_minimal_obstruction(parse_expr("K(5)"), Triple(2, 0, 0))
    assert report.is_obstruction and report.is_minimal
    assert report.goal == (Triple(2, 0, 0),)
    assert len(report.witnesses) == 5
    g = Graph.complete(5)
    for w in report.witnesses:
        assert w.triple == Triple(2, 0, 0)
        assert witness_checks_out(g, w)
    data = report.to_json()
    assert data["minimal"] and data["obstruction"]
    assert Graph.from_graph6(data["graph6"]) == g
    assert len(data["witnesses"]) == 5


def test_is_minimal_obstruction_k6():
    report = is_minimal_obstruction(parse_expr("K(6)"), Triple(2, 0, 0))
    assert report.is_obstruction
    assert not report.is_minimal
    assert report.failing_vertex is not None
    assert report.witnesses == ()
    assert "witnesses" not in report.to_json()


def test_is_minimal_obstruction_feasible_graph():
    report = is_minimal_obstruction(parse_expr("K(4)"), Triple(2, 0, 0))
    assert not report.is_obstruction and not report.is_minimal
    cx = report.counterexample
    assert cx is not None
    assert check_partition(Graph.complete(4), cx.labels, cx.triple)


def test_is_minimal_obstruction_ifvs():
    for q in (0, 1, 2):
        report = is_minimal_obstruction(parse_expr(f"K({q + 3})"),
                                        Triple(1, q, 0))
        assert report.is_minimal
        report = is_minimal_obstruction(parse_expr(f"C(U({q + 2}*K(2)))"),
                                        Triple(1, q, 0))
        assert report.is_minimal


def test_goal_set_normalization():
    report = is_minimal_obstruction(parse_expr("K(5)"),
                                    [(2, 0, 0), (2, 0, 0), Triple(2, 0, 0)])
    assert report.goal == (Triple(2, 0, 0),)
    with pytest.raises(ValueError):
        is_minimal_obstruction(parse_expr("K(5)"), [])


def test_contains_induced_basic():
    assert contains_induced(Graph.complete(6), Graph.complete(5))
    assert not contains_induced(realize(parse_expr("C(U(3*K(3)))")),
                                Graph.complete(5))
    c4 = realize(parse_expr("C(U(2*K(2)))"))
    assert contains_induced(realize(parse_expr("C(U(3*K(2),K(1)))")), c4)
    assert not contains_induced(Graph.complete(6), c4)
    assert contains_induced(c4, Graph(1))
    assert contains_induced(c4, Graph(0))
    assert not contains_induced(Graph(2), Graph.complete(2))


def test_contains_induced_matches_subset_scan():
    rng = random.Random(71)
    for _ in range(40):
        hn = rng.randrange(1, 8)
        pn = rng.randrange(1, min(hn, 5) + 1)
        host = Graph.from_edge_list(hn, [
            (u, v) for u, v in combinations(range(hn), 2)
            if rng.random() < 0.5])
        pat = Graph.from_edge_list(pn, [
            (u, v) for u, v in combinations(range(pn), 2)
            if rng.random() < 0.5])
        slow = any(
            nx.is_isomorphic(to_nx(host.induced_subgraph(sub)), to_nx(pat))
            for sub in combinations(range(hn), pn))
        assert contains_induced(host, pat) == slow


def test_is_family_free():
    forest = Graph.from_edge_list(6, [(0, 1), (0, 2), (3, 4)])
    assert is_family_free(forest, family_A2())
    assert not is_family_free(Graph.complete(5), family_A2())
    assert not is_family_free(realize(parse_expr("C(U(3*K(3)))")), family_A2())
    assert is_family_free(forest, [])


def test_search_arboricity_one():
    reports = search_minimal_obstructions(4, Triple(1, 0, 0))
    found = {r.dsl for r in reports}
    want = {to_expr(parse_expr("K(3)")), to_expr(parse_expr("C(U(2*K(2)))"))}
    assert found == want


def test_search_ifvs_q1():
    reports = search_minimal_obstructions(7, Triple(1, 1, 0))
    got = {canonical_code(parse_expr(r.dsl)) for r in reports}
    want = codes([parse_expr("K(4)"), parse_expr("C(U(3*K(2)))")])
    assert got == want
    for r in reports:
        assert r.is_minimal
        g = realize(parse_expr(r.dsl))
        for w in r.witnesses:
            assert witness_checks_out(g, w)


def test_search_two_triple_goal_invariants():
    goal = [Triple(1, 0, 0), Triple(0, 2, 0)]
    reports = search_minimal_obstructions(6, goal)
    assert reports
    for r in reports:
        t = parse_expr(r.dsl)
        assert not is_partitionable(t, (1, 0, 0))
        assert not is_partitionable(t, (0, 2, 0))
        g = realize(t)
        assert len(r.witnesses) == g.n
        for w in r.witnesses:
            assert w.triple in (Triple(0, 2, 0), Triple(1, 0, 0))
            assert witness_checks_out(g, w)


def test_search_parallel_matches_serial():
    serial = search_minimal_obstructions(6, Triple(2, 0, 0))
    parallel = search_minimal_obstructions(6, Triple(2, 0, 0), jobs=2)
    assert [r.to_json() for r in serial] == [r.to_json() for r in parallel]
    # K_5 is the only member with at most 6 vertices
    assert [r.dsl for r in serial] == ["K(5)"]
