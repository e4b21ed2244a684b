from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import group_pairs, instances

from src.lib.catalog import build_group, parse_subgroup
from src.lib.formulas import (
    DegreeCase,
    audit_bounds,
    bound_violations,
    class_count_edge_identity,
    degree_formula,
    degree_table,
    edge_count_abelian_H,
    edge_count_formula,
    edge_count_nilpotent_abelian,
    edge_count_normal,
    edge_count_normal_g1,
    edge_count_p_case,
    g_class_count,
    normal_g1_readings,
    pair_facts,
    pr_g,
    pr_g_closed_form,
    pr_g_self,
    special_edge_predictions,
    theorem_case,
)
from src.lib.group_core import IDENTITY, whole_group
from src.lib.ncgraph import build_graph, edge_count
from src.lib.utils import HypothesisNotMet


def audits_by_id(audits):
    return {a.bound_id: a for a in audits}


def test_named_probabilities(S3, D8, A3, rotations):
    assert pr_g(A3, S3, IDENTITY) == Fraction(2, 3)
    assert pr_g(whole_group(D8), D8, D8.lookup("r^2")) == Fraction(3, 8)
    assert pr_g(rotations, D8, D8.lookup("r^2")) == Fraction(1, 4)
    assert pr_g_self(whole_group(S3), IDENTITY) == Fraction(1, 2)
    assert pr_g_self(rotations, D8.lookup("r^2")) == 0


def test_pr_closed_form(D8, rotations, S3, transposition):
    r2 = D8.lookup("r^2")
    assert pr_g_closed_form(rotations, D8, IDENTITY) == Fraction(3, 4)
    assert pr_g_closed_form(rotations, D8, r2) == pr_g(rotations, D8, r2)
    assert pr_g_closed_form(rotations, D8, D8.lookup("r")) == 0
    # |[H,G]| = 3 while the smallest prime of 6 is 2
    with pytest.raises(HypothesisNotMet):
        pr_g_closed_form(transposition, S3, IDENTITY)
    A4 = build_group("A4")
    with pytest.raises(HypothesisNotMet):
        pr_g_closed_form(parse_subgroup(A4, "(12)(34),(13)(24)"), A4, IDENTITY)


def test_degree_cases(S3, transposition, A3):
    c123 = S3.lookup("(123)")
    table = degree_table(S3, transposition, c123)
    assert [p.value for p in table] == [5, 1, 1, 1, 1, 1]
    assert table[IDENTITY].case_tag == DegreeCase.CENTRAL_VERTEX

    outside = degree_formula(S3, A3, S3.lookup("(12)"), IDENTITY)
    assert outside.case_tag == DegreeCase.G_NOT_IN_K
    assert outside.value == 5
    assert degree_formula(S3, A3, IDENTITY, S3.lookup("(12)")).case_tag == DegreeCase.G1


def test_degree_witness_cases(D8, rotations):
    r2 = D8.lookup("r^2")
    assert degree_formula(D8, rotations, r2, D8.lookup("r")).case_tag == DegreeCase.CONJ_ONE
    assert degree_formula(D8, rotations, r2, D8.lookup("r")).value == 3
    assert degree_formula(D8, rotations, r2, D8.lookup("s")).value == 2


def test_theorem_cases(S3, D8, A3, transposition, rotations):
    assert theorem_case(S3, A3, S3.lookup("(12)")) == "GNotInK"
    assert theorem_case(S3, A3, IDENTITY) == "a"
    assert theorem_case(D8, rotations, D8.lookup("r^2")) == "b/in_H"
    assert theorem_case(D8, parse_subgroup(D8, "s"), D8.lookup("r^2")) == "b/not_in_H"
    assert theorem_case(S3, A3, S3.lookup("(123)")) == "c/in_H"
    assert theorem_case(S3, transposition, S3.lookup("(123)")) == "c/not_in_H"


def test_edge_formula_ids(S3, D8, A3, transposition, rotations):
    assert edge_count_formula(S3, A3, S3.lookup("(12)")).formula_id == "Obs1.1"
    assert edge_count_formula(S3, A3, S3.lookup("(12)")).value == 12
    assert edge_count_formula(S3, A3, IDENTITY).formula_id == "Thm3.1a"
    assert edge_count_formula(D8, rotations, D8.lookup("r^2")).formula_id == "Thm3.1b"
    assert edge_count_formula(D8, rotations, D8.lookup("r^2")).value == 14
    star = edge_count_formula(S3, transposition, S3.lookup("(123)"))
    assert star.formula_id == "Thm3.1c"
    assert star.value == 5
    assert star.hypotheses_met and star.is_integral


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_edge_and_degree_formulas_match_graph(data):
    G, H, g = data.draw(instances())
    graph = build_graph(G, H, g)
    assert edge_count_formula(G, H, g).value == edge_count(graph)
    for prediction in degree_table(G, H, g):
        assert prediction.value == int(graph.degrees[prediction.vertex])


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_special_formulas_hold_under_their_hypotheses(data):
    G, H, g = data.draw(instances())
    oracle = edge_count(build_graph(G, H, g))
    for prediction in special_edge_predictions(G, H, g):
        if prediction.hypotheses_met:
            assert prediction.value == oracle, prediction.formula_id


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_probabilities_sum_to_one(data):
    G, H = data.draw(group_pairs())
    assert sum(pr_g(H, G, g) for g in G.elements) == 1
    assert sum(pr_g_self(H, g) for g in G.elements) == 1
    assert all(pr_g(H, G, g) == pr_g(H, G, G.inv(g)) for g in G.elements)


def test_abelian_subgroup_corollary(S3, A3, D8, rotations):
    assert edge_count_abelian_H(S3, A3, IDENTITY).value == 6
    assert edge_count_abelian_H(D8, rotations, D8.lookup("r^2")).value == 14
    with pytest.raises(HypothesisNotMet):
        edge_count_abelian_H(S3, whole_group(S3), IDENTITY)


def test_p_case(D8, rotations, S3, transposition):
    assert edge_count_p_case(D8, rotations, IDENTITY).value == 8
    assert edge_count_p_case(D8, rotations, D8.lookup("r^2")).value == 14
    # |[H,G]| = 3 is not the smallest prime of 6 and S3 is not nilpotent
    with pytest.raises(HypothesisNotMet):
        edge_count_p_case(S3, transposition, IDENTITY)
    with pytest.raises(HypothesisNotMet):
        edge_count_p_case(D8, rotations, D8.lookup("r"))


def test_nilpotent_abelian_corollary(D8, rotations):
    prediction = edge_count_nilpotent_abelian(D8, rotations, IDENTITY)
    assert prediction.formula_id == "Cor_nilpotent_abelian"
    assert prediction.value == 8
    assert edge_count_nilpotent_abelian(D8, rotations, D8.lookup("r^2")).value == 14
    with pytest.raises(HypothesisNotMet):
        edge_count_nilpotent_abelian(D8, whole_group(D8), IDENTITY)


def test_normal_g1_readings(S3, A3):
    printed, g_classes, orbits = normal_g1_readings(S3, A3)
    assert printed.value == 0
    assert not printed.hypotheses_met
    assert g_classes.value == Fraction(9, 2)
    assert orbits.value == 6
    assert orbits.hypotheses_met
    assert g_class_count(A3) == 2
    assert edge_count_normal_g1(S3, whole_group(S3)).value == 9
    with pytest.raises(HypothesisNotMet):
        normal_g1_readings(S3, parse_subgroup(S3, "(12)"))


def test_normal_g_nontrivial(S3, A3, D8, rotations):
    assert edge_count_normal(S3, A3, S3.lookup("(123)")).value == edge_count(
        build_graph(S3, A3, S3.lookup("(123)"))
    )
    assert edge_count_normal(D8, rotations, D8.lookup("r^2")).value == 14
    assert edge_count_normal(S3, A3, IDENTITY).formula_id == "Prop_normal_g1"


def test_class_count_identity(S3, D8):
    assert class_count_edge_identity(S3).value == 9
    assert class_count_edge_identity(D8).value == 12


def test_bound_examples(D8, rotations):
    r2 = D8.lookup("r^2")
    audits = audits_by_id(audit_bounds(D8, rotations, r2))
    l1 = audits["L1"]
    assert l1.kind == "primitive"
    assert l1.lhs == l1.rhs == Fraction(3, 4)
    assert l1.holds and l1.primitive_hypothesis_met
    assert not audits["L2"].primitive_hypothesis_met
    assert "P4.1L/in_H/g2=1" in audits

    whole = audits_by_id(audit_bounds(D8, whole_group(D8), r2))
    assert whole["L2"].lhs == Fraction(3, 8)
    assert whole["L2"].rhs == Fraction(3, 16)
    assert whole["L2"].holds
    assert {"C4.5L/g2=1", "C4.5U/g2=1", "C4.6L/g2=1", "C4.6U/g2=1"} <= set(whole)


def test_bounds_need_nontrivial_g(D8, rotations):
    with pytest.raises(HypothesisNotMet):
        audit_bounds(D8, rotations, IDENTITY)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_gated_bounds_hold(data):
    G, H, g = data.draw(instances())
    if g == IDENTITY:
        return
    edges = edge_count(build_graph(G, H, g))
    assert bound_violations(audit_bounds(G, H, g, edges=edges)) == []


def test_pair_facts_are_cached(S3, A3):
    assert pair_facts(S3, A3) is pair_facts(S3, A3)
    assert pair_facts(S3, A3).z_hg == 1
    assert pair_facts(S3, A3).z_h == 3
