import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import group_pairs

from src.lib.catalog import build_group, parse_subgroup
from src.lib.group_core import IDENTITY, commutator_subgroup, whole_group
from src.lib.isoclinism import (
    CenterSizeMismatch,
    CentralQuotient,
    HNotNormal,
    IsoclinismWitness,
    center_bijection,
    commutators_of,
    conjugate_g_graph_iso,
    find_relative_isoclinism,
    isoclinism_graph_iso,
    verify_witness,
)
from src.lib.ncgraph import edge_count
from src.lib.utils import HypothesisNotMet, TooLarge


def identity_witness(H):
    quotient = CentralQuotient(H)
    return IsoclinismWitness(
        H1=H,
        H2=H,
        phi={r: r for r in quotient.reps},
        psi={c: c for c in commutator_subgroup(H, H.parent).members},
        transversal1=quotient.reps,
        transversal2=quotient.reps,
    )


def test_central_quotient_of_d8(D8):
    quotient = CentralQuotient(whole_group(D8))
    assert quotient.reps == (0, 1, 4, 5)
    assert quotient.group.order == 4
    assert quotient.group.is_abelian
    assert quotient.coset_index(D8.lookup("r^3")) == quotient.coset_index(D8.lookup("r"))
    assert len(quotient.h_part) == 4


def test_d8_and_q8_are_isoclinic(D8, Q8):
    witness = find_relative_isoclinism(whole_group(D8), whole_group(Q8))
    assert witness is not None
    assert verify_witness(witness)
    assert witness.psi == {IDENTITY: IDENTITY, D8.lookup("r^2"): Q8.lookup("-1")}

    vertex_map = isoclinism_graph_iso(witness, D8.lookup("r^2"))
    assert vertex_map.target.g_elem == Q8.lookup("-1")
    assert edge_count(vertex_map.source) == edge_count(vertex_map.target) == 16
    assert vertex_map.theta == {IDENTITY: IDENTITY, D8.lookup("r^2"): Q8.lookup("-1")}


def test_relative_pairs_in_d8_and_q8(D8, Q8, rotations):
    witness = find_relative_isoclinism(rotations, parse_subgroup(Q8, "i"))
    assert witness is not None
    vertex_map = isoclinism_graph_iso(witness, D8.lookup("r^2"))
    assert edge_count(vertex_map.target) == 14


def test_s3_and_c6_are_not_isoclinic(S3):
    C6 = build_group("C6")
    assert find_relative_isoclinism(whole_group(S3), whole_group(C6)) is None


def test_g_outside_commutator_subgroup(D8, Q8):
    witness = find_relative_isoclinism(whole_group(D8), whole_group(Q8))
    with pytest.raises(HypothesisNotMet):
        isoclinism_graph_iso(witness, D8.lookup("r"))


def test_center_sizes_must_agree(D8):
    C2xD4 = build_group("C2xD4")
    witness = find_relative_isoclinism(whole_group(D8), whole_group(C2xD4))
    assert witness is not None
    with pytest.raises(CenterSizeMismatch):
        center_bijection(witness)
    with pytest.raises(CenterSizeMismatch):
        isoclinism_graph_iso(witness, D8.lookup("r^2"))


def test_size_guard():
    D9 = build_group("D9")
    with pytest.raises(TooLarge):
        find_relative_isoclinism(whole_group(D9), whole_group(D9))


def test_tampered_witness_fails_verification(D8, Q8):
    witness = find_relative_isoclinism(whole_group(D8), whole_group(Q8))
    tampered = IsoclinismWitness(
        H1=witness.H1,
        H2=witness.H2,
        phi=witness.phi,
        psi={c: IDENTITY for c in witness.psi},
        transversal1=witness.transversal1,
        transversal2=witness.transversal2,
    )
    assert not verify_witness(tampered)


def test_conjugate_g_graphs(S3, A3, transposition):
    c123 = S3.lookup("(123)")
    vertex_map = conjugate_g_graph_iso(S3, A3, c123, S3.lookup("(12)"))
    assert vertex_map.target.g_elem == S3.lookup("(132)")
    with pytest.raises(HNotNormal):
        conjugate_g_graph_iso(S3, transposition, c123, S3.lookup("(13)"))


def test_commutators_of(D8, rotations):
    assert commutators_of(rotations) == [IDENTITY, D8.lookup("r^2")]


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_every_pair_is_isoclinic_to_itself(data):
    G, H = data.draw(group_pairs())
    assert verify_witness(identity_witness(H))
    witness = find_relative_isoclinism(H, H)
    assert witness is not None
    for g in commutators_of(H):
        vertex_map = isoclinism_graph_iso(witness, g)
        assert edge_count(vertex_map.source) == edge_count(vertex_map.target)
