"""
Relative isoclinism witnesses and the graph isomorphisms they induce.

A witness is a pair (phi, psi): phi an isomorphism of the central quotients
G1/Z(H1,G1) -> G2/Z(H2,G2) carrying H1/Z(H1,G1) onto H2/Z(H2,G2), psi an
isomorphism [H1,G1] -> [H2,G2] with psi([h, g]) = [h', g'] whenever h', g'
lie in the phi-images of the cosets of h and g.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src.lib.group_core import (
    IDENTITY,
    ElementId,
    FiniteGroup,
    Subgroup,
    commutator,
    commutator_set,
    commutator_subgroup,
    from_cayley_table,
    generated_subgroup,
    relative_center,
)
from src.lib.ncgraph import RelGraph, build_graph, is_isomorphism
from src.lib.utils import HypothesisNotMet, ToolkitError, TooLarge, VerificationFailed

ISOCLINISM_LIMIT = 16


class HNotNormal(ToolkitError):
    """Exception raised when a construction needs a normal subgroup."""

    pass


class CenterSizeMismatch(ToolkitError):
    """Exception raised when the relative centers of two pairs differ in size."""

    pass


class CentralQuotient:
    """G / Z(H, G) materialized on the smallest-id representative of each coset."""

    def __init__(self, H: Subgroup):
        self.H = H
        self.G = H.parent
        self.center = relative_center(H, self.G)
        G = self.G

        rep_of: Dict[ElementId, ElementId] = {}
        for x in G.elements:
            if x in rep_of:
                continue
            coset = [G.mul(x, z) for z in self.center]
            rep = min(coset)
            for y in coset:
                rep_of[y] = rep
        self.rep_of = rep_of
        self.reps: Tuple[ElementId, ...] = tuple(sorted(set(rep_of.values())))
        self.index = {rep: i for i, rep in enumerate(self.reps)}

        table = [
            [self.index[rep_of[G.mul(a, b)]] for b in self.reps] for a in self.reps
        ]
        self.group = from_cayley_table(
            table,
            labels=[f"{G.label(r)}Z" for r in self.reps],
            name=f"{G.name}/Z(H,G)",
            normalize=False,
            max_order=G.order,
        )

    def coset_index(self, x: ElementId) -> int:
        return self.index[self.rep_of[x]]

    @cached_property
    def h_part(self) -> frozenset:
        """Quotient ids of H / Z(H, G)."""
        return frozenset(self.coset_index(x) for x in self.H)


@dataclass(frozen=True, eq=False)
class IsoclinismWitness:
    """phi on coset representatives and psi on [H1, G1], both as id tables."""

    H1: Subgroup
    H2: Subgroup
    phi: Dict[ElementId, ElementId]
    psi: Dict[ElementId, ElementId]
    transversal1: Tuple[ElementId, ...]
    transversal2: Tuple[ElementId, ...]

    @property
    def G1(self) -> FiniteGroup:
        return self.H1.parent

    @property
    def G2(self) -> FiniteGroup:
        return self.H2.parent


@dataclass(frozen=True)
class VertexMap:
    """A verified graph isomorphism between two relative graphs."""

    source: RelGraph
    target: RelGraph
    mapping: Dict[ElementId, ElementId]
    theta: Optional[Dict[ElementId, ElementId]] = None


def _quotient_generators(Q: FiniteGroup) -> List[ElementId]:
    gens: List[ElementId] = []
    reached = {IDENTITY}
    for x in Q.elements:
        if x not in reached:
            gens.append(x)
            reached = set(generated_subgroup(Q, gens).members)
    return gens


def _extend_on_generators(
    Q1: FiniteGroup, Q2: FiniteGroup, gens: Sequence[ElementId], images: Sequence[ElementId]
) -> Optional[Dict[ElementId, ElementId]]:
    """The homomorphism fixed by gens -> images, or None if it is not a bijection."""
    mapping = {IDENTITY: IDENTITY}
    queue = deque([IDENTITY])
    while queue:
        a = queue.popleft()
        for s, t in zip(gens, images):
            x, y = Q1.mul(a, s), Q2.mul(mapping[a], t)
            if x in mapping:
                if mapping[x] != y:
                    return None
            else:
                mapping[x] = y
                queue.append(x)
    if len(mapping) != Q1.order or len(set(mapping.values())) != Q2.order:
        return None
    return mapping


def _quotient_isomorphisms(
    left: CentralQuotient, right: CentralQuotient
) -> Iterator[Dict[ElementId, ElementId]]:
    """Isomorphisms of the quotients that carry the H-part onto the H-part."""
    Q1, Q2 = left.group, right.group
    if Q1.order != Q2.order or len(left.h_part) != len(right.h_part):
        return
    gens = _quotient_generators(Q1)
    options = [
        [y for y in Q2.elements if Q2.element_order(y) == Q1.element_order(s)]
        for s in gens
    ]

    def assign(depth: int, chosen: List[ElementId]) -> Iterator[Dict[ElementId, ElementId]]:
        if depth == len(gens):
            mapping = _extend_on_generators(Q1, Q2, gens, chosen)
            if mapping is not None and {mapping[c] for c in left.h_part} == right.h_part:
                yield mapping
            return
        for y in options[depth]:
            yield from assign(depth + 1, chosen + [y])

    yield from assign(0, [])


def _derive_psi(
    left: CentralQuotient, right: CentralQuotient, phi_q: Dict[ElementId, ElementId]
) -> Optional[Dict[ElementId, ElementId]]:
    """psi forced by phi on commutators, extended multiplicatively to [H1, G1]."""
    G1, G2 = left.G, right.G
    lift = {r: right.reps[phi_q[left.index[r]]] for r in left.reps}

    forced: Dict[ElementId, ElementId] = {IDENTITY: IDENTITY}
    h_reps = sorted({left.rep_of[h] for h in left.H})
    for h in h_reps:
        for g in left.reps:
            c = commutator(G1, h, g)
            d = commutator(G2, lift[h], lift[g])
            if forced.setdefault(c, d) != d:
                return None

    gens = sorted(forced)
    psi = {IDENTITY: IDENTITY}
    queue = deque([IDENTITY])
    while queue:
        a = queue.popleft()
        for s in gens:
            x, y = G1.mul(a, s), G2.mul(psi[a], forced[s])
            if x in psi:
                if psi[x] != y:
                    return None
            else:
                psi[x] = y
                queue.append(x)

    target = commutator_subgroup(right.H, G2).members
    if sorted(psi.values()) != list(target.members) or len(set(psi.values())) != len(psi):
        return None
    return dict(sorted(psi.items()))


def find_relative_isoclinism(H1: Subgroup, H2: Subgroup) -> Optional[IsoclinismWitness]:
    """
    Search for a relative isoclinism between (H1, G1) and (H2, G2).

    Quotient isomorphisms are enumerated by backtracking over generator images
    in id order; for each one, psi is read off the commutator square and
    accepted only if it extends to an isomorphism of the commutator subgroups.
    The first witness found is returned.

    Args:
        H1: Subgroup of the first group
        H2: Subgroup of the second group

    Returns:
        A verified witness, or None when the pairs are not relative isoclinic

    Raises:
        TooLarge: If either group has more than ISOCLINISM_LIMIT elements
    """
    G1, G2 = H1.parent, H2.parent
    if max(G1.order, G2.order) > ISOCLINISM_LIMIT:
        raise TooLarge(f"isoclinism search limited to groups of order {ISOCLINISM_LIMIT}")
    if commutator_subgroup(H1, G1).order != commutator_subgroup(H2, G2).order:
        return None

    left, right = CentralQuotient(H1), CentralQuotient(H2)
    for phi_q in _quotient_isomorphisms(left, right):
        psi = _derive_psi(left, right, phi_q)
        if psi is None:
            continue
        witness = IsoclinismWitness(
            H1=H1,
            H2=H2,
            phi={left.reps[a]: right.reps[b] for a, b in sorted(phi_q.items())},
            psi=psi,
            transversal1=left.reps,
            transversal2=right.reps,
        )
        if not verify_witness(witness):
            raise VerificationFailed("constructed isoclinism witness does not verify")
        return witness
    return None


def verify_witness(witness: IsoclinismWitness) -> bool:
    """Re-check every defining property of a witness from the group tables."""
    G1, G2 = witness.G1, witness.G2
    left, right = CentralQuotient(witness.H1), CentralQuotient(witness.H2)
    phi, psi = witness.phi, witness.psi

    if sorted(phi) != list(left.reps) or sorted(phi.values()) != list(right.reps):
        return False
    for a in left.reps:
        for b in left.reps:
            product = phi[left.rep_of[G1.mul(a, b)]]
            if product != right.rep_of[G2.mul(phi[a], phi[b])]:
                return False
    if {right.coset_index(phi[left.rep_of[h]]) for h in witness.H1} != right.h_part:
        return False

    source = commutator_subgroup(witness.H1, G1).members
    target = commutator_subgroup(witness.H2, G2).members
    if sorted(psi) != list(source.members) or sorted(psi.values()) != list(target.members):
        return False
    for a in source:
        for b in source:
            if psi[G1.mul(a, b)] != G2.mul(psi[a], psi[b]):
                return False

    for h in witness.H1:
        for g in G1.elements:
            image = commutator(G2, phi[left.rep_of[h]], phi[left.rep_of[g]])
            if psi[commutator(G1, h, g)] != image:
                return False
    return True


def conjugate_g_graph_iso(
    G: FiniteGroup, H: Subgroup, g: ElementId, x: ElementId
) -> VertexMap:
    """
    The map a -> x^-1 a x from the graph for g to the graph for x^-1 g x.

    Raises:
        HNotNormal: If H is not normal in G
        VerificationFailed: If the map does not preserve adjacency
    """
    if not H.is_normal:
        raise HNotNormal(f"H = {{{', '.join(H.labels())}}} is not normal in {G.name}")
    source = build_graph(G, H, g)
    target = build_graph(G, H, G.conjugate(g, x))
    mapping = {a: G.conjugate(a, x) for a in G.elements}
    if not is_isomorphism(source, target, mapping):
        raise VerificationFailed(
            f"conjugation by {G.label(x)} is not an isomorphism for g = {G.label(g)}"
        )
    return VertexMap(source, target, mapping)


def center_bijection(witness: IsoclinismWitness) -> Dict[ElementId, ElementId]:
    """theta: the sorted-id order map between the two relative centers."""
    z1 = relative_center(witness.H1, witness.G1)
    z2 = relative_center(witness.H2, witness.G2)
    if len(z1) != len(z2):
        raise CenterSizeMismatch(
            f"|Z(H1,G1)| = {len(z1)} but |Z(H2,G2)| = {len(z2)}"
        )
    return dict(zip(z1.members, z2.members))


def induced_vertex_map(
    witness: IsoclinismWitness, theta: Dict[ElementId, ElementId]
) -> Dict[ElementId, ElementId]:
    """mu(t z) = phi(t) theta(z) for a transversal element t and z in Z(H1,G1)."""
    G1, G2 = witness.G1, witness.G2
    left = CentralQuotient(witness.H1)
    mu = {}
    for x in G1.elements:
        t = left.rep_of[x]
        z = G1.mul(G1.inv(t), x)
        mu[x] = G2.mul(witness.phi[t], theta[z])
    return mu


def isoclinism_graph_iso(witness: IsoclinismWitness, g: ElementId) -> VertexMap:
    """
    The isomorphism from the graph for (H1, G1, g) to the one for (H2, G2, psi(g)).

    Raises:
        CenterSizeMismatch: If the relative centers differ in size
        HypothesisNotMet: If g is outside [H1, G1]
        VerificationFailed: If the induced map does not preserve adjacency
    """
    theta = center_bijection(witness)
    if g not in witness.psi:
        raise HypothesisNotMet(f"g = {witness.G1.label(g)} is not in [H1,G1]")
    mu = induced_vertex_map(witness, theta)
    source = build_graph(witness.G1, witness.H1, g)
    target = build_graph(witness.G2, witness.H2, witness.psi[g])
    if not is_isomorphism(source, target, mu):
        raise VerificationFailed(
            f"induced map is not an isomorphism for g = {witness.G1.label(g)}"
        )
    return VertexMap(source, target, mu, theta)


def commutators_of(H: Subgroup) -> List[ElementId]:
    """Elements of K(H, G) in id order, the natural choices of g for a witness."""
    return list(commutator_set(H, H.parent).members)
