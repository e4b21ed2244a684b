"""
Exhaustive oracle sweep over catalog groups, subgroups and elements g.

Every admissible (G, H, g) instance gets one AuditRecord comparing the built
graph against the closed forms. Anything that disagrees with a statement whose
hypotheses hold is collected as a Violation under the instance key; nothing is
dropped.
"""

from collections import Counter
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.lib.catalog import all_subgroups, build_group, default_families
from src.lib.formulas import (
    BoundAudit,
    audit_bounds,
    degree_table,
    edge_count_formula,
    pair_facts,
    pr_g,
    pr_g_closed_form,
    special_edge_predictions,
    theorem_case,
)
from src.lib.group_core import (
    IDENTITY,
    MAX_ORDER,
    ElementId,
    FiniteGroup,
    Subgroup,
    centralizer,
    commutator_subgroup,
    conjugacy_classes,
    conjugating_witness,
    conjugating_witnesses,
)
from src.lib.isoclinism import conjugate_g_graph_iso
from src.lib.ncgraph import (
    DOMINATION_LIMIT,
    RelGraph,
    ShapeKind,
    build_graph,
    classify_shape,
    domination_number,
    edge_count,
    is_connected,
    is_triangle_free,
)
from src.lib.utils import ProgressTracker, ToolkitError, ValidationError, format_rational

CONJUGATION_CHECK_LIMIT = 12

THEOREM_CASES = ("GNotInK", "a", "b/in_H", "b/not_in_H", "c/in_H", "c/not_in_H")


class ShapeModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: str
    params: Dict[str, int] = Field(default_factory=dict)


class BoundAuditModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    bound_id: str
    lhs: str
    rhs: str
    direction: str
    holds: bool
    primitive_hypothesis_met: bool
    kind: str = "bound"

    @property
    def status(self) -> str:
        """pass / fail / na, where na means a primitive behind the bound failed."""
        if not self.primitive_hypothesis_met:
            return "na"
        return "pass" if self.holds else "fail"

    @classmethod
    def of(cls, audit: BoundAudit) -> "BoundAuditModel":
        return cls(
            bound_id=audit.bound_id,
            lhs=format_rational(audit.lhs),
            rhs=format_rational(audit.rhs),
            direction=audit.direction,
            holds=audit.holds,
            primitive_hypothesis_met=audit.primitive_hypothesis_met,
            kind=audit.kind,
        )


class SpecialFormulaCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    formula_id: str
    predicted: str
    matches_oracle: bool
    hypotheses_met: bool


class AuditRecord(BaseModel):
    """One (G, H, g) instance with oracle values next to every prediction."""

    model_config = ConfigDict(frozen=True)

    group_spec: str
    group_order: int
    subgroup_members: List[int]
    h_order: int
    g_label: str
    g_in_K: bool
    standing_assumptions_met: bool
    edges_oracle: int
    edges_formula: Optional[int]
    degree_mismatch_count: int
    shape: ShapeModel
    triangle_free: bool
    domination: Optional[int]
    bound_audits: List[BoundAuditModel]
    special_formula_checks: List[SpecialFormulaCheck]

    @property
    def key(self) -> str:
        return instance_key(self.group_spec, self.subgroup_members, self.g_label)


@dataclass(frozen=True)
class Violation:
    key: str
    check: str
    detail: str


@dataclass
class SweepConfig:
    """Which groups to sweep and how."""

    max_order: int = 16
    families: Optional[List[str]] = None
    include_g_not_in_K: bool = True
    jobs: int = 1
    progress: bool = True

    def __post_init__(self):
        if not 1 <= self.max_order <= MAX_ORDER:
            raise ValidationError(f"max_order must lie in [1, {MAX_ORDER}], got {self.max_order}")
        if self.jobs < 1:
            raise ValidationError(f"jobs must be at least 1, got {self.jobs}")

    def resolved_families(self) -> List[str]:
        if self.families is None:
            return default_families(self.max_order)
        return list(self.families)


@dataclass
class SubgroupAudit:
    """Everything one (G, H) job produces."""

    spec: str
    members: List[int]
    records: List[AuditRecord] = field(default_factory=list)
    violations: List[Violation] = field(default_factory=list)
    theorem_cases: Counter = field(default_factory=Counter)
    degree_cases: Counter = field(default_factory=Counter)
    trees: List[str] = field(default_factory=list)
    primitives: Dict[str, Counter] = field(default_factory=dict)
    conjugations: int = 0


@dataclass
class SweepResult:
    records: List[AuditRecord]
    violations: List[Violation]
    theorem_cases: Counter
    degree_cases: Counter
    trees: List[str]
    primitives: Dict[str, Counter]
    conjugations: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def missing_cases(self) -> List[str]:
        return [case for case in THEOREM_CASES if self.theorem_cases[case] == 0]


def instance_key(spec: str, members: List[int], g_label: str) -> str:
    return f"{spec}|H={{{','.join(str(m) for m in members)}}}|g={g_label}"


@lru_cache(maxsize=None)
def _subgroups_of(spec: str) -> Tuple[FiniteGroup, Tuple[Subgroup, ...]]:
    G = build_group(spec, max_order=MAX_ORDER)
    return G, tuple(all_subgroups(G))


def swept_elements(G: FiniteGroup) -> List[ElementId]:
    """One element per unordered pair {g, g^-1}: the smaller id."""
    return [g for g in G.elements if g <= G.inv(g)]


def _contract_checks(
    G: FiniteGroup, H: Subgroup, g: ElementId, graph: RelGraph, shape, domination, standing: bool
) -> List[Tuple[str, str]]:
    """Graph-theoretic statements that must hold on this instance."""
    n, h = G.order, H.order
    degrees = graph.degrees
    failures: List[Tuple[str, str]] = []
    facts = pair_facts(G, H)

    def expect(name: str, condition: bool, detail: str = "") -> None:
        if not condition:
            failures.append((name, detail))

    center = [x for x in H if all(G.mul(x, y) == G.mul(y, x) for y in G.elements)]
    for z in center:
        want = 0 if g == IDENTITY else n - 1
        expect("center_vertex_degree", int(degrees[z]) == want, f"deg({G.label(z)}) = {int(degrees[z])}")

    if g == IDENTITY:
        if n > 1:
            expect("g1_disconnected", not is_connected(graph))
        if domination is not None and n > facts.z_hg:
            expect("g1_domination", domination >= facts.z_hg + 1, f"domination {domination}")
        return failures

    if domination is not None:
        expect("domination_one", domination == 1, f"domination {domination}")
    if any(G.element_order(x) == 3 for x in H):
        expect("order3_triangle", not is_triangle_free(graph))
    if g in H and G.element_order(g) % 2 == 0:
        expect("even_g_dominates", int(degrees[g]) == n - 1, f"deg(g) = {int(degrees[g])}")

    if not standing:
        return failures
    is_star = shape.kind == ShapeKind.STAR
    expect("star_iff_s3", is_star == (n == 6 and h == 2), f"shape {shape}")
    expect("never_complete", shape.kind != ShapeKind.COMPLETE)
    if shape.is_tree:
        expect("tree_needs_h2", h == 2, f"|H| = {h}")
        expect("odd_order_no_tree", n % 2 == 0, f"|G| = {n}")
    if shape.kind == ShapeKind.LOLLIPOP:
        expect("lollipop_needs_h23", h in (2, 3), f"|H| = {h}")
    if h not in (2, 3, 6):
        expect("no_degree_one", int((degrees == 1).sum()) == 0, f"|H| = {h}")
    return failures


def _pair_checks(G: FiniteGroup, H: Subgroup, key: str) -> List[Violation]:
    """Checks that depend on (G, H) only."""
    facts = pair_facts(G, H)
    found: List[Violation] = []
    total = Fraction(0)
    for g in G.elements:
        value = pr_g(H, G, g)
        total += value
        if value != pr_g(H, G, G.inv(g)):
            found.append(Violation(key, "pr_symmetry", f"g = {G.label(g)}"))
        if facts.prime_commutator and value != pr_g_closed_form(H, G, g):
            found.append(Violation(key, "pr_closed_form", f"g = {G.label(g)}"))
    if total != 1:
        found.append(Violation(key, "pr_total", f"sum = {total}"))

    K = facts.K
    if any(G.inv(c) not in K for c in K):
        found.append(Violation(key, "K_inverse_closed", ""))
    if not K.issubset(commutator_subgroup(H, G).members):
        found.append(Violation(key, "K_in_commutator_subgroup", ""))

    return found


def conjugate_pairs(G: FiniteGroup) -> List[Tuple[ElementId, ElementId, ElementId]]:
    """Every ordered pair (g, t) of distinct conjugates with one x such that x^-1 g x = t."""
    pairs = []
    for cls in conjugacy_classes(G):
        for g in cls:
            for t in cls:
                if g != t:
                    pairs.append((g, t, conjugating_witness(G, g, t, G.elements)))
    return pairs


def _conjugation_checks(G: FiniteGroup, H: Subgroup, key: str, out: SubgroupAudit) -> None:
    for g, t, x in conjugate_pairs(G):
        out.conjugations += 1
        witnesses = conjugating_witnesses(G, g, t, G.elements)
        if len(witnesses) != len(centralizer(G, g)):
            out.violations.append(
                Violation(key, "witness_coset", f"{G.label(g)} -> {G.label(t)}: {len(witnesses)} witnesses")
            )
        try:
            conjugate_g_graph_iso(G, H, g, x)
        except ToolkitError as err:
            out.violations.append(Violation(key, "conjugate_g_iso", str(err)))


def _audit_instance(spec: str, G: FiniteGroup, H: Subgroup, g: ElementId, out: SubgroupAudit) -> None:
    facts = pair_facts(G, H)
    members = list(H.members.members)
    key = instance_key(spec, members, G.label(g))
    in_k = g in facts.K
    standing = (not G.is_abelian) and H.order != facts.z_hg and in_k

    graph = build_graph(G, H, g)
    oracle = edge_count(graph)
    predicted = edge_count_formula(G, H, g)
    edges_formula = int(predicted.value) if predicted.value.denominator == 1 else None
    if edges_formula != oracle:
        out.violations.append(Violation(key, "edge_formula", f"{format_rational(predicted.value)} != {oracle}"))

    mismatches = 0
    for pred in degree_table(G, H, g):
        out.degree_cases[pred.case_tag.value] += 1
        if pred.value != int(graph.degrees[pred.vertex]):
            mismatches += 1
    if mismatches:
        out.violations.append(Violation(key, "degree_formula", f"{mismatches} vertices"))
    out.theorem_cases[theorem_case(G, H, g)] += 1

    shape = classify_shape(graph)
    if shape.is_tree:
        out.trees.append(key)
    domination = domination_number(graph) if G.order <= DOMINATION_LIMIT else None

    for name, detail in _contract_checks(G, H, g, graph, shape, domination, standing):
        out.violations.append(Violation(key, name, detail))

    audits: List[BoundAudit] = []
    if g != IDENTITY:
        audits = audit_bounds(G, H, g, edges=oracle)
        for audit in audits:
            if audit.kind == "primitive":
                tally = out.primitives.setdefault(audit.bound_id, Counter())
                tally["evaluated"] += 1
                if not audit.holds:
                    tally["raw_failures"] += 1
                    if audit.primitive_hypothesis_met:
                        tally["gated_failures"] += 1
            elif audit.primitive_hypothesis_met and not audit.holds:
                out.violations.append(Violation(key, "bound", audit.bound_id))

    checks = []
    for prediction in special_edge_predictions(G, H, g):
        matches = prediction.value == oracle
        if prediction.hypotheses_met and not matches:
            out.violations.append(Violation(key, prediction.formula_id, format_rational(prediction.value)))
        checks.append(
            SpecialFormulaCheck(
                formula_id=prediction.formula_id,
                predicted=format_rational(prediction.value),
                matches_oracle=matches,
                hypotheses_met=prediction.hypotheses_met,
            )
        )

    out.records.append(
        AuditRecord(
            group_spec=spec,
            group_order=G.order,
            subgroup_members=members,
            h_order=H.order,
            g_label=G.label(g),
            g_in_K=in_k,
            standing_assumptions_met=standing,
            edges_oracle=oracle,
            edges_formula=edges_formula,
            degree_mismatch_count=mismatches,
            shape=ShapeModel(kind=shape.kind.value, params=dict(shape.params)),
            triangle_free=is_triangle_free(graph),
            domination=domination,
            bound_audits=[BoundAuditModel.of(a) for a in audits],
            special_formula_checks=checks,
        )
    )


def audit_subgroup(spec: str, index: int, include_g_not_in_K: bool) -> SubgroupAudit:
    """Audit every swept g for the index-th subgroup of the group named by spec."""
    G, subgroups = _subgroups_of(spec)
    H = subgroups[index]
    members = list(H.members.members)
    out = SubgroupAudit(spec=spec, members=members)
    pair_key = instance_key(spec, members, "*")
    facts = pair_facts(G, H)

    try:
        out.violations.extend(_pair_checks(G, H, pair_key))
        if H.is_normal and G.order <= CONJUGATION_CHECK_LIMIT:
            _conjugation_checks(G, H, pair_key, out)
    except (ToolkitError, AssertionError) as err:
        out.violations.append(Violation(pair_key, "exception", repr(err)))

    standing_h = H.order != facts.z_hg
    for g in swept_elements(G):
        in_k = g in facts.K
        if not (include_g_not_in_K or (standing_h and in_k)):
            continue
        try:
            _audit_instance(spec, G, H, g, out)
        except (ToolkitError, AssertionError) as err:
            key = instance_key(spec, members, G.label(g))
            out.violations.append(Violation(key, "exception", repr(err)))
    return out


def _merge(parts: List[SubgroupAudit]) -> SweepResult:
    parts = sorted(parts, key=lambda p: (p.spec, p.members))
    theorem_cases, degree_cases = Counter(), Counter()
    conjugations = 0
    primitives: Dict[str, Counter] = {}
    records, violations, trees = [], [], []
    for part in parts:
        records.extend(part.records)
        violations.extend(part.violations)
        trees.extend(part.trees)
        conjugations += part.conjugations
        theorem_cases.update(part.theorem_cases)
        degree_cases.update(part.degree_cases)
        for name, tally in part.primitives.items():
            primitives.setdefault(name, Counter()).update(tally)
    return SweepResult(
        records=records,
        violations=violations,
        theorem_cases=theorem_cases,
        degree_cases=degree_cases,
        trees=trees,
        primitives=dict(sorted(primitives.items())),
        conjugations=conjugations,
    )


def run_sweep(config: SweepConfig) -> SweepResult:
    """
    Run the audit over every (group, subgroup) job described by config.

    Args:
        config: Sweep configuration

    Returns:
        Records in (group spec, subgroup members, g id) order together with all
        violations, case coverage counters, the tree census and the primitive
        inequality census
    """
    tracker = ProgressTracker(config.progress)
    jobs: List[Tuple[str, int]] = []
    for spec in config.resolved_families():
        G, subgroups = _subgroups_of(spec)
        if G.order > config.max_order:
            continue
        jobs.extend((spec, i) for i in range(len(subgroups)))

    parts: List[SubgroupAudit] = []
    if config.jobs == 1:
        for spec, index in tracker.track(jobs, len(jobs), "Auditing subgroups"):
            parts.append(audit_subgroup(spec, index, config.include_g_not_in_K))
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            futures = [
                pool.submit(audit_subgroup, spec, index, config.include_g_not_in_K)
                for spec, index in jobs
            ]
            for future in tracker.track(as_completed(futures), len(futures), "Auditing subgroups"):
                parts.append(future.result())
    return _merge(parts)
