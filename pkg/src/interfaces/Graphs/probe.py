from argparse import Namespace

from src.lib.catalog import PROBE_MAX_ORDER, build_group, parse_element, parse_subgroup
from src.lib.console import (
    print_failure,
    print_status,
    print_success,
    render_summary,
    render_table,
)
from src.lib.formulas import (
    audit_bounds,
    bound_violations,
    degree_table,
    edge_count_formula,
    pair_facts,
    pr_g,
    special_edge_predictions,
    theorem_case,
)
from src.lib.group_core import IDENTITY
from src.lib.interface import arg, interface
from src.lib.ncgraph import (
    DOMINATION_LIMIT,
    build_graph,
    classify_shape,
    domination_number,
    edge_count,
    is_triangle_free,
)
from src.lib.utils import format_rational

TARGET_ARGUMENTS = [
    arg("--group", required=True, help="Group spec such as S3, D4xC2 or file:<path>"),
    arg("--subgroup", required=True, help="Comma list of generators, or 'all' for H = G"),
    arg("--g", required=True, help="Element g by label or id"),
]


@interface(
    "probe",
    help="Compare the graph for one (G, H, g) against every applicable formula.",
    arguments=TARGET_ARGUMENTS,
)
def probe(args: Namespace) -> int:
    """
    Print the degree table, the edge counts, the shape and the bound audit.

    Returns 1 when a formula whose hypotheses hold disagrees with the graph.
    """
    G = build_group(args.group, max_order=PROBE_MAX_ORDER)
    H = parse_subgroup(G, args.subgroup)
    g = parse_element(G, args.g)
    facts = pair_facts(G, H)

    print_status(
        f"G = {G.name} (order {G.order}), |H| = {H.order}, g = {G.label(g)}"
    )
    graph = build_graph(G, H, g)
    oracle = edge_count(graph)
    shape = classify_shape(graph)
    failed = False

    predictions = degree_table(G, H, g)
    wrong = [p.value != int(graph.degrees[p.vertex]) for p in predictions]
    render_table(
        "Degrees",
        ["vertex", "in H", "case", "oracle", "formula"],
        [
            (
                G.label(p.vertex),
                "yes" if p.vertex in H else "",
                p.case_tag.value,
                int(graph.degrees[p.vertex]),
                p.value,
            )
            for p in predictions
        ],
        highlight=wrong,
    )
    failed |= any(wrong)

    edge_predictions = [edge_count_formula(G, H, g)] + special_edge_predictions(G, H, g)
    rows, marks = [], []
    for prediction in edge_predictions:
        matches = prediction.value == oracle
        rows.append(
            (
                prediction.formula_id,
                format_rational(prediction.value),
                oracle,
                "yes" if prediction.hypotheses_met else "no",
                "yes" if matches else "no",
            )
        )
        marks.append(prediction.hypotheses_met and not matches)
    render_table(
        "Edge counts",
        ["formula", "predicted", "oracle", "hypotheses", "match"],
        rows,
        highlight=marks,
    )
    failed |= any(marks)

    domination = (
        domination_number(graph) if G.order <= DOMINATION_LIMIT else "skipped"
    )
    render_summary(
        "Graph",
        [
            ("case", theorem_case(G, H, g)),
            ("g in K(H,G)", g in facts.K),
            ("|Z(H,G)|", facts.z_hg),
            ("Pr_g(H,G)", format_rational(pr_g(H, G, g))),
            ("edges", oracle),
            ("shape", str(shape)),
            ("triangle-free", is_triangle_free(graph)),
            ("domination number", domination),
        ],
    )

    if g != IDENTITY:
        audits = audit_bounds(G, H, g, edges=oracle)
        violated = bound_violations(audits)
        render_table(
            "Bound audit",
            ["bound", "kind", "lhs", "op", "rhs", "holds", "hypothesis"],
            [
                (
                    a.bound_id,
                    a.kind,
                    format_rational(a.lhs),
                    a.direction,
                    format_rational(a.rhs),
                    a.holds,
                    a.primitive_hypothesis_met,
                )
                for a in audits
            ],
            highlight=[a in violated for a in audits],
        )
        failed |= bool(violated)

    if failed:
        print_failure("Some predictions disagree with the graph")
        return 1
    print_success("All applicable formulas agree with the graph")
    return 0
