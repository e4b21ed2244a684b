from argparse import Namespace
from typing import Tuple

from src.lib.catalog import (
    PROBE_MAX_ORDER,
    ParseError,
    build_group,
    parse_element,
    parse_subgroup,
)
from src.lib.console import (
    print_failure,
    print_status,
    print_success,
    render_summary,
    render_table,
)
from src.lib.group_core import Subgroup
from src.lib.interface import arg, interface
from src.lib.isoclinism import (
    commutators_of,
    find_relative_isoclinism,
    isoclinism_graph_iso,
)
from src.lib.ncgraph import edge_count


def parse_pair(text: str) -> Subgroup:
    """'<spec>:<gens>' split at the last colon, so file: specs keep their path."""
    spec, sep, gens = text.rpartition(":")
    if not sep or not spec:
        raise ParseError(f"expected <spec>:<generators>, got '{text}'")
    G = build_group(spec, max_order=PROBE_MAX_ORDER)
    return parse_subgroup(G, gens)


def _describe(H: Subgroup) -> Tuple[str, str]:
    return H.parent.name, "{" + ", ".join(H.labels()) + "}"


@interface(
    "isoclinism",
    help="Search for a relative isoclinism between two pairs and map their graphs.",
    arguments=[
        arg("--pair1", required=True, help="First pair as <spec>:<generators>"),
        arg("--pair2", required=True, help="Second pair as <spec>:<generators>"),
        arg("--g", default=None, help="Element of [H1,G1] whose graph is mapped"),
    ],
)
def isoclinism(args: Namespace) -> int:
    H1 = parse_pair(args.pair1)
    H2 = parse_pair(args.pair2)
    G1, G2 = H1.parent, H2.parent
    print_status(
        "Searching witness for ({1} in {0}) and ({3} in {2})".format(
            *_describe(H1), *_describe(H2)
        )
    )

    witness = find_relative_isoclinism(H1, H2)
    if witness is None:
        print_failure("The pairs are not relative isoclinic")
        return 0

    print_success("Relative isoclinism found and verified")
    render_table(
        "phi on G1/Z(H1,G1)",
        ["coset rep", "image rep"],
        [(G1.label(a), G2.label(b)) for a, b in witness.phi.items()],
    )
    render_table(
        "psi on [H1,G1]",
        ["element", "image"],
        [(G1.label(a), G2.label(b)) for a, b in witness.psi.items()],
    )

    if args.g is None:
        choices = ", ".join(G1.label(c) for c in commutators_of(H1))
        print_status(f"Pass --g with one of [yellow]{choices}[/yellow] to map a graph")
        return 0

    g = parse_element(G1, args.g)
    vertex_map = isoclinism_graph_iso(witness, g)
    render_table(
        "theta on Z(H1,G1)",
        ["element", "image"],
        [(G1.label(a), G2.label(b)) for a, b in vertex_map.theta.items()],
    )
    render_table(
        "Vertex map",
        ["vertex", "image"],
        [(G1.label(a), G2.label(b)) for a, b in sorted(vertex_map.mapping.items())],
    )
    render_summary(
        "Graph isomorphism",
        [
            ("g", G1.label(g)),
            ("psi(g)", G2.label(witness.psi[g])),
            ("edges", edge_count(vertex_map.source)),
            ("verified", True),
        ],
    )
    return 0
