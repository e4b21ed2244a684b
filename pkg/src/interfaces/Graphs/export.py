from argparse import Namespace
from typing import List

from pydantic import BaseModel, ConfigDict

from src.interfaces.Graphs.probe import TARGET_ARGUMENTS
from src.lib.catalog import PROBE_MAX_ORDER, build_group, parse_element, parse_subgroup
from src.lib.console import print_success
from src.lib.interface import arg, interface
from src.lib.ncgraph import build_graph, dot_text, graph_payload
from src.lib.utils import TextFileWriter


class GraphExport(BaseModel):
    """JSON form of one graph: labels by id, H and g, sorted edge list."""

    model_config = ConfigDict(frozen=True)

    group: str
    order: int
    labels: List[str]
    h_members: List[int]
    g: str
    edges: List[List[int]]
    edge_count: int
    shape: str


@interface(
    "build",
    help="Export the graph for one (G, H, g) as DOT and optionally JSON.",
    arguments=TARGET_ARGUMENTS
    + [
        arg("--dot", required=True, help="Destination of the DOT file"),
        arg("--json", default=None, help="Optional destination of a JSON description"),
    ],
)
def build(args: Namespace) -> int:
    G = build_group(args.group, max_order=PROBE_MAX_ORDER)
    H = parse_subgroup(G, args.subgroup)
    g = parse_element(G, args.g)
    graph = build_graph(G, H, g)

    writer = TextFileWriter()
    writer.write_text(args.dot, dot_text(graph))
    if args.json is not None:
        export = GraphExport(**graph_payload(graph))
        writer.write_text(args.json, export.model_dump_json(indent=2) + "\n")

    for path in writer.stats.written:
        print_success(f"Wrote [yellow]{path}[/yellow]")
    return 0
