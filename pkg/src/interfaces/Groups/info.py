from argparse import Namespace

from src.lib.catalog import PROBE_MAX_ORDER, all_subgroups, build_group, format_cayley_text
from src.lib.console import print_status, render_summary, render_table
from src.lib.group_core import MAX_ORDER, center, conjugacy_classes, is_nilpotent
from src.lib.interface import arg, interface
from src.lib.utils import safe_write_text


@interface(
    "info",
    help="Order, center, conjugacy classes and subgroup count of a group.",
    arguments=[
        arg("--group", required=True, help="Group spec such as S3, D4xC2 or file:<path>"),
        arg("--table", default=None, help="Also write the Cayley table to this file"),
    ],
)
def group_info(args: Namespace) -> int:
    G = build_group(args.group, max_order=PROBE_MAX_ORDER)
    Z = center(G)
    classes = conjugacy_classes(G)

    # subgroup enumeration stays inside the sweep's order range
    subgroups = str(len(all_subgroups(G))) if G.order <= MAX_ORDER else "skipped"

    render_summary(
        f"[yellow]{G.name}[/yellow]",
        [
            ("order", G.order),
            ("abelian", G.is_abelian),
            ("nilpotent", is_nilpotent(G)),
            ("center size", len(Z)),
            ("center", ", ".join(G.label(z) for z in Z)),
            ("conjugacy classes", len(classes)),
            ("subgroups", subgroups),
        ],
    )
    render_table(
        "Conjugacy classes",
        ["size", "elements"],
        [(len(c), ", ".join(G.label(x) for x in c)) for c in classes],
    )

    if args.table is not None:
        path = safe_write_text(args.table, format_cayley_text(G))
        print_status(f"Wrote [yellow]{path}[/yellow]")
    return 0
