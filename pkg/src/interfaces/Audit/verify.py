from argparse import Namespace

from src.lib.console import (
    print_failure,
    print_status,
    print_success,
    render_summary,
    render_table,
)
from src.lib.interface import arg, interface
from src.lib.report import write_report
from src.lib.sweep import THEOREM_CASES, SweepConfig, SweepResult, run_sweep

VIOLATION_ROWS_SHOWN = 50


@interface(
    "verify",
    help="Sweep every catalog group, subgroup and g and check all formulas.",
    arguments=[
        arg("--max-order", type=int, default=16, help="Largest group order swept"),
        arg("--jobs", type=int, default=1, help="Worker processes"),
        arg("--report", default=None, help="Destination of the JSON report"),
        arg("--csv", default=None, help="Destination of the CSV summary"),
        arg(
            "--family",
            action="append",
            default=None,
            help="Group spec to sweep instead of the default catalog (repeatable)",
        ),
        arg(
            "--skip-g-not-in-K",
            action="store_true",
            help="Only sweep g inside K(H,G)",
        ),
        arg("--quiet", action="store_true", help="Hide the progress bar"),
    ],
)
def verify(args: Namespace) -> int:
    """Run the sweep, write the reports and exit 0 iff nothing was violated."""
    config = SweepConfig(
        max_order=args.max_order,
        families=args.family,
        include_g_not_in_K=not args.skip_g_not_in_K,
        jobs=args.jobs,
        progress=not args.quiet,
    )
    print_status(
        f"Sweeping {len(config.resolved_families())} groups up to order {config.max_order}..."
    )
    result = run_sweep(config)

    if args.report is not None:
        stats = write_report(result.records, args.report, args.csv)
        for path in stats.written:
            print_status(f"Wrote [yellow]{path}[/yellow]")

    _render_result(result)

    if result.ok:
        print_success(f"No violations in {len(result.records)} instances")
        return 0
    print_failure(f"{len(result.violations)} violations in {len(result.records)} instances")
    return 1


def _render_result(result: SweepResult) -> None:
    render_summary(
        "Sweep",
        [
            ("instances", len(result.records)),
            ("violations", len(result.violations)),
            ("trees", len(result.trees)),
            ("conjugation isomorphisms", result.conjugations),
            ("uncovered cases", ", ".join(result.missing_cases()) or "none"),
        ],
    )
    render_table(
        "Theorem case coverage",
        ["case", "instances"],
        [(case, result.theorem_cases[case]) for case in THEOREM_CASES],
        highlight=[result.theorem_cases[case] == 0 for case in THEOREM_CASES],
    )
    render_table(
        "Degree case coverage",
        ["case", "vertices"],
        sorted(result.degree_cases.items()),
    )
    if result.trees:
        render_table("Tree census", ["instance"], [(key,) for key in result.trees])
    if result.primitives:
        render_table(
            "Primitive inequality census",
            ["primitive", "evaluated", "raw failures", "gated failures"],
            [
                (name, t["evaluated"], t["raw_failures"], t["gated_failures"])
                for name, t in result.primitives.items()
            ],
        )
    if result.violations:
        shown = result.violations[:VIOLATION_ROWS_SHOWN]
        title = "Violations"
        if len(result.violations) > len(shown):
            title += f" (first {len(shown)} of {len(result.violations)})"
        render_table(
            title,
            ["instance", "check", "detail"],
            [(v.key, v.check, v.detail) for v in shown],
        )
