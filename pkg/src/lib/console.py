"""
Rich rendering helpers shared by the CLI commands: status lines, tables in
panels and the key/value summaries the commands print.
"""

from typing import Iterable, List, Optional, Sequence

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from src.lib.utils import console as shared_console


class TableRenderer:
    """Handles rendering of result tables inside panels."""

    def __init__(self, console: Console):
        self.console = console

    def render_table(
        self,
        title: str,
        columns: Sequence[str],
        rows: Iterable[Sequence[object]],
        highlight: Optional[List[bool]] = None,
    ) -> None:
        """Render rows under the given columns; highlighted rows are shown in red."""
        table = Table(show_header=True, header_style="bold cyan")
        for column in columns:
            table.add_column(column)
        for i, row in enumerate(rows):
            style = "red" if highlight is not None and highlight[i] else None
            table.add_row(*(str(cell) for cell in row), style=style)
        self.console.print(Panel(table, title=title, expand=False))

    def render_summary(self, title: str, items: Sequence[tuple]) -> None:
        """Render 'key: value' lines in a panel."""
        lines = [f"[bright_black]{key}:[/bright_black] {value}" for key, value in items]
        self.console.print(Panel("\n".join(lines), title=title, expand=False))


def print_status(message: str) -> None:
    shared_console.print(f"[bright_black]{message}[/bright_black]")


def print_success(message: str) -> None:
    shared_console.print(f"[green]{message}[/green]")


def print_failure(message: str) -> None:
    shared_console.print(f"[red]{message}[/red]")


def print_error(message: str) -> None:
    shared_console.print(f"[bold red]Error:[/bold red] {message}")


def render_table(title: str, columns: Sequence[str], rows, highlight=None) -> None:
    """Convenience function for rendering one table on the shared console."""
    TableRenderer(shared_console).render_table(title, columns, rows, highlight)


def render_summary(title: str, items: Sequence[tuple]) -> None:
    TableRenderer(shared_console).render_summary(title, items)
