"""
relgraph command-line entry point.

Scans src/interfaces for functions marked with @interface and exposes each as
an argparse sub-command. Exit codes: 0 on success, 1 when a check or
verification fails, 2 for usage and input errors.
"""

import argparse
import importlib
import inspect
import os
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, TypedDict

# Constants
MAIN_DIR = Path(os.path.dirname(os.path.abspath(__file__)))
INTERFACES_BASE_PATH = MAIN_DIR / "src" / "interfaces"

# Add main directory to Python path
sys.path.insert(0, str(MAIN_DIR))

from src.lib.catalog import ParseError  # noqa: E402
from src.lib.console import print_error  # noqa: E402
from src.lib.utils import ToolkitError, ValidationError  # noqa: E402


# Type definitions
class InterfaceFunction(TypedDict):
    name: str
    function: Callable
    module: str


def scan_for_interface_functions(module_name: str) -> List[InterfaceFunction]:
    """
    Scan a module for interface functions with specific attributes.

    Args:
        module_name: The name of the module to scan

    Returns:
        List of dictionaries containing interface function information
    """
    module = importlib.import_module(module_name)
    all_functions = inspect.getmembers(module, inspect.isfunction)

    return [
        {"name": func._NAME, "function": func, "module": module_name}
        for _, func in all_functions
        if getattr(func, "_IS_INTERFACE", False) and hasattr(func, "_NAME")
    ]


def scan_directory(base_path: Path) -> Dict[str, List[InterfaceFunction]]:
    """
    Recursively scan a directory for Python files containing interface functions.

    Args:
        base_path: The base directory path to scan

    Returns:
        Dictionary mapping area folders to lists of interface functions
    """
    tree: Dict[str, List[InterfaceFunction]] = {}

    for item in sorted(base_path.rglob("*.py")):
        relative_path = item.relative_to(base_path)
        module_name = ".".join(
            ("src", "interfaces") + relative_path.with_suffix("").parts
        )

        interface_funcs = scan_for_interface_functions(module_name)
        if interface_funcs:
            folder_path = str(relative_path.parent).replace("\\", "/")
            folder_path = "" if folder_path == "." else folder_path
            tree.setdefault(folder_path, []).extend(interface_funcs)

    return tree


def build_parser(tree: Dict[str, List[InterfaceFunction]]) -> argparse.ArgumentParser:
    """One sub-command per interface function, arguments taken from the decorator."""
    parser = argparse.ArgumentParser(
        prog="relgraph",
        description="Relative g-noncommuting graphs of small finite groups.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    for folder in sorted(tree):
        for entry in sorted(tree[folder], key=lambda e: e["name"]):
            func = entry["function"]
            sub = subparsers.add_parser(
                func._NAME, help=func._HELP, description=func._HELP
            )
            for flags, kwargs in func._ARGUMENTS:
                sub.add_argument(*flags, **kwargs)
            sub.set_defaults(handler=func)

    return parser


def cli(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run the selected command and map failures to exit codes."""
    parser = build_parser(scan_directory(INTERFACES_BASE_PATH))
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2

    try:
        code = args.handler(args)
    except (ParseError, ValidationError) as e:
        print_error(str(e))
        return 2
    except ToolkitError as e:
        print_error(str(e))
        return 1
    return int(code or 0)


def main() -> None:
    """Main execution function."""
    sys.exit(cli())


if __name__ == "__main__":
    main()
