"""Shared plumbing for the toolkit: console, error hierarchy, file output and progress.

This module provides the pieces every other module leans on: one rich console,
the base exception types, validated text-file writing and tqdm progress bars.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, List, TypeVar, Union

from rich.console import Console
from tqdm import tqdm

PathLike = Union[str, Path]
T = TypeVar("T")

console = Console()


class ToolkitError(Exception):
    """Base exception for every failure raised by the toolkit."""

    pass


class FileError(ToolkitError):
    """Exception raised when reading or writing an artifact fails."""

    pass


class ValidationError(ToolkitError):
    """Exception raised when input validation fails."""

    pass


class TooLarge(ToolkitError):
    """Exception raised when an input exceeds a desk-scale size guard."""

    pass


class HypothesisNotMet(ToolkitError):
    """Exception raised when a formula is asked for outside its hypotheses."""

    pass


class VerificationFailed(ToolkitError):
    """Exception raised when a constructed witness does not verify."""

    pass


@dataclass
class WriteStats:
    """Statistics for the files written by one command."""

    total_files: int = 0
    total_bytes: int = 0
    written: List[Path] = field(default_factory=list)


class PathValidator:
    """Utility class for validating file system paths."""

    @staticmethod
    def validate_path_type(path: PathLike, name: str) -> None:
        """Validate that a path is of the correct type."""
        if not isinstance(path, (str, Path)):
            raise ValidationError(f"{name} must be either str or Path object")

    @staticmethod
    def validate_source_exists(path: Path) -> None:
        """Validate that a source path exists."""
        if not path.exists():
            raise FileError(f"Source {path} does not exist")

    @staticmethod
    def validate_is_file(path: Path) -> None:
        """Validate that a path is a file."""
        if not path.is_file():
            raise FileError(f"Path {path} is not a file")


class ProgressTracker:
    """Handles progress tracking for long-running loops."""

    def __init__(self, enabled: bool = True):
        self.enabled = enabled

    def create_progress_bar(self, total: int, description: str) -> tqdm:
        """Create a progress bar counting discrete work items."""
        return tqdm(
            total=total,
            desc=description,
            unit="item",
            unit_scale=False,
            disable=not self.enabled,
            leave=False,
        )

    def track(self, items: Iterable[T], total: int, description: str) -> Iterator[T]:
        """Yield from items while advancing a progress bar."""
        with self.create_progress_bar(total, description) as pbar:
            for item in items:
                yield item
                pbar.update(1)


class TextFileWriter:
    """Writes text artifacts with validation and uniform error wrapping."""

    def __init__(self):
        self.validator = PathValidator()
        self.stats = WriteStats()

    def write_text(self, destination: PathLike, content: str) -> Path:
        """Write content to destination, creating parent directories.

        Args:
            destination: Target file path
            content: Text to write (written as UTF-8 with LF newlines)

        Returns:
            The resolved destination path

        Raises:
            FileError: If the write fails
        """
        self.validator.validate_path_type(destination, "destination")
        dest_path = Path(destination)
        try:
            dest_path.parent.mkdir(parents=True, exist_ok=True)
            with open(dest_path, "w", encoding="utf-8", newline="\n") as f:
                f.write(content)
        except OSError as e:
            raise FileError(f"Failed to write {dest_path}: {str(e)}") from e

        self.stats.total_files += 1
        self.stats.total_bytes += len(content.encode("utf-8"))
        self.stats.written.append(dest_path)
        return dest_path

    def read_text(self, source: PathLike) -> str:
        """Read a UTF-8 text file.

        Raises:
            FileError: If the file is missing or unreadable
        """
        self.validator.validate_path_type(source, "source")
        source_path = Path(source)
        self.validator.validate_source_exists(source_path)
        self.validator.validate_is_file(source_path)
        try:
            return source_path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise FileError(f"Failed to read {source_path}: {str(e)}") from e


def safe_write_text(destination: PathLike, content: str) -> Path:
    """Convenience function for writing one text artifact."""
    return TextFileWriter().write_text(destination, content)


def safe_read_text(source: PathLike) -> str:
    """Convenience function for reading one text artifact."""
    return TextFileWriter().read_text(source)


def format_rational(value) -> str:
    """Render an exact rational as 'n' or 'n/d'."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
