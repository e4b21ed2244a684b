from functools import wraps
from typing import Any, Callable, Dict, Sequence, Tuple

ArgumentSpec = Tuple[Tuple[str, ...], Dict[str, Any]]


def arg(*flags: str, **kwargs: Any) -> ArgumentSpec:
    """Declare one argparse argument for an interface function."""
    return flags, kwargs


def interface(
    name: str,
    help: str = "",
    arguments: Sequence[ArgumentSpec] = (),
    activate: bool = True,
) -> Callable:
    """Decorator to mark, name and describe the arguments of a CLI command."""

    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            return func(*args, **kwargs)

        if activate:
            wrapper._NAME = name
            wrapper._HELP = help
            wrapper._ARGUMENTS = tuple(arguments)
            wrapper._IS_INTERFACE = True
        return wrapper

    return decorator
