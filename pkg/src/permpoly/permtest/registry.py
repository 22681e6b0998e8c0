"""Tester registry for pluggable permutation testers."""

from typing import TYPE_CHECKING, Any

import structlog

if TYPE_CHECKING:
    from permpoly.permtest.base import Tester

logger = structlog.get_logger()

_registry: dict[str, type["Tester"]] = {}


def register_tester(tester_class: type["Tester"]) -> type["Tester"]:
    """Register a tester class. Can be used as decorator."""
    _registry[tester_class.name] = tester_class
    return tester_class


def get_tester(name: str) -> type["Tester"]:
    """Get a tester class by name."""
    if name not in _registry:
        available = ", ".join(_registry.keys())
        raise ValueError(f"Unknown tester: {name}. Available: {available}")
    return _registry[name]


def list_testers() -> list[str]:
    """List all registered tester names."""
    return list(_registry.keys())


def instantiate_tester(method: str, **options: Any) -> "Tester":
    """Instantiate a tester with the options it was given.

    Options left as None are dropped so every tester sees only what was set.

    Args:
        method: Registered tester name
        **options: Constructor keyword arguments

    Returns:
        Tester instance ready for checking

    Raises:
        ValueError: If the tester is unknown or rejects an option
    """
    tester_class = get_tester(method)
    kwargs = {key: value for key, value in options.items() if value is not None}
    try:
        return tester_class(**kwargs)
    except TypeError as e:
        logger.warning("Tester rejected options", tester=method, provided_options=list(kwargs), error=str(e))
        raise ValueError(f"Tester {method} does not accept options: {', '.join(kwargs)}") from e


def _register_defaults() -> None:
    """Import tester modules to trigger @register_tester decorators."""
    from permpoly.permtest import brute as _brute  # noqa: F401
    from permpoly.permtest import hermite as _hermite  # noqa: F401
    from permpoly.permtest import wanlidl as _wanlidl  # noqa: F401

    # Mark as used to satisfy pyright
    _ = (_brute, _hermite, _wanlidl)


_register_defaults()
