"""Suite registry for the verify command."""

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from permpoly.harness.base import Suite

_registry: dict[str, type["Suite"]] = {}


def register_suite(suite_class: type["Suite"]) -> type["Suite"]:
    """Register a suite class. Can be used as decorator."""
    _registry[suite_class.name] = suite_class
    return suite_class


def get_suite(name: str) -> type["Suite"]:
    """Get a suite class by name."""
    if name not in _registry:
        available = ", ".join(_registry.keys())
        raise ValueError(f"Unknown suite: {name}. Available: {available}")
    return _registry[name]


def list_suites() -> list[str]:
    """List all registered suite names."""
    return list(_registry.keys())


def _register_defaults() -> None:
    """Import suite modules to trigger @register_suite decorators."""
    from permpoly.harness import coeffs as _coeffs  # noqa: F401
    from permpoly.harness import fieldaxioms as _fieldaxioms  # noqa: F401
    from permpoly.harness import lucas_grid as _lucas_grid  # noqa: F401
    from permpoly.harness import membership as _membership  # noqa: F401
    from permpoly.harness import permtesters as _permtesters  # noqa: F401
    from permpoly.harness import reduction as _reduction  # noqa: F401
    from permpoly.harness import trith as _trith  # noqa: F401

    # Mark as used to satisfy pyright
    _ = (_coeffs, _fieldaxioms, _lucas_grid, _membership, _permtesters, _reduction, _trith)


_register_defaults()
