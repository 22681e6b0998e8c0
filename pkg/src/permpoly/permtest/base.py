"""Base classes for permutation testers."""

from abc import ABC, abstractmethod

from permpoly.errors import FieldMismatchError
from permpoly.fieldcore import FieldSpec
from permpoly.polyring import SparsePoly
from permpoly.schemas import PermVerdict


def resolve_field(p: SparsePoly, spec: FieldSpec | None) -> FieldSpec:
    """Return the field a tester runs over, rejecting a spec that disagrees with p's."""
    if spec is not None and spec != p.field:
        raise FieldMismatchError(f"Polynomial over F_2^{p.field.n} tested over F_2^{spec.n}")
    return p.field


class Tester(ABC):
    """Base class for all permutation testers."""

    name: str = "base"
    description: str = "Base tester"

    @abstractmethod
    def check(self, poly: SparsePoly | None, spec: FieldSpec) -> PermVerdict:
        """Decide whether poly permutes spec.

        Args:
            poly: Polynomial to test; cyclotomic testers may build it from their options
            spec: Field the polynomial lives over

        Returns:
            PermVerdict with the method name and a witness for negatives
        """
