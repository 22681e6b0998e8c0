"""Hermite-Dickson criterion.

f permutes F_q iff it has exactly one root and, for every 1 <= k <= q-2, f^k reduced
modulo x^q - x has no x^(q-1) term. Every k is checked by default; skipping even k is
valid in characteristic 2 and kept behind a flag for comparison runs.
"""

import numpy as np

from permpoly.errors import ResourceGuardError
from permpoly.fieldcore import FieldSpec
from permpoly.permtest.base import Tester, resolve_field
from permpoly.permtest.registry import register_tester
from permpoly.polyring import SparsePoly, canonicalize, eval_many, iter_powers
from permpoly.schemas import Method, PermVerdict
from permpoly.settings import get_settings


def count_roots(p: SparsePoly) -> int:
    """Number of x in F_q with p(x) = 0."""
    xs = np.arange(p.field.q, dtype=np.int64)
    return int(np.count_nonzero(eval_many(p, xs) == 0))


def is_pp_hermite(p: SparsePoly, spec: FieldSpec | None = None, skip_char_multiples: bool = False) -> PermVerdict:
    """Apply the Hermite-Dickson criterion.

    Args:
        p: Polynomial to test
        spec: Field (defaults to p's field)
        skip_char_multiples: Skip even k (f^{2k} is the Frobenius image of f^k)

    Returns:
        PermVerdict; negatives carry a root-count or top-coefficient witness

    Raises:
        ResourceGuardError: If q exceeds 2^hermite_max_degree
    """
    spec = resolve_field(p, spec)
    limit = get_settings().hermite_max_degree
    if spec.n > limit:
        raise ResourceGuardError(f"Hermite-Dickson refused for q = 2^{spec.n} > 2^{limit}")

    p = canonicalize(p)
    roots = count_roots(p)
    if roots != 1:
        return PermVerdict(is_pp=False, method=Method.HERMITE, witness={"kind": "root-count", "roots": roots})

    q = spec.q
    for k, dense in iter_powers(p, q - 2):
        if skip_char_multiples and k % 2 == 0:
            continue
        top = int(dense[q - 1])
        if top:
            witness = {"kind": "top-coefficient", "k": k, "coefficient": spec.format(top)}
            return PermVerdict(is_pp=False, method=Method.HERMITE, witness=witness)

    return PermVerdict(is_pp=True, method=Method.HERMITE)


@register_tester
class HermiteTester(Tester):
    """Hermite-Dickson criterion by incremental powering."""

    name = "hermite"
    description = "One root and no x^(q-1) term in any f^k, 1 <= k <= q-2"

    def __init__(self, skip_char_multiples: bool = False) -> None:
        """Initialize Hermite-Dickson tester.

        Args:
            skip_char_multiples: Skip even exponents
        """
        self.skip_char_multiples = skip_char_multiples

    def check(self, poly: SparsePoly | None, spec: FieldSpec) -> PermVerdict:
        """Run the criterion."""
        if poly is None:
            raise ValueError("hermite needs a polynomial")
        return is_pp_hermite(poly, spec, skip_char_multiples=self.skip_char_multiples)
