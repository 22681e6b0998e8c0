"""Independent re-verification of negative verdicts."""

from math import gcd
from typing import Any

from permpoly.fieldcore import FieldSpec
from permpoly.permtest.base import resolve_field
from permpoly.permtest.hermite import count_roots
from permpoly.permtest.wanlidl import WanLidlInstance, unity_images
from permpoly.polyring import SparsePoly, coeff_top, eval_poly, poly_pow_mod
from permpoly.schemas import PermVerdict


def _verify_collision(w: dict[str, Any], p: SparsePoly, spec: FieldSpec) -> bool:
    x1, x2, image = spec.parse(w["x1"]), spec.parse(w["x2"]), spec.parse(w["image"])
    return x1 != x2 and eval_poly(p, x1) == image == eval_poly(p, x2)


def _verify_top_coefficient(w: dict[str, Any], p: SparsePoly, spec: FieldSpec) -> bool:
    # Square-and-multiply, independent of the incremental powers that found it
    top = coeff_top(poly_pow_mod(p, int(w["k"]), strategy="square"))
    return top != 0 and top == spec.parse(w["coefficient"])


def _verify_condition(w: dict[str, Any], inst: WanLidlInstance, spec: FieldSpec) -> bool:
    m = inst.index
    tag = w["condition"]
    if tag == "a":
        return gcd(inst.r, m) != 1
    if tag == "b":
        (i,) = w["indices"]
        return eval_poly(inst.f, spec.pow(spec.gamma, i * m)) == 0
    i1, i2 = w["indices"]

    def value(i: int) -> int:
        x = spec.pow(spec.gamma, i)
        g_x = spec.mul(spec.pow(x, inst.r), eval_poly(inst.f, spec.pow(x, m)))
        return spec.pow(g_x, m)

    return i1 != i2 and value(i1) == value(i2)


def verify_witness(
    verdict: PermVerdict,
    poly: SparsePoly | None,
    spec: FieldSpec | None = None,
    instance: WanLidlInstance | None = None,
) -> bool:
    """Re-check a verdict's witness by direct evaluation.

    Positive verdicts carry nothing to check and verify trivially.

    Args:
        verdict: Verdict to check
        poly: Polynomial the verdict is about (needed for collision and Hermite witnesses)
        spec: Field (defaults to the polynomial's or instance's)
        instance: Cyclotomic instance (needed for Wan-Lidl and roots-of-unity witnesses)

    Returns:
        Whether the witness reproduces the failure
    """
    if verdict.is_pp:
        return True
    w = verdict.witness
    if w is None:
        return False

    kind = w.get("kind")
    if kind in ("condition", "unity-zero", "unity-collision"):
        if instance is None:
            return False
        spec = spec or instance.field
        if kind == "condition":
            return _verify_condition(w, instance, spec)
        values = unity_images(instance, spec)
        if kind == "unity-zero":
            return values[int(w["index"])] == 0
        i1, i2 = w["indices"]
        return i1 != i2 and values[i1] == values[i2]

    if poly is None:
        return False
    spec = resolve_field(poly, spec)
    if kind == "collision":
        return _verify_collision(w, poly, spec)
    if kind == "root-count":
        roots = count_roots(poly)
        return roots != 1 and roots == int(w["roots"])
    if kind == "top-coefficient":
        return _verify_top_coefficient(w, poly, spec)
    return False
