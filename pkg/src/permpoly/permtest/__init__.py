"""Pluggable permutation testers for permpoly."""

from permpoly.permtest.base import Tester
from permpoly.permtest.brute import is_pp_brute
from permpoly.permtest.hermite import count_roots, is_pp_hermite
from permpoly.permtest.registry import get_tester, instantiate_tester, list_testers, register_tester
from permpoly.permtest.wanlidl import (
    WanLidlInstance,
    conditions_b_and_c,
    cyclotomic_poly,
    is_pp_monomial,
    roots_of_unity_check,
    unity_images,
    wan_lidl,
)
from permpoly.permtest.witness import verify_witness

__all__ = [
    "Tester",
    "WanLidlInstance",
    "conditions_b_and_c",
    "count_roots",
    "cyclotomic_poly",
    "get_tester",
    "instantiate_tester",
    "is_pp_brute",
    "is_pp_hermite",
    "is_pp_monomial",
    "list_testers",
    "register_tester",
    "roots_of_unity_check",
    "unity_images",
    "verify_witness",
    "wan_lidl",
]
