"""Permpoly - permutation binomials and trinomials over binary fields."""

__version__ = "0.1.0"
