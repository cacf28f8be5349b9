"""Cached constructions shared by the verifier, the torsor table and the CLI."""
from __future__ import annotations

from functools import lru_cache

from .algebra import default_seed
from .hopf import QTStructure, appendix_R, drinfeld_double, nichols
from .repcat import braided_context


@lru_cache(maxsize=None)
def nichols_pair(n: int):
    return nichols(n)


@lru_cache(maxsize=None)
def double_pair(n: int):
    H, ru = nichols_pair(n)
    return drinfeld_double(H, ru)


@lru_cache(maxsize=None)
def center_context(n: int, seed: int | None = None):
    D, qt = double_pair(n)
    return braided_context(D, qt, default_seed() if seed is None else seed, name=f"Rep(D(H({n})))")


@lru_cache(maxsize=None)
def appendix_pair():
    H, _ = nichols_pair(2)
    return H, QTStructure(H, appendix_R(H), name="appendix")


@lru_cache(maxsize=None)
def appendix_context(seed: int | None = None):
    H, R = appendix_pair()
    return braided_context(H, R, default_seed() if seed is None else seed, name="Rep(H(2), R)")


@lru_cache(maxsize=None)
def symmetric_context(n: int, seed: int | None = None):
    H, ru = nichols_pair(n)
    return braided_context(H, ru, default_seed() if seed is None else seed, name=f"Rep(H({n}), R_u)")
