"""Which components (n, s) are non-empty, how many there are, and their census."""

from __future__ import annotations

import itertools
from math import comb
from typing import Iterable, Sequence

from .surface import (
    BoundaryType,
    ComponentIndex,
    SurfaceSig,
    boundary_of_signs,
    p_minus,
    p_plus,
    p_zero,
)

MAX_P = 16
MAX_SIGN_VECTORS = 2_000_000


class RangeGuardError(ValueError):
    """An enumeration request exceeds the configured combinatorial guard."""


def mw_bounds(sig: SurfaceSig, s: Sequence[int]) -> tuple[int, int]:
    """Generalized Milnor-Wood interval for the Euler class (may be empty)."""
    if len(s) != sig.p:
        raise ValueError(f"sign vector of length {len(s)} on {sig}")
    return sig.chi + p_plus(s), -sig.chi - p_minus(s)


def satisfies_mw(sig: SurfaceSig, n: int, s: Sequence[int]) -> bool:
    lo, hi = mw_bounds(sig, s)
    return lo <= n <= hi


def is_exceptional(sig: SurfaceSig, n: int, s: Sequence[int]) -> bool:
    if sig.g != 0 or p_zero(s) != 0:
        return False
    pp, pm = p_plus(s), p_minus(s)
    return (n == 0 and (pm == 1 or pp == 1)) or (n == 1 and pm == 0) or (n == -1 and pp == 0)


def is_nonempty(sig: SurfaceSig, n: int, s: Sequence[int]) -> bool:
    return satisfies_mw(sig, n, s) or is_exceptional(sig, n, s)


def violated_bound(sig: SurfaceSig, n: int, s: Sequence[int]) -> str:
    lo, hi = mw_bounds(sig, s)
    if n < lo:
        return f"n = {n} < chi + p_+ = {lo}"
    if n > hi:
        return f"n = {n} > -chi - p_- = {hi}"
    return "none"


def count_components_n(sig: SurfaceSig, n: int) -> int:
    """Number of non-empty type-preserving components with Euler class n."""
    chi, p = sig.chi, sig.p
    lo, hi = max(n + p + chi, 0), min(n - chi, p)
    total = sum(comb(p, k) for k in range(lo, hi + 1))
    if sig.g == 0:
        if n == 0:
            total += 2 * p
        elif abs(n) == 1:
            total += 1
    return total


def count_total(sig: SurfaceSig) -> int:
    chi = sig.chi
    total = sum(sum(comb(sig.p, k) for k in range(max(n + sig.p + chi, 0), min(n - chi, sig.p) + 1))
                for n in range(chi, -chi + 1))
    if sig.g == 0:
        total += 2 * sig.p + 2
    return total


BOUNDARY_FILTERS = {
    "tp": (BoundaryType.TYPE_PRESERVING,),
    "mixed": (BoundaryType.MIXED,),
    "hyp": (BoundaryType.HYPERBOLIC,),
    "all": (BoundaryType.TYPE_PRESERVING, BoundaryType.MIXED, BoundaryType.HYPERBOLIC),
}


def sign_vectors(p: int, boundary: str = "tp") -> Iterable[tuple]:
    kinds = BOUNDARY_FILTERS[boundary]
    alphabet = (-1, 1) if kinds == (BoundaryType.TYPE_PRESERVING,) else (-1, 0, 1)
    for s in itertools.product(alphabet, repeat=p):
        if boundary_of_signs(s) in kinds:
            yield s


def _guard(sig: SurfaceSig, boundary: str) -> None:
    if sig.p > MAX_P:
        raise RangeGuardError(f"p = {sig.p} exceeds the enumeration guard {MAX_P}")
    size = (2 if boundary == "tp" else 3) ** sig.p
    if size > MAX_SIGN_VECTORS:
        raise RangeGuardError(f"{size} sign vectors exceed the guard {MAX_SIGN_VECTORS}")


def candidate_ns(sig: SurfaceSig) -> range:
    # exceptional classes have |n| <= 1, inside the classical range
    return range(sig.chi, -sig.chi + 1)


def enumerate_components(sig: SurfaceSig, boundary: str = "tp") -> list[ComponentIndex]:
    """All non-empty indices, ordered by n then lexicographically by s."""
    _guard(sig, boundary)
    out = []
    signs = sorted(sign_vectors(sig.p, boundary))
    for n in candidate_ns(sig):
        for s in signs:
            if is_nonempty(sig, n, s):
                out.append(ComponentIndex(n, s, boundary_of_signs(s)))
    return out


def census(sig: SurfaceSig, boundary: str = "tp") -> dict:
    comps = enumerate_components(sig, boundary)
    per_n = []
    for n in candidate_ns(sig):
        idx = [c for c in comps if c.n == n]
        per_n.append({"n": n, "count": len(idx), "indices": [list(c.s) for c in idx]})
    return {"sig": {"g": sig.g, "p": sig.p, "chi": sig.chi}, "boundary": boundary,
            "per_n": per_n, "total": len(comps)}


def formula_census(sig: SurfaceSig) -> dict:
    per_n = [{"n": n, "count": count_components_n(sig, n)} for n in candidate_ns(sig)]
    return {"sig": {"g": sig.g, "p": sig.p, "chi": sig.chi}, "boundary": "tp",
            "per_n": per_n, "total": count_total(sig)}


def signatures_in_range(chi_min: int, chi_max: int = -1, p_max: int | None = None) -> list[SurfaceSig]:
    """All (g, p) with chi in [chi_min, chi_max], p >= 1 and p <= p_max."""
    out = []
    for g in range(0, (2 - chi_min) // 2 + 1):
        for p in range(1, 2 - 2 * g - chi_min + 1):
            chi = 2 - 2 * g - p
            if chi_min <= chi <= chi_max and (p_max is None or p <= p_max):
                out.append(SurfaceSig(g, p))
    return out
