"""Hirzebruch-Jung continued fractions of cyclic quotient singularities.

A type ``(r, a)`` stands for the singularity ``1/r(1, a)``.  Its expansion
``r/a = d_1 - 1/(d_2 - 1/(...))`` has every digit ``>= 2``; the digits are the
negated self-intersections of the exceptional chain of the minimal
resolution.  The smooth point is the type ``(1, 0)`` with an empty expansion.
"""

from __future__ import annotations

from math import gcd
from typing import NamedTuple, Sequence


class SingularityType(NamedTuple):
    r: int
    a: int

    def validate(self) -> "SingularityType":
        r, a = self
        if r < 1:
            raise ValueError(f"order must be positive, got r={r}")
        if r == 1:
            if a != 0:
                raise ValueError("the smooth type is (1, 0)")
        elif not (0 < a < r) or gcd(a, r) != 1:
            raise ValueError(f"invalid type ({r}, {a}): need 0 < a < r and gcd(a, r) = 1")
        return self

    @property
    def smooth(self) -> bool:
        return self.r == 1

    @property
    def gorenstein(self) -> bool:
        return self.r == 1 or self.a == self.r - 1

    def __str__(self) -> str:
        return f"1/{self.r}(1,{self.a})"


def as_type(t) -> SingularityType:
    """Coerce a pair to a validated :class:`SingularityType`."""
    return SingularityType(int(t[0]), int(t[1])).validate()


def hj_expand(t) -> list[int]:
    """Digits ``[d_1, ..., d_m]`` of ``r/a``; empty for the smooth type."""
    r, a = as_type(t)
    ds = []
    while a:
        d = -(-r // a)
        ds.append(d)
        r, a = a, d * a - r
    return ds


def tridet(ds: Sequence[int]) -> int:
    """Continuant: determinant of the tridiagonal matrix with diagonal ``ds``
    and ``-1`` off the diagonal.  ``tridet([]) == 1``."""
    prev, cur = 0, 1  # tridet of (d_{k+2}..) and (d_{k+1}..), from the tail
    for d in reversed(ds):
        prev, cur = cur, d * cur - prev
    return cur


def hj_eval(ds: Sequence[int]) -> SingularityType:
    """Inverse of :func:`hj_expand`."""
    ds = list(ds)
    if any(d < 2 for d in ds):
        raise ValueError(f"digits must be >= 2: {ds}")
    if not ds:
        return SingularityType(1, 0)
    return SingularityType(tridet(ds), tridet(ds[1:]))


def dual_fraction(t) -> list[int]:
    """Digits ``[c_1, ..., c_l]`` of ``r/(r-a)``."""
    r, a = as_type(t)
    if r == 1:
        raise ValueError("the smooth point has no dual fraction")
    return hj_expand((r, r - a))


def inverse_type(t) -> SingularityType:
    """``(r, a')`` with ``a a' = 1 mod r``: the same point seen from the other end of the chain."""
    r, a = as_type(t)
    if r == 1:
        raise ValueError("inverse type is undefined for the smooth point")
    return SingularityType(r, pow(a, -1, r))
