"""Formal Hodge-structure bookkeeping: dimension tables, Tate twists.

A pure Hodge structure is recorded only through its Hodge numbers h^{p,q};
a mixed one through the Hodge numbers of its weight graded pieces.  This is
all the downstream dimension identities need.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping


@dataclass(frozen=True)
class PureHS:
    """Pure Hodge structure of one weight, as a table (p,q) -> dimension."""

    weight: int
    hodge_numbers: tuple[tuple[tuple[int, int], int], ...] = ()

    def __init__(self, weight: int, hodge_numbers: Mapping[tuple[int, int], int] = ()):
        items = dict(hodge_numbers)
        for (p, q), d in items.items():
            if p + q != weight:
                raise ValueError(f"(p,q)=({p},{q}) has p+q != weight {weight}")
            if d < 0:
                raise ValueError("negative Hodge number")
        cleaned = tuple(sorted((pq, d) for pq, d in items.items() if d != 0))
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "hodge_numbers", cleaned)

    def h(self, p: int, q: int) -> int:
        return dict(self.hodge_numbers).get((p, q), 0)

    @property
    def dim(self) -> int:
        return sum(d for _, d in self.hodge_numbers)

    def is_zero(self) -> bool:
        return self.dim == 0

    def __add__(self, other: "PureHS") -> "PureHS":
        """Direct sum (weights must agree)."""
        if self.weight != other.weight:
            raise ValueError("direct sum of different weights")
        table = dict(self.hodge_numbers)
        for pq, d in other.hodge_numbers:
            table[pq] = table.get(pq, 0) + d
        return PureHS(self.weight, table)

    def to_dict(self) -> dict:
        return {
            "weight": self.weight,
            "h": {f"{p},{q}": d for (p, q), d in self.hodge_numbers},
        }

    @staticmethod
    def from_dict(data: dict) -> "PureHS":
        table = {}
        for key, d in data.get("h", {}).items():
            p, q = (int(x) for x in key.split(","))
            table[(p, q)] = d
        return PureHS(data["weight"], table)


def tate_twist(h: PureHS, m: int) -> PureHS:
    """(-m)-th Tate twist: weight += 2m, each (p,q) -> (p+m, q+m)."""
    return PureHS(
        h.weight + 2 * m,
        {(p + m, q + m): d for (p, q), d in h.hodge_numbers},
    )


def is_effective(h: PureHS) -> bool:
    """True iff only indices with p >= 0 and q >= 0 carry dimension."""
    return all(p >= 0 and q >= 0 for (p, q), _ in h.hodge_numbers)


def f_graded_dim(h: PureHS, p: int) -> int:
    """Dimension of the p-th Hodge filtration step: sum of h^{p',q} for p' >= p."""
    return sum(d for (pp, _), d in h.hodge_numbers if pp >= p)


@dataclass(frozen=True)
class MixedHSTable:
    """Weight-graded Hodge data of one cohomology degree."""

    degree: int
    graded: tuple[PureHS, ...] = ()

    def __init__(self, degree: int, graded: Iterable[PureHS] = ()):
        pieces = tuple(sorted(graded, key=lambda h: h.weight))
        weights = [h.weight for h in pieces]
        if len(set(weights)) != len(weights):
            raise ValueError("duplicate weight in graded pieces")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "graded", pieces)

    def piece(self, weight: int) -> PureHS:
        for h in self.graded:
            if h.weight == weight:
                return h
        return PureHS(weight)

    def graded_dim(self, weight: int) -> int:
        return self.piece(weight).dim

    @property
    def total_dim(self) -> int:
        return sum(h.dim for h in self.graded)

    def weights_in_range(self, n: int) -> bool:
        """Weight support allowed for H^k of an n-fold: [k, min(2k, 2n)]."""
        k = self.degree
        return all(
            k <= h.weight <= min(2 * k, 2 * n) for h in self.graded if not h.is_zero()
        )

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "graded": [h.to_dict() for h in self.graded if not h.is_zero()],
        }

    @staticmethod
    def from_dict(data: dict) -> "MixedHSTable":
        return MixedHSTable(
            data["degree"], [PureHS.from_dict(h) for h in data.get("graded", [])]
        )
