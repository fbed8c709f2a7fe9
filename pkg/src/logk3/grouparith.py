"""Finite cyclic model for choosing a marked torsion point.

The group is ``Z/N``; ``G`` is the subgroup generated by the listed residues.
We look for ``p`` with ``a p = target`` and ``m p`` outside ``G`` for every
``m >= 1`` with ``m^2 |G| < a``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "FiniteGroupModel",
    "MarkedPoint",
    "find_marked_point",
    "verify_marked_point",
    "exhaustive_marked_point",
    "constrained_multiples",
]


@dataclass(frozen=True)
class FiniteGroupModel:
    modulus: int
    subgroup_gens: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(
            self, "subgroup_gens", tuple(int(g) % self.modulus for g in self.subgroup_gens)
        )

    @property
    def step(self) -> int:
        """Generator ``h`` of ``G = hZ/NZ``; ``h`` divides ``N``."""
        h = self.modulus
        for g in self.subgroup_gens:
            h = math.gcd(h, g)
        return h

    @property
    def subgroup_order(self) -> int:
        return self.modulus // self.step

    def contains(self, x: int) -> bool:
        return x % self.modulus % self.step == 0


@dataclass(frozen=True)
class MarkedPoint:
    p: int
    a: int
    target: int


def constrained_multiples(a: int, order: int) -> range:
    """The ``m >= 1`` with ``m^2 * order < a`` (exact, no square roots)."""
    m = math.isqrt(max(a - 1, 0) // order) if order else 0
    while (m + 1) ** 2 * order < a:
        m += 1
    while m > 0 and m * m * order >= a:
        m -= 1
    return range(1, m + 1)


def _satisfies(model: FiniteGroupModel, p: int, a: int, target: int) -> bool:
    N = model.modulus
    if (a * p - target) % N:
        return False
    return not any(model.contains(m * p) for m in constrained_multiples(a, model.subgroup_order))


def verify_marked_point(model: FiniteGroupModel, candidate: MarkedPoint) -> bool:
    """Check both conditions by brute force."""
    if candidate.a < 1:
        return False
    return _satisfies(model, candidate.p % model.modulus, candidate.a, candidate.target)


def find_marked_point(model: FiniteGroupModel, a: int, target: int) -> MarkedPoint | None:
    """Smallest residue ``p`` satisfying the marked-point conditions, or None.

    Only solutions of ``a p = target (mod N)`` are examined: they form a coset
    of the ``gcd(a, N)``-torsion, so at most ``gcd(a, N)`` candidates.
    """
    if a < 1:
        raise ValueError(f"a must be positive, got {a}")
    N = model.modulus
    t = target % N
    g = math.gcd(a, N)
    if t % g:
        return None
    step = N // g
    p0 = (t // g) * pow(a // g, -1, step) % step if step > 1 else 0
    for p in range(p0, N, step):
        if _satisfies(model, p, a, t):
            return MarkedPoint(p, a, t)
    return None


def exhaustive_marked_point(model: FiniteGroupModel, a: int, target: int) -> MarkedPoint | None:
    """Oracle: scan every residue."""
    for p in range(model.modulus):
        if verify_marked_point(model, MarkedPoint(p, a, target)):
            return MarkedPoint(p, a, target % model.modulus)
    return None
