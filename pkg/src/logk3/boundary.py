"""Boundary shapes and log surface pairs (X, D).

A pair is always described by its boundary shape.  Optionally it carries a
full-lattice realization: an intersection lattice together with one class per
boundary component, in cycle order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from .lattice import (
    IntersectionLattice,
    LatticeError,
    gram_matrix,
    is_negative_definite,
    kernel_dim,
    pairing,
    signature,
)

__all__ = [
    "BoundaryError",
    "Elliptic",
    "Nodal",
    "Circular",
    "BoundaryShape",
    "make_circular",
    "shape_matrix",
    "format_shape",
    "Realization",
    "LogSurfacePair",
    "ValidationReport",
    "validate_pair",
    "free_realization",
]


class BoundaryError(ValueError):
    pass


@dataclass(frozen=True)
class Elliptic:
    """Smooth elliptic boundary curve."""

    self_int: int

    @property
    def n(self) -> int:
        return 1


@dataclass(frozen=True)
class Nodal:
    """Rational curve with a single node (arithmetic genus 1)."""

    self_int: int

    @property
    def n(self) -> int:
        return 1


@dataclass(frozen=True)
class Circular:
    """Cycle of smooth rational curves ``D_1 + ... + D_n`` of type ``lambdas``.

    Adjacent components meet once; for ``n = 2`` the two components meet
    in two points, recorded as the single number 2.
    """

    lambdas: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lambdas", tuple(int(x) for x in self.lambdas))
        if len(self.lambdas) < 2:
            raise BoundaryError(
                "a circular boundary needs at least 2 components "
                "(a single component with a node is Nodal)"
            )

    @property
    def n(self) -> int:
        return len(self.lambdas)

    def adjacent(self, i: int, j: int) -> bool:
        n = self.n
        return i != j and ((i - j) % n in (1, n - 1))


BoundaryShape = Union[Elliptic, Nodal, Circular]


def make_circular(lambdas: Sequence[int]) -> Circular:
    return Circular(tuple(lambdas))


def shape_matrix(shape: BoundaryShape) -> tuple[tuple[int, ...], ...]:
    """Intersection matrix of the boundary components implied by the shape."""
    if not isinstance(shape, Circular):
        return ((shape.self_int,),)
    n = shape.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(shape.lambdas[i])
            elif n == 2:
                row.append(2)
            else:
                row.append(1 if shape.adjacent(i, j) else 0)
        rows.append(tuple(row))
    return tuple(rows)


def format_shape(shape: BoundaryShape) -> str:
    """``(l1, l2, ..., ln)`` for cycles; ``nodal(l)`` / ``elliptic(l)`` otherwise."""
    if isinstance(shape, Circular):
        return "(" + ", ".join(str(x) for x in shape.lambdas) + ")"
    kind = "nodal" if isinstance(shape, Nodal) else "elliptic"
    return f"{kind}({shape.self_int})"


@dataclass(frozen=True)
class Realization:
    lattice: IntersectionLattice
    boundary_classes: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        classes = tuple(tuple(int(x) for x in c) for c in self.boundary_classes)
        object.__setattr__(self, "boundary_classes", classes)
        for c in classes:
            if len(c) != self.lattice.rank:
                raise LatticeError(
                    f"boundary class {c} has length {len(c)}, lattice rank is {self.lattice.rank}"
                )

    def boundary_sum(self) -> tuple[int, ...]:
        total = [0] * self.lattice.rank
        for c in self.boundary_classes:
            total = [a + b for a, b in zip(total, c)]
        return tuple(total)

    def k_plus_d(self) -> tuple[int, ...]:
        return tuple(a + b for a, b in zip(self.lattice.canonical, self.boundary_sum()))


@dataclass(frozen=True)
class LogSurfacePair:
    shape: BoundaryShape
    realization: Realization | None = None

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def lambdas(self) -> tuple[int, ...]:
        if isinstance(self.shape, Circular):
            return self.shape.lambdas
        return (self.shape.self_int,)

    @property
    def full(self) -> bool:
        return self.realization is not None


@dataclass
class ValidationReport:
    circularity_ok: bool
    k_plus_d_zero: bool | None = None
    irregularity_q: int | None = None
    genuine: bool | None = None
    hodge_signature_ok: bool | None = None
    complement_negative_definite: bool | None = None
    notes: list[str] = field(default_factory=list)


def _check_realization(shape: BoundaryShape, real: Realization) -> None:
    expected = shape_matrix(shape)
    if len(real.boundary_classes) != len(expected):
        raise BoundaryError(
            f"shape has {len(expected)} components but realization lists "
            f"{len(real.boundary_classes)} boundary classes"
        )
    actual = gram_matrix(real.lattice, real.boundary_classes)
    for i, row in enumerate(expected):
        for j, want in enumerate(row):
            if actual[i][j] != want:
                raise BoundaryError(
                    f"realization does not match shape: D{i + 1}.D{j + 1} = "
                    f"{actual[i][j]}, shape requires {want}"
                )


def validate_pair(S: LogSurfacePair, check_genuine: bool = True) -> ValidationReport:
    """Check structural consistency and, with a realization, genuineness.

    Raises :class:`BoundaryError` if the realization contradicts the shape.
    """
    report = ValidationReport(circularity_ok=True)
    if isinstance(S.shape, Circular):
        m = shape_matrix(S.shape)
        rest = [sum(row) - row[i] for i, row in enumerate(m)]
        if any(r != 2 for r in rest):
            report.circularity_ok = False
            report.notes.append(f"D_i(D - D_i) = {rest}, expected 2 throughout")
    if S.realization is None:
        report.notes.append("type-only: genuineness and Hodge checks not computed")
        return report

    real = S.realization
    _check_realization(S.shape, real)
    L = real.lattice
    report.hodge_signature_ok = signature(L) == (1, L.rank - 1, 0)
    if not report.hodge_signature_ok:
        report.notes.append(f"signature {signature(L)} is not (1, {L.rank - 1}, 0)")

    # adjunction: D^2 + K.D = 2 p_a - 2
    genus = 0 if isinstance(S.shape, Circular) else 1
    for i, c in enumerate(real.boundary_classes):
        total = pairing(L, c, c) + pairing(L, L.canonical, c)
        if total != 2 * genus - 2:
            report.notes.append(f"adjunction fails on D{i + 1}: D^2 + K.D = {total}")

    if not check_genuine:
        return report
    report.k_plus_d_zero = all(x == 0 for x in real.k_plus_d())
    report.irregularity_q = kernel_dim(L, real.boundary_classes)
    report.genuine = report.k_plus_d_zero and report.irregularity_q == 0

    classes = real.boundary_classes
    if len(classes) >= 2:
        complements = [classes[:i] + classes[i + 1:] for i in range(len(classes))]
        report.complement_negative_definite = any(
            is_negative_definite(L, rest) for rest in complements
        )
        if report.complement_negative_definite and report.k_plus_d_zero and not report.genuine:
            report.notes.append(
                "K + D = 0 and some D - D_i is negative definite, yet q > 0: "
                "lattice is not realized by a rational surface"
            )
    return report


def free_realization(shape: BoundaryShape) -> LogSurfacePair:
    """Realize ``shape`` on the lattice spanned freely by its components.

    The Gram matrix is the shape's intersection matrix and ``K = -sum D_i``,
    so ``K + D = 0`` and adjunction hold by construction.  This lattice is an
    oracle for the combinatorial surgery rules; it need not come from an
    actual surface.
    """
    gram = shape_matrix(shape)
    n = len(gram)
    basis = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    canonical = tuple(-1 for _ in range(n))
    return LogSurfacePair(shape, Realization(IntersectionLattice(gram, canonical), basis))
