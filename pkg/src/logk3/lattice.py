"""Exact integer intersection lattices.

Everything here works over Python integers and :class:`fractions.Fraction`;
no floating point is ever involved, so definiteness, rank and signature
answers are certificates rather than estimates.

A lattice is a value: every operation returns a new lattice together with the
integer matrices relating old and new coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "LatticeError",
    "IntersectionLattice",
    "LatticeMap",
    "projective_plane",
    "hirzebruch",
    "pairing",
    "gram_matrix",
    "determinant",
    "leading_principal_minors",
    "ldl_diagonal",
    "is_negative_definite_matrix",
    "is_negative_definite",
    "matrix_rank",
    "matrix_signature",
    "signature",
    "blowup_lattice",
    "contract_lattice",
    "kernel_dim",
]

Matrix = tuple[tuple[int, ...], ...]
DivisorClass = tuple[int, ...]


class LatticeError(ValueError):
    """Raised on dimension mismatches and failed numerical preconditions."""


def _as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _as_class(v: Sequence[int]) -> DivisorClass:
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class IntersectionLattice:
    """Symmetric integer pairing on ``Z^rank`` with a distinguished canonical class.

    ``surface=True`` asserts the lattice is the numerical lattice of a smooth
    projective surface, which forces signature ``(1, rank - 1, 0)``.
    """

    gram: Matrix
    canonical: DivisorClass
    surface: bool = False

    def __post_init__(self) -> None:
        gram = _as_matrix(self.gram)
        canonical = _as_class(self.canonical)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "canonical", canonical)
        r = len(gram)
        if any(len(row) != r for row in gram):
            raise LatticeError("gram matrix must be square")
        for i in range(r):
            for j in range(i + 1, r):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError(f"gram matrix not symmetric at ({i}, {j})")
        if len(canonical) != r:
            raise LatticeError(
                f"canonical class has length {len(canonical)}, lattice rank is {r}"
            )
        if self.surface and matrix_signature(gram) != (1, r - 1, 0):
            raise LatticeError(
                f"surface lattice must have signature (1, {r - 1}, 0), "
                f"got {matrix_signature(gram)}"
            )

    @property
    def rank(self) -> int:
        return len(self.gram)

    def zero(self) -> DivisorClass:
        return (0,) * self.rank

    def unit(self, i: int) -> DivisorClass:
        return tuple(1 if j == i else 0 for j in range(self.rank))


@dataclass(frozen=True)
class LatticeMap:
    """Integer matrix acting on coordinate vectors (``target = matrix @ source``)."""

    matrix: Matrix
    kind: str  # "embed-after-blowup" | "pushforward-after-contraction"

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", _as_matrix(self.matrix))

    @property
    def source_rank(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def target_rank(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence[int]) -> DivisorClass:
        if len(v) != self.source_rank:
            raise LatticeError(
                f"map expects vectors of length {self.source_rank}, got {len(v)}"
            )
        return tuple(sum(m * x for m, x in zip(row, v)) for row in self.matrix)

    def then(self, other: LatticeMap) -> LatticeMap:
        """Composite ``other ∘ self``."""
        if other.source_rank != self.target_rank:
            raise LatticeError("maps are not composable")
        cols = list(zip(*self.matrix)) if self.matrix else []
        rows = [[sum(a * b for a, b in zip(orow, col)) for col in cols] for orow in other.matrix]
        return LatticeMap(rows, other.kind)


def projective_plane() -> IntersectionLattice:
    """``Pic(P^2) = Z H`` with ``H^2 = 1`` and ``K = -3H``."""
    return IntersectionLattice(((1,),), (-3,), surface=True)


def hirzebruch(beta: int) -> IntersectionLattice:
    """``Pic(F_beta)`` in the basis (C, F): ``C^2 = -beta``, ``C.F = 1``, ``F^2 = 0``."""
    if beta < 0:
        raise LatticeError("beta must be nonnegative")
    return IntersectionLattice(((-beta, 1), (1, 0)), (-2, -(beta + 2)), surface=True)


# -- pairing -----------------------------------------------------------------


def _check_class(L: IntersectionLattice, v: Sequence[int], what: str = "class") -> None:
    if len(v) != L.rank:
        raise LatticeError(f"{what} has length {len(v)}, lattice rank is {L.rank}")


def pairing(L: IntersectionLattice, a: Sequence[int], b: Sequence[int]) -> int:
    """Return ``a^T G b``."""
    _check_class(L, a)
    _check_class(L, b)
    return sum(a[i] * sum(g * y for g, y in zip(row, b)) for i, row in enumerate(L.gram) if a[i])


def gram_matrix(L: IntersectionLattice, classes: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(pairing(L, a, b) for b in classes) for a in classes)


# -- exact linear algebra ------------------------------------------------------


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant with row pivoting."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def leading_principal_minors(m: Sequence[Sequence[int]]) -> list[int]:
    return [determinant([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]


def ldl_diagonal(m: Sequence[Sequence[int]]) -> list[Fraction] | None:
    """Diagonal of the unpivoted ``LDL^T`` factorization, or None if a pivot vanishes.

    A vanishing pivot means some leading principal minor is zero.
    """
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    diag = []
    for k in range(n):
        d = a[k][k]
        if d == 0:
            return None
        diag.append(d)
        for i in range(k + 1, n):
            f = a[i][k] / d
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
    return diag


def is_negative_definite_matrix(m: Sequence[Sequence[int]]) -> bool:
    """Sylvester's criterion: the k-th leading principal minor has sign ``(-1)^k``.

    The empty form is (vacuously) negative definite.
    """
    for k, minor in enumerate(leading_principal_minors(m), start=1):
        if minor == 0 or (minor > 0) != (k % 2 == 0):
            return False
    return True


def is_negative_definite(L: IntersectionLattice, subset: Sequence[Sequence[int]]) -> bool:
    for v in subset:
        _check_class(L, v)
    return is_negative_definite_matrix(gram_matrix(L, subset))


def matrix_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-free elimination."""
    a = [list(map(int, row)) for row in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank]
        for r in range(rank + 1, len(a)):
            if a[r][col]:
                f = a[r][col]
                a[r] = [x * p[col] - f * y for x, y in zip(a[r], p)]
        rank += 1
        if rank == len(a):
            break
    return rank


def matrix_signature(m: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """Inertia (positives, negatives, zeros) by exact congruence diagonalization."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    pos = neg = 0
    k = 0
    while k < n:
        if a[k][k] == 0:
            r = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if r is not None:
                a[k], a[r] = a[r], a[k]
                for row in a:
                    row[k], row[r] = row[r], row[k]
            else:
                r = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if r is None:
                    k += 1
                    continue
                # x_k <- x_k + x_r makes the diagonal entry 2 a[k][r] != 0
                for j in range(n):
                    a[k][j] += a[r][j]
                for i in range(n):
                    a[i][k] += a[i][r]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        pivot_row = a[k][:]
        for i in range(k + 1, n):
            f = pivot_row[i] / d
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * pivot_row[j]
            a[i][k] = a[k][i] = Fraction(0)
        k += 1
    return pos, neg, n - pos - neg


def signature(L: IntersectionLattice) -> tuple[int, int, int]:
    return matrix_signature(L.gram)


def kernel_dim(L: IntersectionLattice, classes: Sequence[Sequence[int]]) -> int:
    """Dimension of the kernel of ``Q^k -> Q^rank`` sending generators to ``classes``."""
    for v in classes:
        _check_class(L, v)
    return len(classes) - matrix_rank(classes)


# -- blowup and contraction ------------------------------------------------------


def blowup_lattice(
    L: IntersectionLattice,
) -> tuple[IntersectionLattice, LatticeMap, DivisorClass]:
    """Append an exceptional class ``e`` with ``e^2 = -1`` orthogonal to everything.

    The new canonical class is ``embed(K) + e``.
    """
    r = L.rank
    gram = [list(row) + [0] for row in L.gram] + [[0] * r + [-1]]
    canonical = L.canonical + (1,)
    embed = LatticeMap([[1 if i == j else 0 for j in range(r)] for i in range(r + 1)], "embed-after-blowup")
    e = tuple([0] * r + [1])
    return IntersectionLattice(gram, canonical, L.surface), embed, e


def _unimodular_reduction(e: Sequence[int]) -> tuple[list[list[int]], list[list[int]]]:
    """Return ``(V, W)`` with ``V`` unimodular, ``W = V^-1`` and ``V e = (1, 0, ..., 0)``.

    Requires ``e`` primitive.
    """
    n = len(e)
    u = list(e)
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    W = [[int(i == j) for j in range(n)] for i in range(n)]

    def add_row(dst: int, src: int, c: int) -> None:
        # row_dst += c row_src on V; the inverse acts as col_src -= c col_dst on W
        V[dst] = [x + c * y for x, y in zip(V[dst], V[src])]
        for row in W:
            row[src] -= c * row[dst]
        u[dst] += c * u[src]

    while True:
        nz = [i for i in range(n) if u[i] != 0]
        p = min(nz, key=lambda i: (abs(u[i]), -i))
        others = [i for i in nz if i != p]
        if not others:
            break
        for i in others:
            add_row(i, p, -(u[i] // u[p]))
    if abs(u[p]) != 1:
        raise LatticeError("class is not primitive")
    if p != 0:
        V[0], V[p] = V[p], V[0]
        for row in W:
            row[0], row[p] = row[p], row[0]
        u[0], u[p] = u[p], u[0]
    if u[0] == -1:
        V[0] = [-x for x in V[0]]
        for row in W:
            row[0] = -row[0]
    return V, W


def contract_lattice(
    L: IntersectionLattice, e: Sequence[int]
) -> tuple[IntersectionLattice, LatticeMap]:
    """Contract a numerical (-1)-class.

    ``L`` splits as ``Z e (+) e^perp``. The pushforward sends ``v`` to the
    coordinates of ``v + (v.e) e`` in a basis of ``e^perp``, so pushed classes
    satisfy ``push(a).push(b) = a.b + (a.e)(b.e)``.  When ``e`` has a
    coordinate equal to +-1 (always the case for exceptional curves produced
    by :func:`blowup_lattice`), that coordinate is the one dropped and the
    others keep their order.
    """
    _check_class(L, e, "contracted class")
    e = _as_class(e)
    if pairing(L, e, e) != -1 or pairing(L, L.canonical, e) != -1:
        raise LatticeError("not a numerical (-1)-class")
    r = L.rank
    units = [i for i in range(r) if abs(e[i]) == 1]
    if units:
        i = units[-1]
        push_rows = []
        basis = []
        for j in range(r):
            if j == i:
                continue
            row = [int(k == j) for k in range(r)]
            row[i] -= e[j] * e[i]
            push_rows.append(row)
            basis.append(tuple(int(k == j) for k in range(r)))
    else:
        V, W = _unimodular_reduction(e)
        push_rows = V[1:]
        basis = [tuple(W[k][j] for k in range(r)) for j in range(1, r)]
    proj = [tuple(xi + pairing(L, x, e) * ei for xi, ei in zip(x, e)) for x in basis]
    gram = [[pairing(L, a, b) for b in proj] for a in proj]
    push = LatticeMap(push_rows, "pushforward-after-contraction")
    canonical = push(L.canonical)
    return IntersectionLattice(gram, canonical, L.surface), push
