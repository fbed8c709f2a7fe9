"""Independent reference computations used by the tests.

None of these import the package; they are deliberately different algorithms
from the ones under test.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def charpoly(m):
    """Coefficients ``[1, c1, ..., cn]`` of ``det(tI - A)`` by Faddeev-LeVerrier.

    For an integer matrix every division by ``k`` is exact.
    """
    n = len(m)
    A = [[int(x) for x in row] for row in m]
    coeffs = [1]
    M = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        M = [[AM[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        tr = -sum(AM[i][i] for i in range(n))
        assert tr % k == 0
        coeffs.append(tr // k)
    return coeffs


def eigen_signs(m):
    """``(positive, negative, zero)`` eigenvalue counts of a symmetric integer matrix.

    All roots of the characteristic polynomial are real, so Descartes' rule of
    signs is exact: sign changes of p(t) count positive roots, sign changes of
    p(-t) count negative roots.
    """
    n = len(m)
    c = charpoly(m) if n else [1]
    zeros = 0
    while len(c) > 1 and c[-1] == 0:
        c = c[:-1]
        zeros += 1

    def changes(seq):
        s = [x for x in seq if x != 0]
        return sum(1 for a, b in zip(s, s[1:]) if (a > 0) != (b > 0))

    pos = changes(c)
    deg = len(c) - 1
    neg = changes([x * (-1) ** (deg - i) for i, x in enumerate(c)])
    return pos, neg, zeros


def negative_definite_oracle(m) -> bool:
    return eigen_signs(m)[1] == len(m)


def rank_oracle(rows) -> int:
    """Rank by plain Gaussian elimination over the rationals."""
    A = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(A[0]) if A else 0
    while rank < len(A) and col < ncols:
        piv = next((r for r in range(rank, len(A)) if A[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(len(A)):
            if r != rank and A[r][col] != 0:
                f = A[r][col] / A[rank][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[rank])]
        rank += 1
        col += 1
    return rank


def continuant(chain):
    """``(a, b)`` with ``a/b = [x1, ..., xm]`` (HJ), ``x_i = -chain[i]``, by forward recursion."""
    xs = [-x for x in chain]

    def K(seq):
        p_prev, p = 0, 1
        for x in seq:
            p_prev, p = p, x * p - p_prev
        return p

    return K(xs), K(xs[1:])


def symmetric_matrices(n, lo, hi):
    cells = [(i, j) for i in range(n) for j in range(i, n)]
    for vals in itertools.product(range(lo, hi + 1), repeat=len(cells)):
        m = [[0] * n for _ in range(n)]
        for (i, j), v in zip(cells, vals):
            m[i][j] = m[j][i] = v
        yield m


# -- printed type sequences, transcribed term by term ----------------------------


def fmt(t) -> str:
    return "(" + ", ".join(str(x) for x in t) + ")"


def seq_110(lam):
    """Repeated blowups over D_1 n D_n until D_1 reaches 0."""
    l1, n = lam[0], len(lam)
    out = [tuple(lam)]
    for j in range(1, l1 + 1):
        out.append((l1 - j, *lam[1 : n - 1], lam[n - 1] - 1, *([-2] * (j - 1)), -1))
    return out


def seq_502(lam):
    l1, n = lam[0], len(lam)
    tail = [-2] * (l1 - 1)
    l2, l3 = lam[1], lam[2]
    mid = [*lam[3 : n - 1], lam[n - 1] - 1]
    return [
        (0, -1, l3, *mid, *tail, l2),
        (1, l3 + 1, *mid, *tail, l2),
        (0, l3 + 1, *mid, *tail, l2 - 1, -1),
    ]


def seq_503(lam, k):
    """Lines for i = 3 .. k; stops once D_k is contracted."""
    l1, n = lam[0], len(lam)
    tail = [-2] * (l1 - 1)
    out = []
    for i in range(3, k + 1):
        rest = [*lam[i : n - 1], lam[n - 1] - 1]  # lambda_{i+1} .. lambda_n - 1
        head, rest_tail = rest[0], rest[1:]
        done = [lam[1] - 1, *lam[2 : i - 1]]  # lambda_2 - 1, lambda_3 .. lambda_{i-1}
        out.append((0, -1, head, *rest_tail, *tail, *done, lam[i - 1] + 1))
        out.append((1, head + 1, *rest_tail, *tail, *done, lam[i - 1] + 1))
        if i < k:
            out.append((0, head + 1, *rest_tail, *tail, *done, lam[i - 1], -1))
    return out


def seq_506(lam):
    """Pivots at the 0-component until lambda_2 reaches -1."""
    lam = list(lam)
    out = [tuple(lam)]
    while lam[1] != -1:
        lam[1] += 1
        lam[-1] -= 1
        out.append(tuple(lam))
    return out
