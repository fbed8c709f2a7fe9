"""Exhaustive sweep kernels, numba with a vectorized numpy fallback.

Two sweeps back the property tests:

* every symmetric integer matrix of size ``n`` with entries in ``[lo, hi]`` is
  tested for negative definiteness twice, once by leading principal minors
  and once by the sign pattern of the characteristic polynomial (a real
  symmetric matrix has only negative eigenvalues iff every coefficient of
  ``det(tI - A)`` is positive);
* smallest marked point in ``Z/N`` for every ``N <= n_max``, ``a | N`` and
  subgroup ``hZ/NZ`` with ``h | N``, by scanning all residues.

Entries are small, so int64 determinants are exact (|det| <= 4! * 3^4 here).
The backend is chosen per call by :func:`logk3._accel.backend`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from ._accel import backend, njit

__all__ = ["NDSweep", "nd_sweep", "nd_pair", "marked_point_sweep", "marked_point_cases"]


# -- negative definiteness -------------------------------------------------------


@njit(cache=True)
def _det3(a, r0, r1, r2, c0, c1, c2):
    return (
        a[r0, c0] * (a[r1, c1] * a[r2, c2] - a[r1, c2] * a[r2, c1])
        - a[r0, c1] * (a[r1, c0] * a[r2, c2] - a[r1, c2] * a[r2, c0])
        + a[r0, c2] * (a[r1, c0] * a[r2, c1] - a[r1, c1] * a[r2, c0])
    )


@njit(cache=True)
def _det(a, idx, k):
    """Determinant of the principal submatrix on rows/cols ``idx[:k]``, ``k <= 4``."""
    if k == 1:
        return a[idx[0], idx[0]]
    if k == 2:
        i, j = idx[0], idx[1]
        return a[i, i] * a[j, j] - a[i, j] * a[j, i]
    if k == 3:
        return _det3(a, idx[0], idx[1], idx[2], idx[0], idx[1], idx[2])
    i, j, l, m = idx[0], idx[1], idx[2], idx[3]
    return (
        a[i, i] * _det3(a, j, l, m, j, l, m)
        - a[i, j] * _det3(a, j, l, m, i, l, m)
        + a[i, l] * _det3(a, j, l, m, i, j, m)
        - a[i, m] * _det3(a, j, l, m, i, j, l)
    )


@njit(cache=True)
def _sylvester(a, n, idx):
    for k in range(1, n + 1):
        idx[k - 1] = k - 1
        d = _det(a, idx, k)
        if d == 0 or (d > 0) != (k % 2 == 0):
            return False
    return True


def _subset_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nonempty subsets of ``range(n)`` grouped by size: rows of indices and size offsets."""
    rows, offsets = [], [0]
    for k in range(1, n + 1):
        for mask in range(1, 1 << n):
            sub = [b for b in range(n) if mask >> b & 1]
            if len(sub) == k:
                rows.append(sub + [0] * (4 - k))
        offsets.append(len(rows))
    return np.array(rows, dtype=np.int64).reshape(-1, 4), np.array(offsets, dtype=np.int64)


@njit(cache=True)
def _charpoly_negative(a, n, subsets, offsets):
    # coefficient of t^(n-k) in det(tI - A) is (-1)^k E_k, E_k = sum of k x k principal minors
    for k in range(1, n + 1):
        e = 0
        for r in range(offsets[k - 1], offsets[k]):
            e += _det(a, subsets[r], k)
        if (e if k % 2 == 0 else -e) <= 0:
            return False
    return True


@functools.lru_cache(maxsize=None)
def _sweep_kernel(n: int):
    """Sweep specialized to size ``n``; a constant ``n`` lets LLVM unroll the minor loops."""
    m = n * (n + 1) // 2
    ii = np.array([i for i in range(n) for j in range(i, n)], dtype=np.int64)
    jj = np.array([j for i in range(n) for j in range(i, n)], dtype=np.int64)
    subsets, offsets = _subset_table(n)

    @njit
    def sweep(lo, hi):
        a = np.full((n, n), lo, dtype=np.int64)
        idx = np.empty(4, dtype=np.int64)
        total = 0
        nd = 0
        mismatches = 0
        first = np.zeros((n, n), dtype=np.int64)
        while True:
            s = _sylvester(a, n, idx)
            c = _charpoly_negative(a, n, subsets, offsets)
            total += 1
            if s:
                nd += 1
            if s != c:
                if mismatches == 0:
                    first[:, :] = a
                mismatches += 1
            # odometer over the upper triangle
            t = 0
            while t < m:
                i, j = ii[t], jj[t]
                if a[i, j] < hi:
                    a[i, j] += 1
                    a[j, i] = a[i, j]
                    break
                a[i, j] = lo
                a[j, i] = lo
                t += 1
            if t == m:
                break
        return total, nd, mismatches, first

    return sweep


def _batched_det(mats: np.ndarray, rows: tuple[int, ...], cols: tuple[int, ...]) -> np.ndarray:
    if len(rows) == 1:
        return mats[:, rows[0], cols[0]]
    out = np.zeros(mats.shape[0], dtype=np.int64)
    for c_pos, c in enumerate(cols):
        rest = cols[:c_pos] + cols[c_pos + 1:]
        term = mats[:, rows[0], c] * _batched_det(mats, rows[1:], rest)
        out = out + term if c_pos % 2 == 0 else out - term
    return out


def _decode(start: int, stop: int, n: int, lo: int, hi: int) -> np.ndarray:
    """Matrices number ``start .. stop-1`` in the same order as the odometer."""
    base = hi - lo + 1
    codes = np.arange(start, stop, dtype=np.int64)
    mats = np.empty((stop - start, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            digit = codes % base + lo
            codes //= base
            mats[:, i, j] = digit
            mats[:, j, i] = digit
    return mats


def _nd_numpy_batch(mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = mats.shape[1]
    syl = np.ones(mats.shape[0], dtype=bool)
    for k in range(1, n + 1):
        d = _batched_det(mats, tuple(range(k)), tuple(range(k)))
        syl &= (d > 0) if k % 2 == 0 else (d < 0)
    cp = np.ones(mats.shape[0], dtype=bool)
    for k in range(1, n + 1):
        e = np.zeros(mats.shape[0], dtype=np.int64)
        for mask in range(1 << n):
            sub = tuple(b for b in range(n) if mask >> b & 1)
            if len(sub) == k:
                e += _batched_det(mats, sub, sub)
        cp &= (e > 0) if k % 2 == 0 else (e < 0)
    return syl, cp


def _nd_sweep_numpy(n: int, lo: int, hi: int, chunk: int = 1 << 18):
    total = (hi - lo + 1) ** (n * (n + 1) // 2)
    nd = mismatches = 0
    first = np.zeros((n, n), dtype=np.int64)
    for start in range(0, total, chunk):
        mats = _decode(start, min(total, start + chunk), n, lo, hi)
        syl, cp = _nd_numpy_batch(mats)
        nd += int(syl.sum())
        bad = np.flatnonzero(syl != cp)
        if bad.size and mismatches == 0:
            first = mats[bad[0]].copy()
        mismatches += int(bad.size)
    return total, nd, mismatches, first


@dataclass(frozen=True)
class NDSweep:
    size: int
    lo: int
    hi: int
    total: int
    negative_definite: int
    mismatches: int
    first_mismatch: tuple[tuple[int, ...], ...] | None
    backend: str


def nd_sweep(n: int, lo: int = -3, hi: int = 3, use: str | None = None) -> NDSweep:
    """Compare both definiteness tests on every symmetric ``n x n`` matrix in the box."""
    if not 1 <= n <= 4:
        raise ValueError("sweep supports sizes 1..4")
    use = use or backend()
    if use == "numba":
        total, nd, bad, first = _sweep_kernel(n)(lo, hi)
    else:
        total, nd, bad, first = _nd_sweep_numpy(n, lo, hi)
    first_t = tuple(tuple(int(x) for x in row) for row in first) if bad else None
    return NDSweep(n, lo, hi, int(total), int(nd), int(bad), first_t, use)


def nd_pair(mats: np.ndarray, use: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Per-matrix (leading-minor verdict, char-poly verdict) for a stack of matrices."""
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    use = use or backend()
    if use == "numpy":
        return _nd_numpy_batch(mats)
    return _nd_pair_numba(mats, *_subset_table(mats.shape[1]))


@njit(cache=True)
def _nd_pair_numba(mats, subsets, offsets):
    count, n = mats.shape[0], mats.shape[1]
    syl = np.empty(count, dtype=np.bool_)
    cp = np.empty(count, dtype=np.bool_)
    idx = np.empty(4, dtype=np.int64)
    for r in range(count):
        syl[r] = _sylvester(mats[r], n, idx)
        cp[r] = _charpoly_negative(mats[r], n, subsets, offsets)
    return syl, cp


# -- marked points ---------------------------------------------------------------


def marked_point_cases(n_max: int, all_targets_up_to: int = 0) -> np.ndarray:
    """Rows ``(N, a, h, target)`` with ``a | N`` and ``h | N`` for ``N <= n_max``.

    Target 0 throughout; every target residue as well when ``N <= all_targets_up_to``.
    """
    rows = []
    for N in range(1, n_max + 1):
        divs = [d for d in range(1, N + 1) if N % d == 0]
        targets = range(N) if N <= all_targets_up_to else (0,)
        rows.extend((N, a, h, t) for a in divs for h in divs for t in targets)
    return np.array(rows, dtype=np.int64).reshape(-1, 4)


@njit(cache=True)
def _marked_numba(cases):
    out = np.full(cases.shape[0], -1, dtype=np.int64)
    for r in range(cases.shape[0]):
        N, a, h, target = cases[r, 0], cases[r, 1], cases[r, 2], cases[r, 3]
        order = N // h
        for p in range(N):
            if (a * p - target) % N != 0:
                continue
            ok = True
            m = 1
            while m * m * order < a:
                if m * p % N % h == 0:
                    ok = False
                    break
                m += 1
            if ok:
                out[r] = p
                break
    return out


def _marked_numpy(cases: np.ndarray) -> np.ndarray:
    out = np.full(cases.shape[0], -1, dtype=np.int64)
    for r, (N, a, h, target) in enumerate(cases.tolist()):
        p = np.arange(N, dtype=np.int64)
        ok = (a * p - target) % N == 0
        order = N // h
        m = 1
        while m * m * order < a:
            ok &= m * p % N % h != 0
            m += 1
        hits = np.flatnonzero(ok)
        if hits.size:
            out[r] = hits[0]
    return out


def marked_point_sweep(cases: np.ndarray, use: str | None = None) -> np.ndarray:
    """Smallest valid residue (or -1) for each ``(N, a, h, target)`` row, by full scan."""
    cases = np.ascontiguousarray(cases, dtype=np.int64)
    use = use or backend()
    return _marked_numba(cases) if use == "numba" else _marked_numpy(cases)
