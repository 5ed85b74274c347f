"""Hot inner loops, each with a numba and a pure-numpy implementation.

The backend is chosen by the ``PPCODES_BACKEND`` environment variable
(``numba`` or ``numpy``).  It defaults to ``numba`` when numba imports.
All field arithmetic here works on integer element codes through the dense
``add``/``mul``/``neg``/``inv`` tables of :class:`ppcodes.field.FieldTables`.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

try:
    import numba
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    numba = None
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


BACKENDS = ("numba", "numpy")


def default_backend() -> str:
    env = os.environ.get("PPCODES_BACKEND", "").strip().lower()
    if env in BACKENDS:
        if env == "numba" and not HAVE_NUMBA:
            return "numpy"
        return env
    if env:
        raise ValueError(f"PPCODES_BACKEND must be one of {BACKENDS}, got {env!r}")
    return "numba" if HAVE_NUMBA else "numpy"


def _resolve(backend):
    backend = backend or default_backend()
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        return "numpy"
    return backend


# ---------------------------------------------------------------------------
# Gaussian elimination over GF(q)
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _echelon_numba(M, add, mul, neg, inv, reduced):
    rows, cols = M.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                t = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = t
        s = inv[M[r, c]]
        if s != 1:
            for j in range(c, cols):
                M[r, j] = mul[s, M[r, j]]
        start = 0 if reduced else r + 1
        for i in range(start, rows):
            if i == r:
                continue
            f = M[i, c]
            if f != 0:
                nf = neg[f]
                for j in range(c, cols):
                    v = M[r, j]
                    if v != 0:
                        M[i, j] = add[M[i, j], mul[nf, v]]
        pivots[r] = c
        r += 1
    return pivots[:r]


def _echelon_numpy(M, add, mul, neg, inv, reduced):
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv], c:] = M[[piv, r], c:]
        M[r, c:] = mul[inv[M[r, c]], M[r, c:]]
        if reduced:
            targets = np.flatnonzero(M[:, c])
            targets = targets[targets != r]
        else:
            targets = r + 1 + np.flatnonzero(M[r + 1:, c])
        if targets.size:
            f = neg[M[targets, c]]
            M[targets, c:] = add[M[targets, c:], mul[f[:, None], M[r, c:][None, :]]]
        pivots.append(c)
        r += 1
    return np.asarray(pivots, dtype=np.int64)


def row_echelon(M, tables, reduced=False, backend=None):
    """Row echelon form of ``M`` over GF(q); returns ``(E, pivot_columns)``.

    Pivoting picks the first nonzero entry of each column, scanning columns
    left to right.  With ``reduced`` the result is the reduced form.
    """
    E = np.array(M, dtype=np.int64, copy=True)
    if E.ndim != 2:
        raise ValueError("row_echelon expects a 2-D array")
    if E.size == 0:
        return E, np.empty(0, dtype=np.int64)
    t = tables
    if _resolve(backend) == "numba":
        piv = _echelon_numba(E, t.add, t.mul, t.neg, t.inv, bool(reduced))
    else:
        piv = _echelon_numpy(E, t.add, t.mul, t.neg, t.inv, bool(reduced))
    return E, piv


def rank(M, tables, backend=None) -> int:
    M = np.asarray(M)
    if M.ndim == 2 and M.shape[0] > M.shape[1]:
        M = M.T
    return len(row_echelon(M, tables, backend=backend)[1])


# ---------------------------------------------------------------------------
# Congruence-system kernel counting
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _count_kernel_numba(B, ysizes, q1):
    # B: (m-1, n) residues; tuples i_j in 1..ysizes[j]
    rows, n = B.shape
    idx = np.ones(n, dtype=np.int64)
    res = np.zeros(rows, dtype=np.int64)
    for k in range(rows):
        s = 0
        for j in range(n):
            s += B[k, j]
        res[k] = s % q1
    total = 1
    for j in range(n):
        total *= ysizes[j]
    count = 0
    for _ in range(total):
        ok = True
        for k in range(rows):
            if res[k] != 0:
                ok = False
                break
        if ok:
            count += 1
        # odometer step on the last coordinate first
        j = n - 1
        while j >= 0:
            if idx[j] < ysizes[j]:
                idx[j] += 1
                for k in range(rows):
                    res[k] = (res[k] + B[k, j]) % q1
                break
            back = ysizes[j] - 1
            idx[j] = 1
            for k in range(rows):
                res[k] = (res[k] - back * B[k, j]) % q1
            j -= 1
    return count


def _kernel_residues_numpy(B, ysizes, q1):
    rows, n = B.shape
    R = np.zeros((1, rows), dtype=np.int64)
    for j in range(n):
        steps = np.arange(1, ysizes[j] + 1, dtype=np.int64)
        vals = (steps[:, None] * B[:, j][None, :]) % q1
        R = ((R[:, None, :] + vals[None, :, :]) % q1).reshape(-1, rows)
    return R


def kernel_mask(B, ysizes, q1) -> np.ndarray:
    """Boolean mask over all tuples (lexicographic, last index fastest)."""
    B = np.asarray(B, dtype=np.int64)
    R = _kernel_residues_numpy(B, np.asarray(ysizes, dtype=np.int64), q1)
    if B.shape[0] == 0:
        return np.ones(R.shape[0], dtype=bool)
    return ~np.any(R, axis=1)


def count_kernel(B, ysizes, q1, backend=None) -> int:
    B = np.ascontiguousarray(B, dtype=np.int64)
    ysizes = np.asarray(ysizes, dtype=np.int64)
    if _resolve(backend) == "numba":
        return int(_count_kernel_numba(B, ysizes, q1))
    return int(kernel_mask(B, ysizes, q1).sum())


# ---------------------------------------------------------------------------
# Minimum weight over messages of fixed Hamming weight
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _min_weight_numba(G, w, add, mul, units, best):
    k, n = G.shape
    nu = units.shape[0]
    acc = np.zeros((w + 1, n), dtype=np.int64)
    rsel = np.zeros(w, dtype=np.int64)
    csel = np.zeros(w, dtype=np.int64)
    rsel[0] = 0
    csel[0] = -1
    level = 0
    while level >= 0:
        csel[level] += 1
        ncoef = 1 if level == 0 else nu
        if csel[level] >= ncoef:
            csel[level] = 0
            rsel[level] += 1
        if rsel[level] > k - w + level:
            level -= 1
            continue
        c = 1 if level == 0 else units[csel[level]]
        r = rsel[level]
        if level + 1 == w:
            weight = 0
            for j in range(n):
                if add[acc[level, j], mul[c, G[r, j]]] != 0:
                    weight += 1
                    if weight >= best:
                        break
            if weight < best:
                best = weight
        else:
            for j in range(n):
                acc[level + 1, j] = add[acc[level, j], mul[c, G[r, j]]]
            level += 1
            rsel[level] = rsel[level - 1] + 1
            csel[level] = -1
    return best


def _min_weight_numpy(G, w, add, mul, units, best):
    k, n = G.shape
    # coefficient patterns with the first coefficient fixed to 1
    if w > 1:
        tail = np.array(list(itertools.product(units, repeat=w - 1)), dtype=np.int64)
        coefs = np.hstack([np.ones((tail.shape[0], 1), dtype=np.int64), tail])
    else:
        coefs = np.ones((1, 1), dtype=np.int64)
    for combo in itertools.combinations(range(k), w):
        acc = np.zeros((coefs.shape[0], n), dtype=np.int64)
        for pos, r in enumerate(combo):
            acc = add[acc, mul[coefs[:, pos][:, None], G[r][None, :]]]
        wt = int(np.count_nonzero(acc, axis=1).min())
        if wt < best:
            best = wt
    return best


def min_weight_at(G, w, tables, best, backend=None) -> int:
    """Smallest weight among ``m @ G`` over messages ``m`` of weight exactly ``w``.

    Messages are taken up to scalar multiples (first nonzero entry 1).
    Returns ``min(best, found)``.
    """
    G = np.ascontiguousarray(G, dtype=np.int64)
    if w < 1 or w > G.shape[0]:
        return best
    units = np.arange(1, tables.q, dtype=np.int64)
    if _resolve(backend) == "numba":
        return int(_min_weight_numba(G, w, tables.add, tables.mul, units, int(best)))
    return int(_min_weight_numpy(G, w, tables.add, tables.mul, units, int(best)))


def combine_rows(coefs, G, tables) -> np.ndarray:
    """Codewords ``coefs @ G`` over GF(q) for a batch of message rows."""
    coefs = np.atleast_2d(np.asarray(coefs, dtype=np.int64))
    G = np.asarray(G, dtype=np.int64)
    acc = np.zeros((coefs.shape[0], G.shape[1]), dtype=np.int64)
    for i in range(G.shape[0]):
        acc = tables.add[acc, tables.mul[coefs[:, i][:, None], G[i][None, :]]]
    return acc
