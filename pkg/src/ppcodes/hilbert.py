"""Hilbert functions of toric sets: code dimensions and regularity indices.

``H_X(d)`` is computed as the GF(q)-rank of the evaluation matrix whose rows
are the points of ``X`` and whose columns are the degree-``d`` monomials.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import kernels
from .errors import BudgetExceeded, TheoremViolation
from .field import FieldSpec
from .toric import ExponentMatrix, ToricSet, reduce_matrix

MAX_COLUMNS = 5_000
MAX_ROWS = 10_000


def degree_monomials(m: int, d: int, budget: int = 10**7) -> np.ndarray:
    """Exponent vectors of total degree ``d`` in ``m`` variables, lex-descending."""
    count = comb(d + m - 1, m - 1)
    if count * m > budget:
        raise BudgetExceeded("degree monomials", count * m, budget)
    out = np.empty((count, m), dtype=np.int64)
    cur = [0] * m
    pos = 0

    def fill(i, left):
        nonlocal pos
        if i == m - 1:
            cur[i] = left
            out[pos] = cur
            pos += 1
            return
        for e in range(left, -1, -1):
            cur[i] = e
            fill(i + 1, left - e)

    if m == 0:
        return np.zeros((1 if d == 0 else 0, 0), dtype=np.int64)
    fill(0, d)
    return out


def evaluation_matrix(X: ToricSet, d: int) -> np.ndarray:
    """Values of the degree-``d`` monomials at the points of ``X`` (element codes)."""
    E = degree_monomials(X.m, d)
    q1 = X.field.q - 1
    return X.field.tables.exp[(X.logs @ E.T) % q1]


def rank_gf(M, F: FieldSpec, backend=None) -> int:
    return kernels.rank(np.asarray(M, dtype=np.int64), F.tables, backend=backend)


def hilbert_characters(A: ExponentMatrix, F: FieldSpec, d: int) -> int:
    """Number of distinct torus characters among the degree-``d`` monomials of ``X``.

    Distinct characters are linearly independent, so this equals ``H_X(d)``.
    """
    B = reduce_matrix(A, F).full()  # m x n
    E = degree_monomials(A.m, d)
    chars = (E @ B) % (F.q - 1)
    return int(np.unique(chars, axis=0).shape[0]) if chars.size else 1


def hilbert_X_tagged(X: ToricSet, d: int, max_columns: int = MAX_COLUMNS,
                     max_rows: int = MAX_ROWS, fallback: bool = True, backend=None):
    """``(H_X(d), method)`` where method is ``"rank"`` or ``"characters"``."""
    cols = comb(d + X.m - 1, X.m - 1)
    if cols <= max_columns and len(X) <= max_rows:
        return rank_gf(evaluation_matrix(X, d), X.field, backend), "rank"
    if fallback and X.matrix is not None:
        return hilbert_characters(X.matrix, X.field, d), "characters"
    raise BudgetExceeded("evaluation matrix", cols * len(X), max_columns * max_rows)


def hilbert_X(X: ToricSet, d: int, **kwargs) -> int:
    return hilbert_X_tagged(X, d, **kwargs)[0]


def hilbert_torus(m: int, d: int, q: int) -> int:
    """``#{r in {0..q-2}^(m-1) : sum(r) <= d}`` by inclusion-exclusion."""
    if d < 0:
        return 0
    s = m - 1
    if s == 0:
        return 1
    total = 0
    for j in range(s + 1):
        rest = d - j * (q - 1)
        if rest < 0:
            break
        total += (-1) ** j * comb(s, j) * comb(rest + s, s)
    return total


def hbar(X: ToricSet, d: int, **kwargs) -> int:
    """Hilbert function of ``I_X / I_T`` in degree ``d``."""
    return hilbert_torus(X.m, d, X.field.q) - hilbert_X(X, d, **kwargs)


def torus_regularity(m: int, q: int) -> int:
    """Least ``p`` with ``hilbert_torus(m, p) == (q-1)^(m-1)``."""
    size = (q - 1) ** (m - 1)
    p = 0
    while hilbert_torus(m, p, q) != size:
        p += 1
    return p


@dataclass
class HilbertProfile:
    x_size: int
    values: list[int] = field(default_factory=list)  # H_X(0..len-1)
    methods: list[str] = field(default_factory=list)
    regularity: int | None = None
    bound: int = 0  # (m-1)(q-2)
    interval: tuple[int, int] | None = None  # when r_X could not be pinned down

    def __getitem__(self, d: int) -> int:
        if d < len(self.values):
            return self.values[d]
        if self.regularity is not None:
            return self.x_size
        raise IndexError(d)

    @property
    def numerator(self) -> list[int]:
        """``h_0..h_r``: first differences of ``H_X`` up to the regularity index."""
        if self.regularity is None:
            raise ValueError("regularity index unknown")
        vals = [self[d] for d in range(self.regularity + 1)]
        return [vals[0]] + [b - a for a, b in zip(vals, vals[1:])]


def hilbert_profile(X: ToricSet, d_max: int | None = None, x_size: int | None = None,
                    jobs: int = 1, **kwargs) -> HilbertProfile:
    """``H_X(d)`` for ``d = 0..d_max`` plus the regularity index.

    Once ``H_X(d) = |X|`` the remaining degrees are filled without new rank
    computations (``C_X(d)`` embeds in ``C_X(d+1)``, so the value is final).
    With ``d_max=None`` the scan stops at stabilization.
    """
    q = X.field.q
    x_size = len(X) if x_size is None else x_size
    bound = (X.m - 1) * (q - 2)
    prof = HilbertProfile(x_size, bound=bound)
    last = bound if d_max is None else d_max

    def compute(d):
        try:
            return hilbert_X_tagged(X, d, **kwargs)
        except BudgetExceeded:
            return None, "budget"

    d = 0
    stop = False
    while d <= last and not stop:
        batch = list(range(d, min(last, d + max(jobs, 1) - 1) + 1))
        if jobs > 1:
            with ThreadPoolExecutor(jobs) as ex:
                results = list(ex.map(compute, batch))
        else:
            results = [compute(e) for e in batch]
        for e, (val, method) in zip(batch, results):
            if prof.regularity is not None:
                prof.values.append(x_size)
                prof.methods.append("stable")
                continue
            if val is None:
                prof.interval = (e, bound)
                stop = True
                break
            if prof.values and val < prof.values[-1]:
                raise TheoremViolation(f"H_X decreased at d={e}: {prof.values[-1]} -> {val}")
            if val > x_size:
                raise TheoremViolation(f"H_X({e})={val} exceeds |X|={x_size}")
            prof.values.append(val)
            prof.methods.append(method)
            if val == x_size:
                prof.regularity = e
                if d_max is None:
                    stop = True
        d = batch[-1] + 1
    if prof.regularity is not None:
        if prof.regularity > bound:
            raise TheoremViolation(f"r_X={prof.regularity} exceeds (m-1)(q-2)={bound}")
        while d_max is not None and len(prof.values) <= d_max:
            prof.values.append(x_size)
            prof.methods.append("stable")
    return prof


def character_profile(A: ExponentMatrix, F: FieldSpec, d_max: int, x_size: int) -> HilbertProfile:
    """Profile from character counts alone, for when ``X`` is too large to enumerate."""
    prof = HilbertProfile(x_size, bound=(A.m - 1) * (F.q - 2))
    for d in range(d_max + 1):
        if prof.regularity is not None:
            prof.values.append(x_size)
            prof.methods.append("stable")
            continue
        prof.values.append(hilbert_characters(A, F, d))
        prof.methods.append("characters")
        if prof.values[-1] == x_size:
            prof.regularity = d
    return prof


def regularity_index(X: ToricSet, x_size: int | None = None, **kwargs) -> HilbertProfile:
    return hilbert_profile(X, None, x_size, **kwargs)


@dataclass
class RegularityIdentity:
    r_X: int
    r_hbar: int
    r_T: int
    torus_formula: int

    @property
    def holds(self) -> bool:
        return self.r_T == max(self.r_X, self.r_hbar) and self.r_T == self.torus_formula


def regularity_max_identity(profile: HilbertProfile, m: int, F: FieldSpec,
                            strict: bool = True) -> RegularityIdentity:
    """Check ``r_T = max(r_X, r_Hbar)`` and ``r_T = (m-1)(q-2)``."""
    if profile.regularity is None:
        raise ValueError("regularity index of X unknown")
    q = F.q
    r_T = torus_regularity(m, q)
    y_size = (q - 1) ** (m - 1) - profile.x_size
    top = max(r_T, profile.regularity)
    hb = [hilbert_torus(m, d, q) - profile[d] for d in range(top + 1)]
    for a, b in zip(hb, hb[1:]):
        if b < a:
            raise TheoremViolation("Hbar is not nondecreasing")
    if hb[-1] != y_size:
        raise TheoremViolation(f"Hbar stabilizes at {hb[-1]}, expected |Y|={y_size}")
    r_hbar = top
    while r_hbar > 0 and hb[r_hbar - 1] == y_size:
        r_hbar -= 1
    out = RegularityIdentity(profile.regularity, r_hbar, r_T, (m - 1) * (q - 2))
    if strict and not out.holds:
        raise TheoremViolation(f"regularity identity fails: {out}")
    return out
