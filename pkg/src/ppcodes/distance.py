"""Minimum distance: closed forms, bounds and exact search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, floor

import numpy as np

from . import kernels
from .errors import TheoremViolation
from .field import FieldSpec
from .hilbert import evaluation_matrix
from .toric import ToricSet

DEFAULT_EXACT_BUDGET = 10**8


@dataclass(frozen=True)
class TorusDecomposition:
    """``d = k (q-2) + l`` with ``k >= 0`` and ``1 <= l <= q-2``."""

    d: int
    k: int
    l: int

    @classmethod
    def of(cls, d: int, q: int) -> TorusDecomposition:
        if d < 1:
            raise ValueError("decomposition needs d >= 1")
        k = (d - 1) // (q - 2)
        return cls(d, k, d - k * (q - 2))


def torus_min_distance(s: int, d: int, q: int) -> int:
    """Minimum distance of the degree-``d`` code on the torus with ``s`` coordinates."""
    if s < 1 or d < 0:
        raise ValueError("need s >= 1 and d >= 0")
    if s == 1:
        return 1
    if d == 0:
        return (q - 1) ** (s - 1)
    if d >= (s - 1) * (q - 2):
        return 1
    t = TorusDecomposition.of(d, q)
    return (q - 1) ** (s - t.k - 2) * (q - 1 - t.l)


def _round(value: Fraction, convention: str) -> int:
    if convention == "floor":
        r = floor(value)
    elif convention == "ceil":
        r = ceil(value)
    else:
        raise ValueError(f"unknown rounding convention {convention!r}")
    return max(1, r)


def lower_bound_delta(x_size: int, alpha: int | None, n: int, d: int, q: int,
                      convention: str = "floor") -> tuple[Fraction, int]:
    """``|X| * delta_T(n, alpha d) / (q-1)^(n-1)`` and its rounded, 1-clamped value."""
    if alpha is None:
        raise ValueError("lower bound needs equal column sums")
    exact = Fraction(x_size * torus_min_distance(n, alpha * d, q), (q - 1) ** (n - 1))
    return exact, _round(exact, convention)


def graph_lower_bound(graph, n: int, d: int, q: int,
                      convention: str = "floor") -> tuple[Fraction, int]:
    """Lower bound for incidence matrices of connected graphs."""
    if not graph.connected:
        raise ValueError("graph bound needs a connected graph")
    base = torus_min_distance(n, 2 * d, q)
    exact = Fraction(base, q - 1) if graph.bipartite else Fraction(base)
    return exact, _round(exact, convention)


def singleton_bound(x_size: int, h: int) -> int:
    if h > x_size:
        raise ValueError(f"dimension {h} exceeds length {x_size}")
    return x_size - h + 1


def upper_bound_delta(m: int, d: int, q: int, delta_Y: int | None = None,
                      y_size: int | None = None) -> int:
    """``delta_T(d) - delta_Y(d)``, with ``delta_Y >= 1`` when not supplied.

    When ``Y`` is empty (``X`` is the whole torus) the torus distance itself
    is returned.
    """
    if not 0 <= d < (m - 1) * (q - 2):
        raise ValueError(f"need 0 <= d < (m-1)(q-2) = {(m - 1) * (q - 2)}")
    dt = torus_min_distance(m, d, q)
    if y_size == 0:
        return dt
    return dt - (1 if delta_Y is None else delta_Y)


def generator_matrix(X: ToricSet, d: int, backend=None) -> np.ndarray:
    """Reduced row basis of ``C_X(d)``: shape ``H_X(d) x |X|``."""
    E, piv = kernels.row_echelon(evaluation_matrix(X, d).T, X.field.tables,
                                 reduced=True, backend=backend)
    return E[: len(piv)]


@dataclass(frozen=True)
class DistanceResult:
    value: int
    method: str  # "brute" (exact) or "sampled" (upper estimate only)
    work: int = 0

    @property
    def exact(self) -> bool:
        return self.method == "brute"


def _information_sets(G, tables, limit, backend=None):
    """Systematic generators on up to ``limit`` pairwise disjoint information sets."""
    k, n = G.shape
    remaining = np.arange(n)
    out = []
    while len(out) < limit and len(remaining) >= k:
        perm = np.concatenate([remaining, np.setdiff1d(np.arange(n), remaining)])
        E, piv = kernels.row_echelon(G[:, perm], tables, reduced=True, backend=backend)
        if len(piv) < k or piv[-1] >= len(remaining):
            break
        out.append(E[:, np.argsort(perm)])
        remaining = np.setdiff1d(remaining, perm[piv])
    return out


def exact_min_distance(G, F: FieldSpec, budget: int = DEFAULT_EXACT_BUDGET,
                       seed: int = 0, backend=None) -> DistanceResult:
    """Minimum Hamming weight of the nonzero codewords of the row space of ``G``.

    Messages are enumerated by increasing weight in systematic form on each
    of several disjoint information sets.  After all weights ``<= w`` are done
    on ``s`` sets every unseen codeword has weight ``>= s (w + 1)``, which
    certifies the best weight found.  ``budget`` caps codeword-symbol
    operations; past it, random messages give an upper estimate only.
    """
    tables = F.tables
    G = np.asarray(G, dtype=np.int64)
    E, piv = kernels.row_echelon(G, tables, reduced=True, backend=backend)
    G = E[: len(piv)]
    k, n = G.shape
    if k == 0:
        raise ValueError("zero code has no minimum distance")
    first = _information_sets(G, tables, 1, backend)
    q1 = F.q - 1
    best = int(np.count_nonzero(first[0], axis=1).min())
    work = k * n

    def level_cost(w):
        return comb(k, w) * q1 ** (w - 1) * n

    def plan_cost(s):
        # levels needed before s disjoint sets certify the current best
        top = min(k, max(1, -(-best // s) - 1))
        return s * sum(level_cost(w) for w in range(1, top + 1))

    want = min(range(1, n // k + 1), key=plan_cost)
    sets = first if want == 1 else _information_sets(G, tables, want, backend)
    used = len(sets)
    for w in range(1, k + 1):
        cost = used * level_cost(w)
        if work + cost > budget:
            return _sampled(G, F, best, budget - work, seed, work)
        for S in sets:
            best = kernels.min_weight_at(S, w, tables, best, backend=backend)
        work += cost
        if best <= used * (w + 1) or w == k:
            return DistanceResult(best, "brute", work)
    raise AssertionError("unreachable")


def _sampled(G, F, best, budget, seed, work) -> DistanceResult:
    k, n = G.shape
    rng = np.random.default_rng(seed)
    count = max(1, min(budget // n, 10**6))
    msgs = rng.integers(0, F.q, size=(count, k))
    msgs = msgs[np.any(msgs, axis=1)]
    if msgs.size:
        words = kernels.combine_rows(msgs, G, F.tables)
        best = min(best, int(np.count_nonzero(words, axis=1).min()))
    return DistanceResult(best, "sampled", work + count * n)


def exhaustive_min_distance(G, F: FieldSpec, chunk: int = 1 << 14) -> int:
    """Plain enumeration of every nonzero message; slow, used as an oracle."""
    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    best = n + 1
    it = itertools.product(range(F.q), repeat=k)
    next(it)  # the zero message
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return best
        words = kernels.combine_rows(np.array(block), G, F.tables)
        best = min(best, int(np.count_nonzero(words, axis=1).min()))


@dataclass
class RegularityBounds:
    general: Fraction | None
    graph: Fraction | None
    r_X: int | None

    @property
    def best(self) -> Fraction | None:
        vals = [v for v in (self.general, self.graph) if v is not None]
        return max(vals) if vals else None

    @property
    def attained(self) -> bool:
        return self.r_X is not None and self.best is not None and self.r_X == self.best


def regularity_lower_bounds(x_size: int, alpha: int | None, n: int, q: int,
                            r_X: int | None = None, graph=None) -> RegularityBounds:
    """Lower bounds on ``r_X`` for equal column sums and for connected graphs."""
    if alpha is None:
        raise ValueError("regularity bound needs equal column sums")
    general = Fraction(x_size * (q - 2) * (n - 1), alpha * (q - 1) ** (n - 1))
    gb = None
    if graph is not None and graph.connected:
        gb = Fraction((q - 2) * (n - 1), 2 * (q - 1) if graph.bipartite else 2)
    out = RegularityBounds(general, gb, r_X)
    if r_X is not None and r_X < ceil(out.best):
        raise TheoremViolation(f"r_X={r_X} below its lower bound {out.best}")
    return out


@dataclass
class DistanceReport:
    d: int
    lower_rational: Fraction | None
    lower_rounded: int | None
    singleton: int
    upper_torus: int | None
    exact: DistanceResult | None = None

    def check(self):
        if self.exact is None or not self.exact.exact:
            return
        v = self.exact.value
        if self.lower_rational is not None and v < self.lower_rational:
            raise TheoremViolation(f"d={self.d}: exact {v} below lower bound {self.lower_rational}")
        caps = [c for c in (self.singleton, self.upper_torus) if c is not None]
        if v > min(caps):
            raise TheoremViolation(f"d={self.d}: exact {v} above upper bound {min(caps)}")
