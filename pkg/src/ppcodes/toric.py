"""Exponent matrices and the toric sets they parameterize.

Points of a toric set are stored as discrete-log vectors with respect to the
field generator ``beta``: a row ``(0, l_2, ..., l_m)`` is the projective point
``[(1, beta^l_2, ..., beta^l_m)]``.  Rows are kept sorted lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded
from .field import FieldElement, FieldSpec

DEFAULT_ENUM_BUDGET = 10**8


@dataclass(frozen=True)
class ExponentMatrix:
    """The ``n x m`` matrix whose column ``i`` is the exponent vector of monomial ``i``.

    ``rows[j][i]`` is the exponent of variable ``Z_{j+1}`` in monomial ``i+1``.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not rows[0]:
            raise ValueError("exponent matrix must be non-empty")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("exponent matrix rows have different lengths")
        if len(rows[0]) < 2:
            raise ValueError("need at least two monomials (m >= 2)")
        if any(x < 0 for r in rows for x in r):
            raise ValueError("exponents must be nonnegative")

    @classmethod
    def from_columns(cls, columns) -> ExponentMatrix:
        columns = [list(c) for c in columns]
        return cls(tuple(zip(*columns)))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(r[i] for r in self.rows)

    @property
    def column_sums(self) -> tuple[int, ...]:
        return tuple(int(s) for s in self.array().sum(axis=0))

    @property
    def alpha(self) -> int | None:
        """Common column sum, or ``None`` when the monomials differ in degree."""
        sums = set(self.column_sums)
        return sums.pop() if len(sums) == 1 else None

    @property
    def is_uniform(self) -> bool:
        return self.alpha is not None


@dataclass(frozen=True, eq=False)
class ReducedMatrix:
    """Residues ``b[i-2, j-1] = (a_ij - a_1j) mod (q-1)`` for ``i = 2..m``."""

    b: np.ndarray
    q1: int

    @property
    def n(self) -> int:
        return self.b.shape[1]

    @property
    def m(self) -> int:
        return self.b.shape[0] + 1

    def full(self) -> np.ndarray:
        """``m x n`` residues including the implicit zero row for ``i = 1``."""
        return np.vstack([np.zeros((1, self.n), dtype=np.int64), self.b])


def reduce_matrix(A: ExponentMatrix, F: FieldSpec) -> ReducedMatrix:
    a = A.array().T  # m x n, row i = exponent vector of monomial i
    q1 = F.q - 1
    return ReducedMatrix(np.mod(a[1:] - a[0], q1), q1)


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of P^{m-1} scaled so its first nonzero coordinate is 1."""

    coords: tuple[FieldElement, ...]

    @classmethod
    def canonical(cls, coords) -> ProjectivePoint:
        coords = tuple(coords)
        lead = next((c for c in coords if c), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        s = lead.inv()
        return cls(tuple(c * s for c in coords))

    def __mul__(self, other: ProjectivePoint) -> ProjectivePoint:
        return ProjectivePoint.canonical(a * b for a, b in zip(self.coords, other.coords))

    def codes(self) -> tuple[int, ...]:
        return tuple(c.code for c in self.coords)


def _row_keys(rows: np.ndarray, q1: int):
    """Injective per-row keys for set operations on log vectors."""
    width = rows.shape[1]
    if width == 0:
        return np.zeros(rows.shape[0], dtype=np.int64)
    if q1 ** width < 2**62:
        return np.ravel_multi_index(tuple(rows.T), (q1,) * width)
    return np.array([hash(r.tobytes()) for r in rows])  # pragma: no cover


@dataclass(frozen=True, eq=False)
class ToricSet:
    """A deduplicated, lexicographically sorted set of torus points."""

    field: FieldSpec
    logs: np.ndarray  # N x m, first column zero
    matrix: ExponentMatrix | None = None

    def __len__(self) -> int:
        return self.logs.shape[0]

    @property
    def m(self) -> int:
        return self.logs.shape[1]

    def codes(self) -> np.ndarray:
        """Element codes of the coordinates, shape ``(N, m)``."""
        return self.field.tables.exp[self.logs]

    def points(self) -> list[ProjectivePoint]:
        F = self.field
        return [ProjectivePoint(tuple(F(int(c)) for c in row)) for row in self.codes()]

    def keys(self) -> np.ndarray:
        return _row_keys(self.logs[:, 1:], self.field.q - 1)

    def contains(self, logs) -> np.ndarray:
        logs = np.atleast_2d(np.asarray(logs, dtype=np.int64)) % (self.field.q - 1)
        logs = logs - logs[:, :1]  # projective normalization
        logs %= self.field.q - 1
        return np.isin(_row_keys(logs[:, 1:], self.field.q - 1), self.keys())

    def __eq__(self, other):
        if not isinstance(other, ToricSet):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.logs, other.logs)

    __hash__ = None


def _unique_rows(rows: np.ndarray) -> np.ndarray:
    if rows.shape[0] == 0:
        return rows
    return np.unique(rows, axis=0)


def _all_tuples(base: int, length: int) -> np.ndarray:
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((base,) * length, dtype=np.int64)
    return grids.reshape(length, -1).T


def enumerate_X(A: ExponentMatrix, F: FieldSpec, budget: int = DEFAULT_ENUM_BUDGET,
                reduced: bool = True) -> ToricSet:
    """Enumerate the toric set of ``A`` over ``F``.

    Every ``t`` in ``(K*)^n`` is visited through its exponent vector w.r.t.
    ``beta``.  With ``reduced=False`` the raw monomial values are formed and
    then normalized, instead of using the reduced exponents directly.
    """
    q1 = F.q - 1
    n, m = A.n, A.m
    needed = q1**n * m
    if needed > budget:
        raise BudgetExceeded("toric set enumeration", needed, budget)
    if reduced:
        E = reduce_matrix(A, F).full()  # m x n
    else:
        E = A.array().T
    rest = _all_tuples(q1, n - 1)
    found = []
    for lead in range(q1):
        # partition by the exponent of t_1
        logs = (lead * E[:, 0][None, :] + rest @ E[:, 1:].T) % q1
        if not reduced:
            logs = (logs - logs[:, :1]) % q1
        found.append(_unique_rows(logs))
    return ToricSet(F, _unique_rows(np.vstack(found)), A)


def enumerate_torus(m: int, F: FieldSpec, budget: int = DEFAULT_ENUM_BUDGET) -> ToricSet:
    q1 = F.q - 1
    if m < 1:
        raise ValueError("m must be positive")
    needed = q1 ** (m - 1) * m
    if needed > budget:
        raise BudgetExceeded("torus enumeration", needed, budget)
    rest = _all_tuples(q1, m - 1)
    logs = np.hstack([np.zeros((rest.shape[0], 1), dtype=np.int64), rest])
    return ToricSet(F, logs)


def complement_Y(X: ToricSet, m: int | None = None, F: FieldSpec | None = None,
                 budget: int = DEFAULT_ENUM_BUDGET) -> ToricSet:
    """Torus points not in ``X``."""
    F = F or X.field
    m = m or X.m
    T = enumerate_torus(m, F, budget)
    keep = ~np.isin(T.keys(), X.keys())
    return ToricSet(F, T.logs[keep])


def from_points(F: FieldSpec, points) -> ToricSet:
    """Build a torus subset from explicit points (each coordinate nonzero)."""
    rows = []
    for pt in points:
        pt = ProjectivePoint.canonical(F(c) for c in pt)
        if not all(pt.coords):
            raise ValueError("torus points must have every coordinate nonzero")
        rows.append([F.discrete_log(c) for c in pt.coords])
    m = len(rows[0]) if rows else 0
    return ToricSet(F, _unique_rows(np.array(rows, dtype=np.int64).reshape(-1, m)))


def torus_size(m: int, F: FieldSpec) -> int:
    return (F.q - 1) ** (m - 1)

