"""Finite field arithmetic over GF(q), q = p^k.

Elements are stored as integer codes ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``
where ``c_i`` are the coefficients of the residue polynomial modulo the
field's irreducible modulus.  The polynomial layer is the reference; the
log/Zech tables built by :func:`field_tables` must agree with it exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache

import numpy as np


class FieldError(ValueError):
    """Raised on invalid field construction or arithmetic."""


def _factor_prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


# --- polynomials over GF(p): tuples of coefficients, lowest degree first ---

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = [x % p for x in a]
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm]) if len(a) >= dm else _trim(a)


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def _monic_candidates(p: int, k: int):
    # lexicographic in (c_{k-1}, ..., c_0), i.e. leading coefficients first
    for high_first in itertools.product(range(p), repeat=k):
        yield list(reversed(high_first)) + [1]


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    for cand in _monic_candidates(p, k):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


def irreducible_moduli(p: int, k: int) -> list[tuple[int, ...]]:
    """All monic irreducible polynomials of degree ``k`` in canonical order."""
    return [tuple(c) for c in _monic_candidates(p, k) if is_irreducible(c, p)]


@dataclass(frozen=True)
class FieldSpec:
    """GF(q) with a fixed modulus and a fixed multiplicative generator ``beta``.

    ``modulus`` is empty for prime fields.  ``beta`` is an integer element code.
    """

    p: int
    k: int
    modulus: tuple[int, ...] = ()
    beta: int = dc_field(default=-1, compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.k

    # -- codec --------------------------------------------------------------
    def to_coeffs(self, code: int) -> list[int]:
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return out

    def from_coeffs(self, coeffs) -> int:
        code = 0
        for c in reversed(list(coeffs) + [0] * (self.k - len(coeffs))):
            code = code * self.p + c % self.p
        return code

    # -- polynomial layer (reference) ---------------------------------------
    def add_code(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        return self.from_coeffs([(x + y) % self.p for x, y in zip(ca, cb)])

    def neg_code(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.from_coeffs([(-x) % self.p for x in self.to_coeffs(a)])

    def mul_code(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        prod = _poly_mul(_trim(self.to_coeffs(a)), _trim(self.to_coeffs(b)), self.p)
        return self.from_coeffs(_poly_mod(prod, list(self.modulus), self.p))

    def pow_code(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow_code(self.inv_code(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul_code(result, base)
            base = self.mul_code(base, base)
            e >>= 1
        return result

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise FieldError("inverse of zero")
        return self.pow_code(a, self.q - 2)

    def order_code(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        x, n = a, 1
        while x != 1:
            x = self.mul_code(x, a)
            n += 1
        return n

    # -- element-level API ----------------------------------------------------
    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_coeffs(value))
        if self.k == 1:
            return FieldElement(self, int(value) % self.p)
        value = int(value)
        if not 0 <= value < self.q:
            raise FieldError(f"element code {value} out of range for GF({self.q})")
        return FieldElement(self, value)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def generator(self) -> FieldElement:
        return FieldElement(self, self.beta)

    def elements(self):
        return [FieldElement(self, c) for c in range(self.q)]

    def nonzero(self):
        return [FieldElement(self, c) for c in range(1, self.q)]

    def discrete_log(self, a) -> int:
        """Return ``i`` in ``[0, q-2]`` with ``beta**i == a``."""
        code = self(a).code
        if code == 0:
            raise FieldError("discrete log of zero")
        return int(self.tables.log[code])

    def antilog(self, i: int) -> FieldElement:
        return FieldElement(self, int(self.tables.exp[i % (self.q - 1)]))

    @cached_property
    def tables(self) -> FieldTables:
        return field_tables(self)

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.q})"
        return f"GF({self.q}; modulus={self.modulus}, beta={self.beta})"


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: FieldSpec
    code: int

    def _other(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("mixed-field operands")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field(other).code
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.field.modulus, self.code))

    def __add__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.add_code(self.code, o.code))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_code(self.code))

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.mul_code(self.code, o.code))

    __rmul__ = __mul__

    def inv(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv_code(self.code))

    def __truediv__(self, other):
        return self * self._other(other).inv()

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow_code(self.code, int(e)))

    def pow_mod_order(self, e: int) -> FieldElement:
        """``a**e`` with ``e`` reduced mod ``q-1`` first (``a`` nonzero)."""
        if self.code == 0:
            raise FieldError("pow_mod_order of zero")
        return FieldElement(self.field, self.field.pow_code(self.code, e % (self.field.q - 1)))

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __repr__(self):
        if self.field.k == 1:
            return str(self.code)
        terms = []
        for i, c in enumerate(self.field.to_coeffs(self.code)):
            if c:
                terms.append(f"{c}" if i == 0 else f"{'' if c == 1 else c}x{'' if i == 1 else f'^{i}'}")
        return " + ".join(reversed(terms)) or "0"


def _smallest_generator(spec: FieldSpec) -> int:
    for code in range(1, spec.q):
        if spec.order_code(code) == spec.q - 1:
            return code
    raise FieldError("no generator found")  # unreachable for a field


def field_from_modulus(p: int, modulus) -> FieldSpec:
    modulus = tuple(_trim(modulus))
    if not is_irreducible(modulus, p):
        raise FieldError(f"modulus {modulus} is reducible over GF({p})")
    if modulus[-1] != 1:
        raise FieldError("modulus must be monic")
    spec = FieldSpec(p, len(modulus) - 1, modulus)
    return FieldSpec(spec.p, spec.k, spec.modulus, _smallest_generator(spec))


@lru_cache(maxsize=None)
def field_build(q: int) -> FieldSpec:
    """Deterministic GF(q): smallest irreducible modulus, smallest generator."""
    if q < 3:
        raise FieldError(f"q must be at least 3, got {q}")
    pk = _factor_prime_power(q)
    if pk is None:
        raise FieldError(f"{q} is not a prime power")
    p, k = pk
    if k == 1:
        spec = FieldSpec(p, 1)
        return FieldSpec(p, 1, (), _smallest_generator(spec))
    return field_from_modulus(p, smallest_irreducible(p, k))


@dataclass(frozen=True, eq=False)
class FieldTables:
    """Dense lookup tables for GF(q) on integer codes.

    ``exp[i] = beta**i`` for ``i`` in ``[0, 2(q-1))``; ``log[0]`` is -1.
    ``zech[n]`` is the Zech logarithm: ``1 + beta**n = beta**zech[n]`` (-1 for zero).
    """

    q: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray
    exp: np.ndarray
    log: np.ndarray
    zech: np.ndarray


def field_tables(spec: FieldSpec) -> FieldTables:
    q, q1 = spec.q, spec.q - 1
    exp = np.empty(2 * q1, dtype=np.int64)
    x = 1
    for i in range(2 * q1):
        exp[i] = x
        x = spec.mul_code(x, spec.beta)
    log = np.full(q, -1, dtype=np.int64)
    log[exp[:q1]] = np.arange(q1)

    add = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = spec.add_code(a, b)
    zech = np.full(q1, -1, dtype=np.int64)
    for n in range(q1):
        s = add[1, exp[n]]
        zech[n] = log[s] if s else -1

    # multiplication through logs; addition through Zech logs
    mul = np.zeros((q, q), dtype=np.int64)
    la = log[1:]
    mul[1:, 1:] = exp[(la[:, None] + la[None, :]) % q1]
    zadd = np.empty_like(add)
    zadd[0, :] = np.arange(q)
    zadd[:, 0] = np.arange(q)
    for a in range(1, q):
        for b in range(1, q):
            z = zech[(log[b] - log[a]) % q1]
            zadd[a, b] = 0 if z < 0 else exp[(log[a] + z) % q1]
    if not np.array_equal(zadd, add):
        raise FieldError("Zech-log addition disagrees with polynomial addition")
    neg = np.array([spec.neg_code(a) for a in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = exp[(-la) % q1]
    return FieldTables(q, add, mul, neg, inv, exp, log, zech)
