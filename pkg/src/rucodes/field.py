"""Exact arithmetic in Z_p and GF(p^m).

An element of GF(p^m) is a polynomial in ``y`` of degree < m over Z_p,
reduced modulo a fixed monic irreducible.  Internally an element is the
integer ``sum(c_k * p**k)`` of its coefficient vector (lowest degree
first), which doubles as an index into the lazily built lookup tables
used by the ring, quotient and code layers.

Serialization: an element is its coefficient list, e.g. ``y + 1`` in
GF(4) is ``[1, 1]``; a field is ``{"p": 2, "m": 2, "modulus": [1, 1, 1]}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import InternalError, ParameterError

MAX_P = 13
MAX_M = 6
TABLE_LIMIT = 1024  # largest q for which add/mul tables are materialized


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# --- polynomials over Z_p as coefficient lists, lowest degree first -------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a by b (b monic or with invertible lead) over Z_p."""
    r = _trim([x % p for x in a])
    b = _trim(list(b))
    inv_lead = pow(b[-1], -1, p)
    while len(r) >= len(b):
        f = r[-1] * inv_lead % p
        shift = len(r) - len(b)
        for k, c in enumerate(b):
            r[shift + k] = (r[shift + k] - f * c) % p
        _trim(r)
    return r


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    r = _trim([x % p for x in a])
    b = _trim(list(b))
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        f = r[-1] * inv_lead % p
        shift = len(r) - len(b)
        q[shift] = f
        for k, c in enumerate(b):
            r[shift + k] = (r[shift + k] - f * c) % p
        _trim(r)
    return _trim(q), r


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            cand = [(low // p**k) % p for k in range(d)] + [1]
            if not _poly_mod(poly, cand, p):
                return False
    return True


def _digits(value: int, p: int, m: int) -> tuple[int, ...]:
    return tuple((value // p**k) % p for k in range(m))


def _undigits(coeffs: Sequence[int], p: int) -> int:
    return sum((c % p) * p**k for k, c in enumerate(coeffs))


@dataclass(frozen=True)
class FieldParams:
    """GF(p^m) with a fixed monic irreducible ``modulus`` (lowest degree first)."""

    p: int
    m: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ParameterError(f"p must be prime (got {self.p})")
        if self.m < 1:
            raise ParameterError(f"m must be >= 1 (got {self.m})")
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise ParameterError("modulus must be monic of degree m")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise ParameterError("modulus coefficients must lie in [0, p-1]")
        if not is_irreducible(self.modulus, self.p):
            raise ParameterError(f"modulus {list(self.modulus)} is reducible over Z_{self.p}")

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})"

    @cached_property
    def q(self) -> int:
        return self.p**self.m

    # --- integer-coded arithmetic (reference implementation) -------------

    def encode(self, coeffs: Sequence[int] | int) -> int:
        if isinstance(coeffs, (int, np.integer)):
            coeffs = [int(coeffs)]
        coeffs = list(coeffs)
        if len(coeffs) > self.m:
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
        return _undigits(coeffs, self.p)

    def decode(self, value: int) -> tuple[int, ...]:
        return _digits(value, self.p, self.m)

    def _mul_poly(self, x: int, y: int) -> int:
        prod = _poly_mul(_trim(list(self.decode(x))), _trim(list(self.decode(y))), self.p)
        return _undigits(_poly_mod(prod, self.modulus, self.p) if prod else [], self.p)

    def _add_poly(self, x: int, y: int) -> int:
        p = self.p
        return _undigits([(a + b) % p for a, b in zip(self.decode(x), self.decode(y))], p)

    def _neg_poly(self, x: int) -> int:
        return _undigits([-a % self.p for a in self.decode(x)], self.p)

    def _inv_poly(self, x: int) -> int:
        """Extended Euclid on (x, modulus)."""
        if x == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        p = self.p
        r0, r1 = list(self.modulus), _trim(list(self.decode(x)))
        s0, s1 = [], [1]
        while r1:
            quo, rem = _poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quo, s1, p), p)
        # r0 is a nonzero constant since the modulus is irreducible
        if len(r0) != 1:
            raise InternalError("modulus not irreducible: gcd has positive degree")
        c = pow(r0[0], -1, p)
        return _undigits(_poly_mod([a * c for a in s0], self.modulus, p), p)

    @cached_property
    def has_tables(self) -> bool:
        return self.q <= TABLE_LIMIT

    @cached_property
    def tables(self) -> dict[str, np.ndarray]:
        """Dense add/sub/mul/neg/inv tables indexed by integer codes."""
        if not self.has_tables:
            raise ParameterError(f"{self!r} too large for lookup tables (q > {TABLE_LIMIT})")
        q, p, m = self.q, self.p, self.m
        digits = np.array([self.decode(v) for v in range(q)], dtype=np.int64)
        weights = p ** np.arange(m, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        sub = ((digits[:, None, :] - digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights
        # x * y^k for every x and k < m, then combine linearly in y's digits
        shifted = np.empty((m, q, m), dtype=np.int64)
        cur = digits.copy()
        for k in range(m):
            shifted[k] = cur
            top = cur[:, m - 1].copy()
            nxt = np.zeros_like(cur)
            nxt[:, 1:] = cur[:, :-1]
            nxt = (nxt - top[:, None] * np.array(self.modulus[:m], dtype=np.int64)[None, :]) % p
            cur = nxt
        prod = np.einsum("yk,kxd->xyd", digits, shifted) % p
        mul = prod @ weights
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = int(np.nonzero(mul[x] == 1)[0][0])
        return {"add": add, "sub": sub, "mul": mul, "neg": neg, "inv": inv}

    @cached_property
    def _lists(self):
        t = self.tables
        return t["add"].tolist(), t["sub"].tolist(), t["mul"].tolist(), t["neg"].tolist(), t["inv"].tolist()

    def add(self, x: int, y: int) -> int:
        if self.has_tables:
            return self._lists[0][x][y]
        return self._add_poly(x, y)

    def sub(self, x: int, y: int) -> int:
        if self.has_tables:
            return self._lists[1][x][y]
        return self._add_poly(x, self._neg_poly(y))

    def mul(self, x: int, y: int) -> int:
        if self.has_tables:
            return self._lists[2][x][y]
        return self._mul_poly(x, y)

    def neg(self, x: int) -> int:
        if self.has_tables:
            return self._lists[3][x]
        return self._neg_poly(x)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.has_tables:
            return self._lists[4][x]
        return self._inv_poly(x)

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv(x), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    # --- element-level API ------------------------------------------------

    def __call__(self, coeffs: Sequence[int] | int) -> FieldElement:
        return FieldElement(self, self.encode(coeffs))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The class of ``y`` (equals ``0`` when m = 1 and modulus is ``y``)."""
        return self([0, 1])

    def elements(self) -> Iterator[FieldElement]:
        for v in range(self.q):
            yield FieldElement(self, v)

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> FieldParams:
        return cls(int(data["p"]), int(data["m"]), tuple(int(c) for c in data["modulus"]))


@dataclass(frozen=True)
class FieldElement:
    field: FieldParams
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ParameterError(f"{self.value} is not an element code of {self.field!r}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.decode(self.value)

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise ParameterError(f"field mismatch: {self.field!r} vs {getattr(other, 'field', other)!r}")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, self.field._add_poly(self.value, other.value))

    def __sub__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        f = self.field
        return FieldElement(f, f._add_poly(self.value, f._neg_poly(other.value)))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, self.field._neg_poly(self.value))

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, self.field._mul_poly(self.value, other.value))

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return self * other.inverse()

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field._inv_poly(self.value))

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("y" if k == 1 else f"y^{k}")
                terms.append(f"{c}" if not mono else (mono if c == 1 else f"{c}{mono}"))
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> list[int]:
        return list(self.coeffs)


def field_make(p: int, m: int, *, unbounded: bool = False) -> FieldParams:
    """GF(p^m) with the lexicographically smallest monic irreducible modulus.

    Candidates are ranked by the integer ``sum(c_k p^k)`` of their low
    coefficients, so for (2, 3) the modulus is ``y^3 + y + 1``.
    """
    if not is_prime(p):
        raise ParameterError(f"p must be prime (got {p})")
    if m < 1:
        raise ParameterError(f"m must be >= 1 (got {m})")
    if not unbounded and (p > MAX_P or m > MAX_M):
        raise ParameterError(f"desk-scale cap exceeded: need p <= {MAX_P}, m <= {MAX_M}")
    return _field_make_cached(p, m)


_FIELD_CACHE: dict[tuple[int, int], FieldParams] = {}


def _field_make_cached(p: int, m: int) -> FieldParams:
    key = (p, m)
    if key not in _FIELD_CACHE:
        for low in range(p**m):
            cand = list(_digits(low, p, m)) + [1]
            if is_irreducible(cand, p):
                _FIELD_CACHE[key] = FieldParams(p, m, tuple(cand))
                break
        else:  # pragma: no cover - an irreducible always exists
            raise InternalError(f"no irreducible polynomial of degree {m} over Z_{p}")
    return _FIELD_CACHE[key]


def field_arith(op: str, x: FieldElement, y: FieldElement | None = None) -> FieldElement:
    if op == "neg":
        return -x
    if y is None:
        raise ParameterError(f"{op} needs two operands")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ParameterError(f"unknown field operation {op!r}")


def field_inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def field_pow(x: FieldElement, e: int) -> FieldElement:
    return x**e
