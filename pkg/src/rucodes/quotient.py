"""The ambient ring R[x]/(x^n - alpha), n = p^s, alpha a nonzero field constant.

A :class:`QuotientPoly` keeps its residue part and its u-part as two
tuples of integer field codes, so ``f = a(x) + u b(x)``.  Every result is
fully reduced modulo ``x^n - alpha``.

The adic coordinates of ``f`` are taken in powers of ``alpha0*x - 1``,
where ``alpha0^n = alpha^{-1}``; for alpha = 1 this is ``x - 1`` and the
code paths coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .errors import ParameterError
from .field import FieldElement, FieldParams
from .ring import RuElement

MAX_LENGTH = 128


@dataclass(frozen=True)
class QuotientParams:
    field: FieldParams
    s: int
    alpha: FieldElement
    max_length: int = dc_field(default=MAX_LENGTH, compare=False, repr=False)

    def __post_init__(self):
        if self.s < 1:
            raise ParameterError(f"s must be >= 1 (got {self.s})")
        if self.alpha.field != self.field:
            raise ParameterError("alpha must belong to the coefficient field")
        if not self.alpha:
            raise ParameterError("alpha must be a nonzero field element")
        if self.n > self.max_length:
            raise ParameterError(f"length p^s = {self.n} exceeds the cap {self.max_length}")

    @classmethod
    def make(cls, field: FieldParams, s: int, alpha=1, *, max_length: int = MAX_LENGTH) -> QuotientParams:
        if not isinstance(alpha, FieldElement):
            alpha = field(alpha) if not isinstance(alpha, int) else FieldElement(field, alpha % field.q)
        return cls(field, s, alpha, max_length)

    @cached_property
    def n(self) -> int:
        return self.field.p**self.s

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def is_cyclic(self) -> bool:
        return self.alpha.value == 1

    @cached_property
    def alpha_q(self) -> int:
        return self.s // self.m

    @cached_property
    def alpha_r(self) -> int:
        return self.s % self.m

    @cached_property
    def alpha0(self) -> FieldElement:
        """alpha^{-p^{m - r}} with s = q*m + r; satisfies alpha0^{p^s} = alpha^{-1}."""
        return self.alpha ** (-(self.p ** (self.m - self.alpha_r)))

    def with_alpha(self, alpha: FieldElement) -> QuotientParams:
        return QuotientParams(self.field, self.s, alpha, self.max_length)

    def to_json(self) -> dict:
        return {**self.field.to_json(), "s": self.s, "alpha": self.alpha.to_json()}

    @classmethod
    def from_json(cls, data: dict, *, max_length: int = MAX_LENGTH) -> QuotientParams:
        from .field import field_make

        if "modulus" in data:
            fp = FieldParams.from_json(data)
        else:
            fp = field_make(int(data["p"]), int(data.get("m", 1)))
        alpha = data.get("alpha", [1])
        if isinstance(alpha, int):
            alpha = [alpha]
        return cls(fp, int(data["s"]), fp(alpha), max_length)


def _fpoly_mul(F: FieldParams, f: Sequence[int], g: Sequence[int], n: int, alpha: int) -> list[int]:
    """Product in F[x]/(x^n - alpha); iterates over the nonzero terms of g."""
    add, mul = F.add, F.mul
    out = [0] * (2 * n)
    if F.has_tables:
        A, M = F._lists[0], F._lists[2]
        for k, gk in enumerate(g):
            if gk:
                row = M[gk]
                for j, fj in enumerate(f):
                    if fj:
                        out[j + k] = A[out[j + k]][row[fj]]
    else:
        for k, gk in enumerate(g):
            if gk:
                for j, fj in enumerate(f):
                    if fj:
                        out[j + k] = add(out[j + k], mul(fj, gk))
    for j in range(n):
        hi = out[n + j]
        if hi:
            out[j] = add(out[j], mul(alpha, hi))
    return out[:n]


def _fvec_add(F: FieldParams, f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    if F.has_tables:
        A = F._lists[0]
        return tuple(A[x][y] for x, y in zip(f, g))
    return tuple(F.add(x, y) for x, y in zip(f, g))


def _fvec_sub(F: FieldParams, f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    if F.has_tables:
        S = F._lists[1]
        return tuple(S[x][y] for x, y in zip(f, g))
    return tuple(F.sub(x, y) for x, y in zip(f, g))


def _fvec_scale(F: FieldParams, f: Sequence[int], c: int) -> tuple[int, ...]:
    if F.has_tables:
        row = F._lists[2][c]
        return tuple(row[x] for x in f)
    return tuple(F.mul(x, c) for x in f)


def reduce_field_poly(params: QuotientParams, coeffs: Sequence[int]) -> tuple[int, ...]:
    """Reduce an arbitrary-length F-polynomial (integer codes) mod x^n - alpha."""
    F, n = params.field, params.n
    out = [0] * n
    power = 1  # alpha^(j // n)
    for j, c in enumerate(coeffs):
        if j and j % n == 0:
            power = F.mul(power, params.alpha.value)
        if c:
            out[j % n] = F.add(out[j % n], F.mul(c, power))
    return tuple(out)


@dataclass(frozen=True)
class QuotientPoly:
    """``a(x) + u b(x)`` in R[x]/(x^n - alpha), as integer codes, constant term first."""

    params: QuotientParams
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        n, q = self.params.n, self.params.field.q
        if len(self.a) != n or len(self.b) != n:
            raise ParameterError(f"expected {n} coefficients")
        if any(not 0 <= c < q for c in self.a + self.b):
            raise ParameterError("coefficient out of range for the field")

    # --- constructors -----------------------------------------------------

    @classmethod
    def from_parts(cls, params: QuotientParams, a: Sequence[int] = (), b: Sequence[int] = ()) -> QuotientPoly:
        """Build from residue/u-part code lists of any length (reduced mod x^n - alpha)."""
        return cls(params, reduce_field_poly(params, list(a)), reduce_field_poly(params, list(b)))

    @classmethod
    def from_ru(cls, params: QuotientParams, coeffs: Sequence[RuElement]) -> QuotientPoly:
        for c in coeffs:
            if c.field != params.field:
                raise ParameterError("coefficient from a different field")
        return cls.from_parts(params, [c.a.value for c in coeffs], [c.b.value for c in coeffs])

    @classmethod
    def zero(cls, params: QuotientParams) -> QuotientPoly:
        return cls(params, (0,) * params.n, (0,) * params.n)

    @classmethod
    def const(cls, params: QuotientParams, c: RuElement | int) -> QuotientPoly:
        if isinstance(c, RuElement):
            return cls.from_parts(params, [c.a.value], [c.b.value])
        return cls.from_parts(params, [c])

    @classmethod
    def one(cls, params: QuotientParams) -> QuotientPoly:
        return cls.const(params, 1)

    @classmethod
    def monomial(cls, params: QuotientParams, j: int, c: int = 1) -> QuotientPoly:
        return cls.from_parts(params, [0] * j + [c])

    @classmethod
    def x(cls, params: QuotientParams) -> QuotientPoly:
        return cls.monomial(params, 1)

    @classmethod
    def adic_base(cls, params: QuotientParams) -> QuotientPoly:
        """``alpha0*x - 1`` (``x - 1`` in the cyclic case)."""
        F = params.field
        return cls.from_parts(params, [F.neg(1), params.alpha0.value])

    # --- views --------------------------------------------------------------

    @property
    def field(self) -> FieldParams:
        return self.params.field

    @property
    def coeffs(self) -> tuple[RuElement, ...]:
        F = self.field
        return tuple(RuElement.of(F, a, b) for a, b in zip(self.a, self.b))

    def vector(self) -> tuple[int, ...]:
        """Flattened F-coordinates: residue coefficients then u-coefficients."""
        return self.a + self.b

    @classmethod
    def from_vector(cls, params: QuotientParams, vec: Sequence[int]) -> QuotientPoly:
        n = params.n
        vec = [int(v) for v in vec]
        return cls(params, tuple(vec[:n]), tuple(vec[n:]))

    def weight(self) -> int:
        return sum(1 for x, y in zip(self.a, self.b) if x or y)

    def is_zero(self) -> bool:
        return not any(self.a) and not any(self.b)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # --- arithmetic -----------------------------------------------------------

    def _check(self, other: QuotientPoly) -> None:
        if not isinstance(other, QuotientPoly) or other.params != self.params:
            raise ParameterError("polynomials from different quotient rings")

    def __add__(self, other: QuotientPoly) -> QuotientPoly:
        self._check(other)
        F = self.field
        return QuotientPoly(self.params, _fvec_add(F, self.a, other.a), _fvec_add(F, self.b, other.b))

    def __sub__(self, other: QuotientPoly) -> QuotientPoly:
        self._check(other)
        F = self.field
        return QuotientPoly(self.params, _fvec_sub(F, self.a, other.a), _fvec_sub(F, self.b, other.b))

    def __neg__(self) -> QuotientPoly:
        return QuotientPoly.zero(self.params) - self

    def __mul__(self, other: QuotientPoly | RuElement) -> QuotientPoly:
        if isinstance(other, RuElement):
            other = QuotientPoly.const(self.params, other)
        self._check(other)
        F, n, al = self.field, self.params.n, self.params.alpha.value
        aa = _fpoly_mul(F, self.a, other.a, n, al)
        ab = _fpoly_mul(F, self.a, other.b, n, al)
        ba = _fpoly_mul(F, self.b, other.a, n, al)
        return QuotientPoly(self.params, tuple(aa), _fvec_add(F, ab, ba))

    def __rmul__(self, other: RuElement) -> QuotientPoly:
        return self * other

    def __pow__(self, e: int) -> QuotientPoly:
        if e < 0:
            raise ParameterError("negative powers are not supported")
        result, base = QuotientPoly.one(self.params), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: int) -> QuotientPoly:
        """Multiply by the field constant with code ``c``."""
        F = self.field
        return QuotientPoly(self.params, _fvec_scale(F, self.a, c), _fvec_scale(F, self.b, c))

    def times_u(self) -> QuotientPoly:
        return QuotientPoly(self.params, (0,) * self.params.n, self.a)

    def shift(self) -> QuotientPoly:
        """alpha-constacyclic shift (alpha c_{n-1}, c_0, ..., c_{n-2}); equals x * self."""
        F, al = self.field, self.params.alpha.value
        a = (F.mul(al, self.a[-1]),) + self.a[:-1]
        b = (F.mul(al, self.b[-1]),) + self.b[:-1]
        return QuotientPoly(self.params, a, b)

    def is_unit(self) -> bool:
        return adic_expand(self).a[0] != 0

    def __repr__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                mono = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
                cs = repr(c)
                if not mono:
                    terms.append(cs)
                elif cs == "1":
                    terms.append(mono)
                else:
                    terms.append(f"({cs}){mono}")
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, params: QuotientParams, data: Iterable[dict]) -> QuotientPoly:
        return cls.from_ru(params, [RuElement.from_json(params.field, d) for d in data])


@dataclass(frozen=True)
class AdicCoords:
    """Coordinates of a polynomial in the basis (alpha0*x - 1)^i, i < n."""

    params: QuotientParams
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        n = self.params.n
        if len(self.a) != n or len(self.b) != n:
            raise ParameterError(f"expected {n} coordinates")

    @classmethod
    def from_ru(cls, params: QuotientParams, coords: Sequence[RuElement]) -> AdicCoords:
        a = [c.a.value for c in coords]
        b = [c.b.value for c in coords]
        pad = [0] * (params.n - len(a))
        return cls(params, tuple(a + pad), tuple(b + pad))

    @property
    def coords(self) -> tuple[RuElement, ...]:
        F = self.params.field
        return tuple(RuElement.of(F, a, b) for a, b in zip(self.a, self.b))


def _taylor_coords(params: QuotientParams, coeffs: Sequence[int]) -> tuple[int, ...]:
    F, n = params.field, params.n
    # substitute y = alpha0 x: coefficient of y^j is c_j * alpha0^{-j}
    inv0 = F.inv(params.alpha0.value)
    d, power = [], 1
    for c in coeffs:
        d.append(F.mul(c, power))
        power = F.mul(power, inv0)
    # Taylor shift at y = 1 by repeated synthetic division by (y - 1)
    add = F.add
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            if d[j + 1]:
                d[j] = add(d[j], d[j + 1])
    return tuple(d)


def adic_expand(f: QuotientPoly) -> AdicCoords:
    return AdicCoords(f.params, _taylor_coords(f.params, f.a), _taylor_coords(f.params, f.b))


def adic_collapse(c: AdicCoords) -> QuotientPoly:
    """Horner evaluation of sum c_i (alpha0*x - 1)^i inside the quotient ring."""
    params = c.params
    base = QuotientPoly.adic_base(params)
    result = QuotientPoly.zero(params)
    for i in range(params.n - 1, -1, -1):
        result = result * base + QuotientPoly.from_parts(params, [c.a[i]], [c.b[i]])
    return result


def qp_arith(op: str, f: QuotientPoly, g: QuotientPoly) -> QuotientPoly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ParameterError(f"unknown quotient-ring operation {op!r}")


def qp_shift(f: QuotientPoly) -> QuotientPoly:
    return f.shift()


def qp_is_unit(f: QuotientPoly) -> bool:
    return f.is_unit()


def qp_weight(f: QuotientPoly) -> int:
    return f.weight()


def all_polys(params: QuotientParams):
    """Every element of R[x]/(x^n - alpha) (q^{2n} of them), in code order."""
    q, n = params.field.q, params.n
    for vec in product(range(q), repeat=2 * n):
        yield QuotientPoly(params, vec[:n], vec[n:])
