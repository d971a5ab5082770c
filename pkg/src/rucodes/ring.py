"""The chain ring R = GF(p^m) + u GF(p^m) with u^2 = 0.

An element ``a + u b`` is kept as the pair (a, b) so that the residue map
``a + u b -> a`` is a plain attribute access.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import NotInvertibleError, ParameterError
from .field import FieldElement, FieldParams


@dataclass(frozen=True)
class RuElement:
    a: FieldElement
    b: FieldElement

    def __post_init__(self):
        if self.a.field != self.b.field:
            raise ParameterError("residue and u-parts live in different fields")

    @classmethod
    def of(cls, field: FieldParams, a=0, b=0) -> RuElement:
        """Build from integer codes, coefficient lists or FieldElements."""
        return cls(_as_elem(field, a), _as_elem(field, b))

    @classmethod
    def zero(cls, field: FieldParams) -> RuElement:
        return cls(field.zero, field.zero)

    @classmethod
    def one(cls, field: FieldParams) -> RuElement:
        return cls(field.one, field.zero)

    @classmethod
    def u(cls, field: FieldParams) -> RuElement:
        return cls(field.zero, field.one)

    @property
    def field(self) -> FieldParams:
        return self.a.field

    def _check(self, other: RuElement) -> None:
        if not isinstance(other, RuElement) or other.field != self.field:
            raise ParameterError("ring elements over different fields")

    def __add__(self, other: RuElement) -> RuElement:
        self._check(other)
        return RuElement(self.a + other.a, self.b + other.b)

    def __sub__(self, other: RuElement) -> RuElement:
        self._check(other)
        return RuElement(self.a - other.a, self.b - other.b)

    def __neg__(self) -> RuElement:
        return RuElement(-self.a, -self.b)

    def __mul__(self, other: RuElement) -> RuElement:
        self._check(other)
        return RuElement(self.a * other.a, self.a * other.b + self.b * other.a)

    def is_unit(self) -> bool:
        return bool(self.a)

    def inverse(self) -> RuElement:
        if not self.a:
            raise NotInvertibleError(f"{self!r} is not a unit of R (residue part is 0)")
        ia = self.a.inverse()
        return RuElement(ia, -(ia * ia * self.b))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __repr__(self) -> str:
        if not self.b:
            return repr(self.a)
        ub = "u" if self.b == self.field.one else f"u({self.b!r})"
        return ub if not self.a else f"{self.a!r} + {ub}"

    def to_json(self) -> dict:
        return {"a": self.a.to_json(), "b": self.b.to_json()}

    @classmethod
    def from_json(cls, field: FieldParams, data: dict) -> RuElement:
        return cls.of(field, data["a"], data["b"])


def _as_elem(field: FieldParams, x) -> FieldElement:
    if isinstance(x, FieldElement):
        if x.field != field:
            raise ParameterError("field mismatch")
        return x
    if isinstance(x, int):
        # integer code; for m = 1 this is just the residue
        return FieldElement(field, x % field.q)
    return field(x)


def ring_elements(field: FieldParams) -> Iterator[RuElement]:
    for a in field.elements():
        for b in field.elements():
            yield RuElement(a, b)


def ru_arith(op: str, x: RuElement, y: RuElement | None = None) -> RuElement:
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
    raise ParameterError(f"unknown ring operation {op!r}")


def ru_is_unit(x: RuElement) -> bool:
    return x.is_unit()


def ru_inv(x: RuElement) -> RuElement:
    return x.inverse()
