"""Ideals of R[x]/(x^n - alpha): descriptors, spans, and brute-force analysis.

Codes are stored as an RREF basis over GF(p^m) under the flattening
``a(x) + u b(x) -> (a_0..a_{n-1}, b_0..b_{n-1})``.  Everything that
enumerates codewords does so over the Z_p-expansion of that basis, so a
code of F-dimension ``k`` has exactly ``p^(m k)`` codewords and no
shortcut through the distance formulas is ever taken.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import InternalError, ParameterError, ResourceError, ValidationError
from .field import FieldParams
from .linalg import reduce_against, rref, span_chunks
from .quotient import QuotientParams, QuotientPoly

TYPE1_ZERO = "type1zero"
TYPE1_UNIT = "type1unit"
TYPE2 = "type2"
TYPE3 = "type3"
TYPE4 = "type4"
KINDS = (TYPE1_ZERO, TYPE1_UNIT, TYPE2, TYPE3, TYPE4)
_KIND_ALIASES = {"zero": TYPE1_ZERO, "unit": TYPE1_UNIT, "one": TYPE1_UNIT}

ENUM_CAP_BITS = 22.0
DUAL_CAP_BITS = 20.0


def _trim_codes(h: Sequence[int]) -> tuple[int, ...]:
    h = list(h)
    while h and h[-1] == 0:
        h.pop()
    return tuple(h)


@dataclass(frozen=True)
class CodeSpec:
    """One ideal from the four-type classification.

    ``h`` holds the x-coefficients of h(x) as integer field codes, lowest
    degree first, trailing zeros trimmed (``()`` is the zero polynomial).
    Unused parameters stay ``None``.
    """

    params: QuotientParams
    kind: str
    i: int | None = None
    t: int | None = None
    omega: int | None = None
    h: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "h", _trim_codes(self.h))

    @property
    def sort_key(self) -> tuple:
        return (
            KINDS.index(self.kind) if self.kind in KINDS else len(KINDS),
            -1 if self.i is None else self.i,
            -1 if self.t is None else self.t,
            -1 if self.omega is None else self.omega,
            len(self.h),
            self.h,
        )

    def h_json(self) -> list:
        F = self.params.field
        if F.m == 1:
            return list(self.h)
        return [list(F.decode(c)) for c in self.h]

    @property
    def label(self) -> str:
        parts = [self.kind]
        for name in ("i", "t", "omega"):
            v = getattr(self, name)
            if v is not None:
                parts.append(f"{name}={v}")
        if self.kind in (TYPE3, TYPE4):
            parts.append(f"h={self.h_json()}")
        return " ".join(parts)

    def to_json(self) -> dict:
        out = {
            "p": self.params.p,
            "m": self.params.m,
            "s": self.params.s,
            "alpha": self.params.alpha.to_json(),
            "kind": self.kind,
        }
        for name in ("i", "t", "omega"):
            v = getattr(self, name)
            if v is not None:
                out[name] = v
        if self.kind in (TYPE3, TYPE4):
            out["h"] = self.h_json()
        return out

    @classmethod
    def from_json(cls, data: dict, params: QuotientParams | None = None) -> CodeSpec:
        if params is None:
            params = QuotientParams.from_json(data)
        kind = str(data.get("kind", "")).lower()
        kind = _KIND_ALIASES.get(kind, kind)
        F = params.field
        h = tuple(parse_field_coeff(F, c) for c in data.get("h", []) or [])
        return cls(
            params,
            kind,
            _opt_int(data.get("i")),
            _opt_int(data.get("t")),
            _opt_int(data.get("omega")),
            h,
        )


def _opt_int(v):
    return None if v is None else int(v)


def parse_field_coeff(F: FieldParams, c) -> int:
    """A field element given as a scalar or a Z_p coefficient vector."""
    if isinstance(c, (list, tuple)):
        return F.encode([int(x) for x in c])
    return F.encode([int(c)])


def _h_poly(spec: CodeSpec) -> QuotientPoly:
    return QuotientPoly.from_parts(spec.params, spec.h)


def spec_validate(spec: CodeSpec) -> CodeSpec:
    """Return ``spec`` unchanged or raise ValidationError naming the broken rule."""
    n = spec.params.n
    kind = spec.kind
    if kind not in KINDS:
        raise ValidationError("kind must be one of " + ", ".join(KINDS), repr(kind))
    if kind in (TYPE1_ZERO, TYPE1_UNIT):
        return spec
    i = spec.i
    if i is None:
        raise ValidationError(f"{kind}: i is required")
    if kind == TYPE2:
        if not 0 <= i <= n - 1:
            raise ValidationError("type2: 0 <= i <= p^s - 1", f"i={i}, p^s={n}")
        return spec
    if not 1 <= i <= n - 1:
        raise ValidationError(f"{kind}: 1 <= i <= p^s - 1", f"i={i}, p^s={n}")
    t = spec.t
    if t is None or not 0 <= t < i:
        raise ValidationError(f"{kind}: 0 <= t < i", f"t={t}, i={i}")
    if len(spec.h) > n:
        raise ValidationError(f"{kind}: deg(h) < p^s", f"deg(h)={len(spec.h) - 1}")
    if spec.h and not _h_poly(spec).is_unit():
        raise ValidationError(f"{kind}: h is 0 or a unit", f"h={spec.h_json()}")
    if kind == TYPE3:
        return spec
    w = spec.omega
    if w is None:
        raise ValidationError("type4: omega is required")
    if not w < i:
        raise ValidationError("type4: omega < i", f"omega={w}, i={i}")
    if spec.h:
        if not t < w:
            raise ValidationError("type4: t < omega when h != 0", f"t={t}, omega={w}")
        if len(spec.h) - 1 > w - t - 1:
            raise ValidationError(
                "type4: deg(h) <= omega - t - 1", f"deg(h)={len(spec.h) - 1}, omega={w}, t={t}"
            )
    elif not w > 0:
        raise ValidationError("type4: 0 < omega when h = 0", f"omega={w}")
    return spec


def spec_generators(spec: CodeSpec) -> list[QuotientPoly]:
    spec_validate(spec)
    params = spec.params
    if spec.kind == TYPE1_ZERO:
        return [QuotientPoly.zero(params)]
    if spec.kind == TYPE1_UNIT:
        return [QuotientPoly.one(params)]
    base = QuotientPoly.adic_base(params)
    lead = base ** spec.i
    if spec.kind == TYPE2:
        return [lead.times_u()]
    first = lead + ((base ** spec.t) * _h_poly(spec)).times_u()
    if spec.kind == TYPE3:
        return [first]
    return [first, (base ** spec.omega).times_u()]


@dataclass(frozen=True, eq=False)
class Code:
    """An F-linear subspace of R[x]/(x^n - alpha), held as an RREF basis."""

    params: QuotientParams
    basis: np.ndarray
    pivots: tuple[int, ...]
    spec: CodeSpec | None = None
    label: str = dc_field(default="")

    def __post_init__(self):
        self.basis.setflags(write=False)

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    @property
    def length(self) -> int:
        return self.params.n

    @property
    def cardinality(self) -> int:
        return self.params.field.q**self.dim

    @property
    def enum_bits(self) -> float:
        """log2 of the number of codewords."""
        return self.dim * self.params.m * math.log2(self.params.p)

    @cached_property
    def key(self) -> bytes:
        return repr(self.params).encode() + self.basis.astype(np.int64).tobytes() + str(self.basis.shape).encode()

    def __eq__(self, other) -> bool:
        return isinstance(other, Code) and self.params == other.params and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def rows(self) -> list[QuotientPoly]:
        return [QuotientPoly.from_vector(self.params, r) for r in self.basis]

    def contains(self, f: QuotientPoly) -> bool:
        if f.params != self.params:
            raise ParameterError("polynomial from a different quotient ring")
        res = reduce_against(np.array(f.vector()), self.basis, list(self.pivots), self.params.field)
        return not res.any()

    def is_shift_closed(self) -> bool:
        shifted = [r.shift().vector() for r in self.rows()]
        if not shifted:
            return True
        res = reduce_against(np.array(shifted), self.basis, list(self.pivots), self.params.field)
        return not res.any()

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json() if self.spec else None,
            "label": self.label,
            "params": self.params.to_json(),
            "dim": self.dim,
            "cardinality": self.cardinality,
            "basis": [[list(self.params.field.decode(int(c))) for c in row] for row in self.basis],
        }


def linear_code(params: QuotientParams, vectors, spec: CodeSpec | None = None, label: str = "") -> Code:
    """RREF code spanned by the given polynomials or flat vectors."""
    width = 2 * params.n
    rows = [v.vector() if isinstance(v, QuotientPoly) else tuple(v) for v in vectors]
    M = np.array(rows, dtype=np.int64).reshape(len(rows), width)
    basis, pivots = rref(M, params.field)
    return Code(params, basis, tuple(pivots), spec, label)


def ideal_code(params: QuotientParams, generators: Sequence[QuotientPoly], spec=None, label="") -> Code:
    """F-span of {x^j g, u x^j g}: the ideal generated by ``generators``."""
    spanning = []
    for g in generators:
        cur = g
        for _ in range(params.n):
            spanning.append(cur)
            spanning.append(cur.times_u())
            cur = cur.shift()
    code = linear_code(params, spanning, spec, label)
    if not code.is_shift_closed():
        raise InternalError(f"span of {label or 'generators'} is not closed under the shift")
    return code


def code_span(spec: CodeSpec) -> Code:
    return ideal_code(spec.params, spec_generators(spec), spec, spec.label)


# --- enumeration ------------------------------------------------------------


def _check_cap(bits: float, cap_bits: float, what: str) -> None:
    if bits > cap_bits + 1e-9:
        raise ResourceError(
            f"{what} needs 2^{bits:.2f} items, over the cap of 2^{cap_bits:g}",
            required=bits,
            cap=cap_bits,
        )


def _fp_generators(code: Code) -> np.ndarray:
    """Z_p-basis of the code as digit rows of length 2n*m."""
    F = code.params.field
    p, m = F.p, F.m
    mul = F.tables["mul"]
    rows = []
    for r in code.basis:
        for k in range(m):
            rows.append(mul[p**k, r])  # y^k * row
    if not rows:
        return np.zeros((0, 2 * code.params.n * m), dtype=np.uint8)
    codes = np.array(rows, dtype=np.int64)
    digits = (codes[:, :, None] // (p ** np.arange(m))[None, None, :]) % p
    return digits.reshape(len(rows), -1).astype(np.uint8)


def _all_combos(G: np.ndarray, p: int) -> np.ndarray:
    A = np.zeros((1, G.shape[1]), dtype=np.uint8)
    for g in G:
        A = np.concatenate([(A + c * g) % p for c in range(p)]).astype(np.uint8)
    return A


def digit_blocks(code: Code, cap_bits: float = ENUM_CAP_BITS, block_elems: int = 1 << 23) -> Iterator[np.ndarray]:
    """Every codeword exactly once, as Z_p digit rows, in blocks."""
    _check_cap(code.enum_bits, cap_bits, "enumeration of " + (code.label or "code"))
    p = code.params.p
    G = _fp_generators(code)
    k, L = G.shape
    if k == 0:
        yield np.zeros((1, L), dtype=np.uint8)
        return
    k1 = min(k, max(1, int(14 / math.log2(p))))
    A = _all_combos(G[:k1], p)
    B = _all_combos(G[k1:], p)
    chunk = max(1, block_elems // (A.shape[0] * L))
    for start in range(0, B.shape[0], chunk):
        blk = (B[start : start + chunk, None, :] + A[None, :, :]) % p
        yield blk.reshape(-1, L)


def _weights(code: Code, digits: np.ndarray) -> np.ndarray:
    n, m = code.params.n, code.params.m
    return digits.reshape(digits.shape[0], 2, n, m).any(axis=(1, 3)).sum(axis=1)


def _digits_to_codes(code: Code, digits: np.ndarray) -> np.ndarray:
    n, m, p = code.params.n, code.params.m, code.params.p
    return digits.reshape(digits.shape[0], 2 * n, m).astype(np.int64) @ (p ** np.arange(m))


def code_enumerate(code: Code, cap_bits: float = ENUM_CAP_BITS) -> Iterator[QuotientPoly]:
    for blk in digit_blocks(code, cap_bits):
        for vec in _digits_to_codes(code, blk):
            yield QuotientPoly.from_vector(code.params, vec)


def min_distance_oracle(code: Code, cap_bits: float = ENUM_CAP_BITS) -> int:
    """Smallest weight of a nonzero codeword (0 for the zero code)."""
    best = 0
    for blk in digit_blocks(code, cap_bits):
        w = _weights(code, blk)
        w = w[w > 0]
        if w.size:
            lo = int(w.min())
            best = lo if best == 0 else min(best, lo)
            if best == 1:
                break
    return best


def weight_distribution(code: Code, cap_bits: float = ENUM_CAP_BITS) -> dict[int, int]:
    counts = np.zeros(code.params.n + 1, dtype=np.int64)
    for blk in digit_blocks(code, cap_bits):
        counts += np.bincount(_weights(code, blk), minlength=code.params.n + 1)
    return {w: int(c) for w, c in enumerate(counts) if c}


# --- duality ----------------------------------------------------------------


def _ambient_blocks(params: QuotientParams, chunk: int = 1 << 15) -> Iterator[np.ndarray]:
    q, width = params.field.q, 2 * params.n
    total = q**width
    powers = q ** np.arange(width, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        yield (idx[:, None] // powers[None, :]) % q


def dual_bruteforce(code: Code, cap_bits: float = DUAL_CAP_BITS) -> Code:
    """All words with zero R-valued dot product against every codeword.

    The result lives in R[x]/(x^n - alpha^{-1}).
    """
    params = code.params
    F, n = params.field, params.n
    bits = 2 * n * params.m * math.log2(params.p)
    _check_cap(bits, cap_bits, "dual scan")
    t = F.tables
    add, mul = t["add"], t["mul"]

    def orthogonal(Y: np.ndarray) -> np.ndarray:
        ya, yb = Y[:, :n], Y[:, n:]
        keep = np.ones(Y.shape[0], dtype=bool)
        for row in code.basis:
            a, b = row[:n], row[n:]
            ra = mul[a[None, :], ya]
            rb = add[mul[a[None, :], yb], mul[b[None, :], ya]]
            sa = np.zeros(Y.shape[0], dtype=np.int64)
            sb = np.zeros(Y.shape[0], dtype=np.int64)
            for j in range(n):
                sa = add[sa, ra[:, j]]
                sb = add[sb, rb[:, j]]
            keep &= (sa == 0) & (sb == 0)
        return Y[keep]

    target = params.with_alpha(params.alpha.inverse())
    basis, pivots = span_chunks((orthogonal(Y) for Y in _ambient_blocks(params)), 2 * n, F)
    return Code(target, basis, tuple(pivots), None, f"dual of {code.label}" if code.label else "dual")

