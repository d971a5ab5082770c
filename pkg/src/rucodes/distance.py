"""Closed-form minimum distances and the formula-versus-oracle sweep."""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field as dc_field

from .codes import (
    ENUM_CAP_BITS,
    KINDS,
    TYPE1_UNIT,
    TYPE1_ZERO,
    TYPE2,
    TYPE3,
    TYPE4,
    CodeSpec,
    code_span,
    linear_code,
    min_distance_oracle,
    spec_validate,
)
from .errors import InternalError, ParameterError, ResourceError
from .quotient import AdicCoords, QuotientParams, QuotientPoly, adic_collapse

ZERO = "zero"
UNIT_TRIVIAL = "unit_trivial"
L_BAND = "l_band"
TK_BAND = "tk_band"

CSV_COLUMNS = ("kind", "i", "t", "omega", "h", "dim", "formula", "oracle", "match")


@dataclass(frozen=True)
class DistanceCase:
    case_kind: str
    value: int
    l: int | None = None
    t: int | None = None
    k: int | None = None

    def describe(self) -> str:
        if self.case_kind == L_BAND:
            return f"l={self.l}"
        if self.case_kind == TK_BAND:
            return f"t={self.t},k={self.k}"
        return self.case_kind


def distance_bands(p: int, s: int) -> list[tuple[int, int, DistanceCase]]:
    """Every case of the piecewise formula as (lo, hi, case), inclusive bounds."""
    n = p**s
    bands = [(0, 0, DistanceCase(UNIT_TRIVIAL, 1))]
    for l in range(p - 1):
        bands.append((l * p ** (s - 1) + 1, (l + 1) * p ** (s - 1), DistanceCase(L_BAND, l + 2, l=l)))
    for k in range(1, s):
        for t in range(1, p):
            lo = n - p ** (s - k) + (t - 1) * p ** (s - k - 1) + 1
            hi = n - p ** (s - k) + t * p ** (s - k - 1)
            bands.append((lo, hi, DistanceCase(TK_BAND, (t + 1) * p**k, t=t, k=k)))
    bands.append((n, n, DistanceCase(ZERO, 0)))
    return bands


def torsion_distance_formula(p: int, s: int, i: int) -> DistanceCase:
    """Minimum distance of <(x-1)^i> in GF(p^m)[x]/(x^{p^s} - 1)."""
    n = p**s
    if not 0 <= i <= n:
        raise ParameterError(f"index i must lie in [0, p^s] = [0, {n}] (got {i})")
    hits = [case for lo, hi, case in distance_bands(p, s) if lo <= i <= hi]
    if len(hits) != 1:
        raise InternalError(f"i={i} matches {len(hits)} bands at p={p}, s={s}")
    return hits[0]


def formula_index(spec: CodeSpec) -> int:
    """The index the published formula is evaluated at."""
    n = spec.params.n
    if spec.kind == TYPE1_ZERO:
        return n
    if spec.kind == TYPE1_UNIT:
        return 0
    if spec.kind in (TYPE2, TYPE3):
        return spec.i
    return spec.omega


def spec_distance_formula(spec: CodeSpec) -> int:
    spec_validate(spec)
    if spec.kind == TYPE1_ZERO:
        return 0
    if spec.kind == TYPE1_UNIT:
        return 1
    return torsion_distance_formula(spec.params.p, spec.params.s, formula_index(spec)).value


def torsion_index(spec: CodeSpec) -> int:
    """T with {g : u g in C} = <(alpha0 x - 1)^T>.

    For a monic generator with unit h the annihilator of the leading term
    contributes ``u (x-1)^{n-i+t} h``, so T can drop below i (or omega).
    """
    spec_validate(spec)
    n = spec.params.n
    if spec.kind == TYPE1_ZERO:
        return n
    if spec.kind == TYPE1_UNIT:
        return 0
    if spec.kind == TYPE2:
        return spec.i
    own = spec.i if spec.kind == TYPE3 else spec.omega
    if not spec.h:
        return own
    return min(own, n - spec.i + spec.t)


def distance_via_torsion(spec: CodeSpec) -> int:
    """d(C) = d(<(x-1)^T>): every codeword with nonzero residue outweighs the torsion code."""
    return torsion_distance_formula(spec.params.p, spec.params.s, torsion_index(spec)).value


def field_torsion_oracle(params: QuotientParams, i: int, cap_bits: float = ENUM_CAP_BITS) -> int:
    """Brute-force distance of <(x-1)^i> inside GF(p^m)[x]/(x^n - 1) (residue part only)."""
    cyclic = params.with_alpha(params.field.one)
    n = cyclic.n
    if not 0 <= i <= n:
        raise ParameterError(f"index i must lie in [0, {n}]")
    gen = QuotientPoly.adic_base(cyclic) ** i
    rows, cur = [], gen
    for _ in range(n):
        rows.append(cur)
        cur = cur.shift()
    return min_distance_oracle(linear_code(cyclic, rows, label=f"<(x-1)^{i}> over the field"), cap_bits)


# --- sweep ------------------------------------------------------------------


def _random_unit_coords(params: QuotientParams, seed: int, i: int, t: int) -> list[int]:
    """Adic coordinates (constant first, nonzero) of a seeded unit of degree <= i-t-1."""
    rng = random.Random(f"{seed}:{i}:{t}")
    q = params.field.q
    return [rng.randrange(1, q)] + [rng.randrange(q) for _ in range(i - t - 1)]


def _unit_from_coords(params: QuotientParams, coords: list[int]) -> tuple[int, ...]:
    pad = [0] * (params.n - len(coords))
    f = adic_collapse(AdicCoords(params, tuple(coords + pad), (0,) * params.n))
    return f.a


def admissible_specs(params: QuotientParams, seed: int = 0, h0_omega_le_t: bool = True) -> list[CodeSpec]:
    """All Type 1/2 specs and every Type 3/4 (i, t, omega) with h in {0, 1, random unit}.

    ``h0_omega_le_t`` decides whether Type 4 specs with h = 0 and omega <= t
    are included (t plays no role in those ideals).
    """
    n = params.n
    specs = [CodeSpec(params, TYPE1_ZERO), CodeSpec(params, TYPE1_UNIT)]
    specs += [CodeSpec(params, TYPE2, i=i) for i in range(n)]
    for i in range(1, n):
        for t in range(i):
            coords = _random_unit_coords(params, seed, i, t)
            h_choices = [(), (1,), _unit_from_coords(params, coords)]
            for h in dict.fromkeys(h_choices):
                specs.append(CodeSpec(params, TYPE3, i=i, t=t, h=h))
            for w in range(i):
                type4_h = []
                if w > 0 and (h0_omega_le_t or t < w):
                    type4_h.append(())
                if t < w:
                    type4_h.append((1,))
                    type4_h.append(_unit_from_coords(params, coords[: w - t]))
                for h in dict.fromkeys(type4_h):
                    specs.append(CodeSpec(params, TYPE4, i=i, t=t, omega=w, h=h))
    unique = list(dict.fromkeys(specs))
    for spec in unique:
        spec_validate(spec)
    return sorted(unique, key=lambda sp: sp.sort_key)


@dataclass
class SweepRow:
    spec: CodeSpec
    dim: int
    formula: int
    oracle: int | None
    torsion_index: int
    torsion_formula: int
    skipped: str = ""

    @property
    def match(self) -> bool | None:
        return None if self.oracle is None else self.oracle == self.formula

    def csv_row(self) -> list:
        sp = self.spec
        h = json.dumps(sp.h_json(), separators=(",", ":")) if sp.kind in (TYPE3, TYPE4) else ""
        return [
            sp.kind,
            "" if sp.i is None else sp.i,
            "" if sp.t is None else sp.t,
            "" if sp.omega is None else sp.omega,
            h,
            self.dim,
            self.formula,
            "" if self.oracle is None else self.oracle,
            {None: "skipped", True: "yes", False: "no"}[self.match],
        ]

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "dim": self.dim,
            "formula": self.formula,
            "oracle": self.oracle,
            "match": self.match,
            "torsion_index": self.torsion_index,
            "torsion_formula": self.torsion_formula,
            "skipped": self.skipped or None,
        }


@dataclass
class SweepReport:
    params: QuotientParams
    rows: list[SweepRow]
    seed: int
    enum_cap_bits: float
    notes: list[str] = dc_field(default_factory=list)

    @property
    def mismatches(self) -> list[SweepRow]:
        return [r for r in self.rows if r.match is False]

    @property
    def skipped(self) -> list[SweepRow]:
        return [r for r in self.rows if r.oracle is None]

    @property
    def compared(self) -> list[SweepRow]:
        return [r for r in self.rows if r.oracle is not None]

    @property
    def in_cap_fraction(self) -> float:
        return len(self.compared) / len(self.rows) if self.rows else 1.0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> dict:
        return {
            "specs": len(self.rows),
            "compared": len(self.compared),
            "skipped": len(self.skipped),
            "mismatches": len(self.mismatches),
            "in_cap_fraction": round(self.in_cap_fraction, 6),
            "torsion_mismatches": sum(1 for r in self.compared if r.oracle != r.torsion_formula),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow(r.csv_row())
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "seed": self.seed,
            "enum_cap_bits": self.enum_cap_bits,
            "summary": self.summary(),
            "notes": self.notes,
            "rows": [r.to_json() for r in self.rows],
        }

    def to_text(self) -> str:
        P = self.params
        s = self.summary()
        lines = [
            f"sweep p={P.p} m={P.m} s={P.s} alpha={P.alpha.to_json()} (n={P.n}, seed={self.seed})",
            f"  specs={s['specs']} compared={s['compared']} skipped={s['skipped']} "
            f"mismatches={s['mismatches']} in-cap={100 * s['in_cap_fraction']:.1f}%",
        ]
        for r in self.mismatches:
            lines.append(
                f"  MISMATCH {r.spec.label}: formula={r.formula} oracle={r.oracle} "
                f"(torsion index {r.torsion_index} -> {r.torsion_formula})"
            )
        for r in self.skipped:
            lines.append(f"  skipped {r.spec.label}: {r.skipped}")
        lines += ["  note: " + n for n in self.notes]
        return "\n".join(lines)


def verify_sweep(
    params: QuotientParams,
    enum_cap_bits: float = ENUM_CAP_BITS,
    seed: int = 0,
    h0_omega_le_t: bool = True,
) -> SweepReport:
    """Compare the closed form with brute-force enumeration on every admissible spec."""
    cache: dict[bytes, int] = {}
    rows = []
    for spec in admissible_specs(params, seed, h0_omega_le_t):
        code = code_span(spec)
        oracle, skipped = None, ""
        if code.key in cache:
            oracle = cache[code.key]
        else:
            try:
                oracle = cache[code.key] = min_distance_oracle(code, enum_cap_bits)
            except ResourceError as exc:
                skipped = str(exc)
        T = torsion_index(spec)
        rows.append(
            SweepRow(
                spec,
                code.dim,
                spec_distance_formula(spec),
                oracle,
                T,
                torsion_distance_formula(params.p, params.s, T).value,
                skipped,
            )
        )
    report = SweepReport(params, rows, seed, enum_cap_bits)
    wide = [r for r in report.compared if r.spec.kind == TYPE3 and r.spec.i > params.p - 1]
    if wide:
        bad = sum(1 for r in wide if r.match is False)
        report.notes.append(f"type3 rows with i > p-1: {len(wide)} compared, {bad} mismatched")
    return report


def kinds_in(report: SweepReport) -> dict[str, int]:
    return {k: sum(1 for r in report.rows if r.spec.kind == k) for k in KINDS}
