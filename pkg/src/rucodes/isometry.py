"""The weight-preserving isomorphism f(x) -> f(alpha0 x) from the cyclic ring onto R[x]/(x^n - alpha)."""

from __future__ import annotations

import math
import random
from functools import lru_cache
from dataclasses import dataclass, field as dc_field

import numpy as np

from .codes import ENUM_CAP_BITS, Code, CodeSpec, linear_code, weight_distribution
from .errors import InternalError, ParameterError, ResourceError
from .field import FieldElement
from .quotient import QuotientParams, QuotientPoly

EXHAUSTIVE_CAP_BITS = 20.0


@dataclass(frozen=True)
class IsometryContext:
    source: QuotientParams
    target: QuotientParams
    alpha0: FieldElement
    alpha_q: int
    alpha_r: int

    def to_json(self) -> dict:
        return {
            "alpha": self.target.alpha.to_json(),
            "alpha_q": self.alpha_q,
            "alpha_r": self.alpha_r,
            "alpha0": self.alpha0.to_json(),
        }


def compute_alpha0(params: QuotientParams) -> IsometryContext:
    """alpha0 = alpha^{-p^{m - r}} where s = q m + r, checked against alpha0^{p^s} = alpha^{-1}."""
    if not params.alpha:
        raise ParameterError("alpha must be nonzero")
    a0 = params.alpha0
    if a0 ** params.n != params.alpha.inverse():
        raise InternalError(f"alpha0^(p^s) != alpha^-1 for alpha={params.alpha!r}")
    source = params.with_alpha(params.field.one)
    return IsometryContext(source, params, a0, params.alpha_q, params.alpha_r)


@lru_cache(maxsize=64)
def _powers(ctx: IsometryContext, inverse: bool = False) -> list[int]:
    F = ctx.source.field
    base = ctx.alpha0.value if not inverse else F.inv(ctx.alpha0.value)
    out, cur = [], 1
    for _ in range(ctx.source.n):
        out.append(cur)
        cur = F.mul(cur, base)
    return out


def _scale_coeffs(F, coeffs, powers) -> tuple[int, ...]:
    return tuple(F.mul(c, w) for c, w in zip(coeffs, powers))


def apply_isometry(ctx: IsometryContext, f: QuotientPoly) -> QuotientPoly:
    """c_j -> c_j alpha0^j; no reduction is needed since deg f < n."""
    if f.params != ctx.source:
        raise ParameterError("polynomial is not in the cyclic source ring")
    F, w = ctx.source.field, _powers(ctx)
    return QuotientPoly(ctx.target, _scale_coeffs(F, f.a, w), _scale_coeffs(F, f.b, w))


def invert_isometry(ctx: IsometryContext, g: QuotientPoly) -> QuotientPoly:
    if g.params != ctx.target:
        raise ParameterError("polynomial is not in the target ring")
    F, w = ctx.source.field, _powers(ctx, inverse=True)
    return QuotientPoly(ctx.source, _scale_coeffs(F, g.a, w), _scale_coeffs(F, g.b, w))


@dataclass
class IsometryReport:
    mode: str
    checks: dict[str, int] = dc_field(default_factory=dict)
    failures: dict[str, int] = dc_field(default_factory=dict)
    examples: list[str] = dc_field(default_factory=list)

    def record(self, what: str, ok: bool, detail=None) -> None:
        """``detail`` may be a zero-argument callable, evaluated only on failure."""
        self.checks[what] = self.checks.get(what, 0) + 1
        if not ok:
            self.failures[what] = self.failures.get(what, 0) + 1
            if len(self.examples) < 10:
                self.examples.append(f"{what}: {detail() if callable(detail) else detail}")

    @property
    def total_failures(self) -> int:
        return sum(self.failures.values())

    @property
    def ok(self) -> bool:
        return self.total_failures == 0

    def to_json(self) -> dict:
        return {"mode": self.mode, "checks": self.checks, "failures": self.failures, "examples": self.examples}

    def to_text(self) -> str:
        lines = [f"isometry check ({self.mode})"]
        for k in sorted(self.checks):
            lines.append(f"  {k}: {self.checks[k]} checks, {self.failures.get(k, 0)} failures")
        lines += ["  " + e for e in self.examples]
        return "\n".join(lines)


def _index(F, vecs: np.ndarray) -> np.ndarray:
    q = F.q
    return vecs @ (q ** np.arange(vecs.shape[1], dtype=np.int64))


def isometry_check(
    ctx: IsometryContext, mode: str = "exhaustive", budget: int = 10**5, seed: int = 0
) -> IsometryReport:
    """Additivity, multiplicativity, injectivity and weight preservation of the map.

    ``exhaustive``: every element of the cyclic ring, every sum, and
    ``budget`` seeded product pairs.  ``randomized``: ``budget`` seeded
    pairs for both operations, injectivity over the sampled elements.
    """
    src = ctx.source
    F, n = src.field, src.n
    report = IsometryReport(mode)
    rng = random.Random(seed)
    bits = 2 * n * math.log2(F.q)
    if mode == "exhaustive":
        if bits > EXHAUSTIVE_CAP_BITS:
            raise ResourceError(
                f"exhaustive isometry check needs 2^{bits:.1f} elements (cap 2^{EXHAUSTIVE_CAP_BITS:g})",
                required=bits,
                cap=EXHAUSTIVE_CAP_BITS,
            )
        total = F.q ** (2 * n)
        idx = np.arange(total, dtype=np.int64)
        E = (idx[:, None] // (F.q ** np.arange(2 * n, dtype=np.int64))[None, :]) % F.q
        elems = [QuotientPoly.from_vector(src, row) for row in E]
        images = [apply_isometry(ctx, f) for f in elems]
        for f, g in zip(elems, images):
            report.record("weight", f.weight() == g.weight(), f)
        Phi = np.array([g.vector() for g in images], dtype=np.int64)
        distinct = len(np.unique(_index(F, Phi)))
        report.record("injectivity", distinct == total, f"{total - distinct} collisions")
        # every sum f + g, checked through the image table
        add = F.tables["add"]
        for r in range(total):
            sums = add[E[r][None, :], E]
            lhs = Phi[_index(F, sums)]
            rhs = add[Phi[r][None, :], Phi]
            bad = np.flatnonzero((lhs != rhs).any(axis=1))
            report.checks["additivity"] = report.checks.get("additivity", 0) + total
            if bad.size:
                report.failures["additivity"] = report.failures.get("additivity", 0) + int(bad.size)
                if len(report.examples) < 10:
                    report.examples.append(f"additivity: {elems[r]!r} + {elems[int(bad[0])]!r}")
        sample = lambda: elems[rng.randrange(total)]
    elif mode == "randomized":
        q = F.q

        def sample():
            return QuotientPoly(src, tuple(rng.randrange(q) for _ in range(n)), tuple(rng.randrange(q) for _ in range(n)))

        seen: dict[tuple, tuple] = {}
        for _ in range(budget):
            f, g = sample(), sample()
            pf, pg = apply_isometry(ctx, f), apply_isometry(ctx, g)
            report.record("additivity", apply_isometry(ctx, f + g) == pf + pg, lambda: f"{f!r} + {g!r}")
            report.record("weight", pf.weight() == f.weight(), f)
            for x, y in ((f, pf), (g, pg)):
                prev = seen.setdefault(y.vector(), x.vector())
                if prev != x.vector():
                    report.record("injectivity", False, x)
        report.checks["injectivity"] = len(seen)
        report.failures.setdefault("injectivity", 0)
    else:
        raise ParameterError(f"mode must be 'exhaustive' or 'randomized' (got {mode!r})")
    for _ in range(budget):
        f, g = sample(), sample()
        ok = apply_isometry(ctx, f * g) == apply_isometry(ctx, f) * apply_isometry(ctx, g)
        report.record("multiplicativity", ok, lambda: f"{f!r} * {g!r}")
    return report


def transport_spec(ctx: IsometryContext, spec: CodeSpec) -> CodeSpec:
    """The target-ring descriptor of phi(C): same indices, h(x) -> h(alpha0 x)."""
    if spec.params != ctx.source:
        raise ParameterError("spec is not over the cyclic source ring")
    h = _scale_coeffs(ctx.source.field, spec.h, _powers(ctx)) if spec.h else ()
    return CodeSpec(ctx.target, spec.kind, spec.i, spec.t, spec.omega, h)


def map_code(ctx: IsometryContext, code: Code) -> Code:
    if code.params != ctx.source:
        raise ParameterError("code is not over the cyclic source ring")
    images = [apply_isometry(ctx, r) for r in code.rows()]
    spec = transport_spec(ctx, code.spec) if code.spec is not None else None
    label = f"phi({code.label})" if code.label else "phi(code)"
    if not images:
        return Code(ctx.target, np.zeros((0, 2 * ctx.target.n), dtype=np.int64), (), spec, label)
    image = linear_code(ctx.target, images, spec, label)
    if image.dim != code.dim:
        raise InternalError("isometry image changed the dimension")
    if not image.is_shift_closed():
        raise InternalError("isometry image is not closed under the alpha-shift")
    return image


def compare_histograms(ctx: IsometryContext, code: Code, cap_bits: float = ENUM_CAP_BITS) -> tuple[dict, dict]:
    image = map_code(ctx, code)
    return weight_distribution(code, cap_bits), weight_distribution(image, cap_bits)
