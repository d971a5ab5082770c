"""Command-line front end.

Exit status: 0 success / all match, 1 verification mismatch, 2 invalid
input or a refused (over-cap) computation.

Every global flag can also be set through an environment variable named
``RUCODES_<FLAG>`` (``RUCODES_P``, ``RUCODES_ALPHA``, ``RUCODES_ENUM_CAP``, ...);
an explicit flag wins over the environment.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .codes import (
    DUAL_CAP_BITS,
    ENUM_CAP_BITS,
    CodeSpec,
    code_enumerate,
    code_span,
    dual_bruteforce,
    min_distance_oracle,
    spec_generators,
    weight_distribution,
)
from .distance import (
    CSV_COLUMNS,
    admissible_specs,
    distance_bands,
    field_torsion_oracle,
    spec_distance_formula,
    torsion_distance_formula,
    verify_sweep,
)
from .errors import ParameterError, ResourceError, ValidationError
from .field import field_make
from .isometry import compute_alpha0, isometry_check, map_code
from .quotient import QuotientParams

ENV_PREFIX = "RUCODES_"
FORMATS = ("text", "json", "csv")

EPILOG = f"""\
CSV layouts:
  verify   {",".join(CSV_COLUMNS)}
  table    i,distance,case,oracle
  weights  weight,count
  enumerate weight,a_0..a_(n-1),b_0..b_(n-1)   (integer field codes)
Field elements are coefficient lists, lowest degree first: --alpha 1,1 is y+1.
Caps are log2 budgets: --enum-cap 22 allows 2^22 codewords.
Environment overrides use the prefix {ENV_PREFIX} (e.g. {ENV_PREFIX}P=3).
"""


@dataclass
class RunConfig:
    p: int = 2
    m: int = 1
    s: int = 1
    alpha: tuple[int, ...] = (1,)
    enum_cap: float = ENUM_CAP_BITS
    dual_cap: float = DUAL_CAP_BITS
    seed: int = 0
    output_format: str = "text"
    output_path: str | None = None

    def __post_init__(self):
        if self.enum_cap <= 0 or self.dual_cap <= 0:
            raise ParameterError("caps must be positive")
        if self.output_format not in FORMATS:
            raise ParameterError(f"format must be one of {', '.join(FORMATS)}")

    def params(self) -> QuotientParams:
        F = field_make(self.p, self.m)
        return QuotientParams(F, self.s, F(list(self.alpha)))


def parse_field_list(text: str) -> tuple[int, ...]:
    text = text.strip().strip("[]")
    return tuple(int(v) for v in text.replace(" ", "").split(",") if v != "")


# --- commands (each returns exit status and the rendered output) -------------


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_field(cfg: RunConfig) -> tuple[int, str]:
    F = field_make(cfg.p, cfg.m)
    if cfg.output_format == "json":
        return 0, _dump_json(F.to_json())
    if cfg.output_format == "csv":
        return 0, _csv(["p", "m", "modulus"], [[F.p, F.m, " ".join(map(str, F.modulus))]])
    mod = " + ".join(f"{c}y^{k}" for k, c in enumerate(F.modulus) if c)
    return 0, f"GF({F.p}^{F.m}), q = {F.q}, modulus {mod}\n"


def load_spec(spec_text: str, cfg: RunConfig) -> CodeSpec:
    try:
        data = json.loads(spec_text)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"spec is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ParameterError("spec must be a JSON object")
    for key in ("p", "m", "s"):
        data.setdefault(key, getattr(cfg, key))
    data.setdefault("alpha", list(cfg.alpha))
    return CodeSpec.from_json(data)


def cmd_code(action: str, spec_text: str, cfg: RunConfig) -> tuple[int, str]:
    spec = load_spec(spec_text, cfg)
    code = code_span(spec)
    fmt = cfg.output_format
    F = spec.params.field
    if action == "build":
        if fmt == "json":
            out = code.to_json()
            out["generators"] = [g.to_json() for g in spec_generators(spec)]
            return 0, _dump_json(out)
        if fmt == "csv":
            n = spec.params.n
            header = [f"a_{j}" for j in range(n)] + [f"b_{j}" for j in range(n)]
            return 0, _csv(header, [[int(c) for c in row] for row in code.basis])
        lines = [
            f"{spec.label}  over R[x]/(x^{spec.params.n} - {spec.params.alpha!r}), {F!r}",
            f"generators: {', '.join(repr(g) for g in spec_generators(spec))}",
            f"dim = {code.dim}, |C| = {code.cardinality}",
            "basis:",
        ] + [f"  {r!r}" for r in code.rows()]
        return 0, "\n".join(lines) + "\n"
    if action == "distance":
        formula = spec_distance_formula(spec)
        oracle = min_distance_oracle(code, cfg.enum_cap)  # over the cap -> ResourceError -> exit 2
        status = 0 if oracle == formula else 1
        if fmt == "json":
            return status, _dump_json({"spec": spec.to_json(), "dim": code.dim, "formula": formula, "oracle": oracle})
        if fmt == "csv":
            return status, _csv(["formula", "oracle"], [[formula, oracle]])
        return status, f"{spec.label}\nformula {formula}\noracle {oracle}\n"
    if action == "weights":
        dist = weight_distribution(code, cfg.enum_cap)
        if fmt == "json":
            return 0, _dump_json({str(w): c for w, c in dist.items()})
        if fmt == "csv":
            return 0, _csv(["weight", "count"], sorted(dist.items()))
        return 0, "".join(f"{w}: {c}\n" for w, c in sorted(dist.items()))
    if action == "enumerate":
        words = list(code_enumerate(code, cfg.enum_cap))
        if fmt == "json":
            return 0, _dump_json([w.to_json() for w in words])
        if fmt == "csv":
            n = spec.params.n
            header = ["weight"] + [f"a_{j}" for j in range(n)] + [f"b_{j}" for j in range(n)]
            return 0, _csv(header, [[w.weight(), *w.vector()] for w in words])
        return 0, "".join(f"{w!r}\n" for w in words)
    if action == "dual":
        dual = dual_bruteforce(code, cfg.dual_cap)
        n = spec.params.n
        product_ok = code.cardinality * dual.cardinality == (F.q**2) ** n
        if fmt == "json":
            out = dual.to_json()
            out["product_rule"] = product_ok
            out["shift_closed"] = dual.is_shift_closed()
            return 0, _dump_json(out)
        if fmt == "csv":
            header = [f"a_{j}" for j in range(n)] + [f"b_{j}" for j in range(n)]
            return 0, _csv(header, [[int(c) for c in row] for row in dual.basis])
        lines = [
            f"dual of {spec.label}: lives in R[x]/(x^{n} - {dual.params.alpha!r})",
            f"|C| = {code.cardinality}, |C^perp| = {dual.cardinality}, |R|^n = {(F.q ** 2) ** n}"
            f" -> product rule {'holds' if product_ok else 'FAILS'}",
            f"closed under the alpha^-1 shift: {dual.is_shift_closed()}",
            "basis:",
        ] + [f"  {r!r}" for r in dual.rows()]
        return 0, "\n".join(lines) + "\n"
    raise ParameterError(f"unknown code action {action!r}")


def cmd_verify(cfg: RunConfig, h0_omega_le_t: bool = True) -> tuple[int, str]:
    report = verify_sweep(cfg.params(), cfg.enum_cap, cfg.seed, h0_omega_le_t)
    status = 0 if report.ok else 1
    if cfg.output_format == "json":
        return status, _dump_json(report.to_json())
    if cfg.output_format == "csv":
        return status, report.to_csv()
    return status, report.to_text() + "\n"


def cmd_table(cfg: RunConfig, with_oracle: bool = True) -> tuple[int, str]:
    params = cfg.params()
    p, s, n = params.p, params.s, params.n
    rows = []
    status = 0
    for i in range(n + 1):
        case = torsion_distance_formula(p, s, i)
        oracle = None
        if with_oracle:
            try:
                oracle = field_torsion_oracle(params, i, cfg.enum_cap)
            except ResourceError:
                oracle = None
        if oracle is not None and oracle != case.value:
            status = 1
        rows.append((i, case, oracle))
    bands = distance_bands(p, s)
    summary = [
        {"family": "<0>", "distance": 0},
        {"family": "<1>", "distance": 1},
        {"family": "<u b^i>, 0 <= i <= p^s - 1", "distance": "D(i)"},
        {"family": "<b^i + u b^t h>, 1 <= i <= p^s - 1, 0 <= t < i, h = 0 or a unit", "distance": "D(i)"},
        {"family": "<b^i + u b^t h, u b^omega>, deg(h) <= omega - t - 1", "distance": "D(omega)"},
    ]
    if cfg.output_format == "json":
        return status, _dump_json(
            {
                "params": params.to_json(),
                "rows": [
                    {"i": i, "distance": c.value, "case": c.case_kind, "l": c.l, "t": c.t, "k": c.k, "oracle": o}
                    for i, c, o in rows
                ],
                "bands": [{"lo": lo, "hi": hi, "case": c.describe(), "distance": c.value} for lo, hi, c in bands],
                "summary": summary,
            }
        )
    if cfg.output_format == "csv":
        return status, _csv(
            ["i", "distance", "case", "oracle"],
            [[i, c.value, c.describe(), "" if o is None else o] for i, c, o in rows],
        )
    b = "x - 1" if params.is_cyclic else f"({params.alpha0!r})x - 1"
    lines = [f"D(i) = d(<(x-1)^i>) in GF({p}^{params.m})[x]/(x^{n} - 1);  b = {b}", "   i  D(i)  case        oracle"]
    for i, c, o in rows:
        lines.append(f"{i:4d}  {c.value:4d}  {c.describe():10s}  {'-' if o is None else o}")
    lines.append("bands:")
    for lo, hi, c in bands:
        lines.append(f"  {lo}..{hi}: {c.describe()} -> {c.value}")
    lines.append("by ideal type:")
    for entry in summary:
        lines.append(f"  {entry['family']}: {entry['distance']}")
    return status, "\n".join(lines) + "\n"


def cmd_isometry(cfg: RunConfig, mode: str = "exhaustive", budget: int = 10**5, map_codes: bool = False) -> tuple[int, str]:
    ctx = compute_alpha0(cfg.params())
    report = isometry_check(ctx, mode, budget, cfg.seed)
    mapped = []
    if map_codes:
        for spec in admissible_specs(ctx.source, cfg.seed):
            code = code_span(spec)
            try:
                w_src = weight_distribution(code, cfg.enum_cap)
            except ResourceError:
                continue
            image = map_code(ctx, code)
            w_img = weight_distribution(image, cfg.enum_cap)
            mapped.append({"spec": spec.label, "dim": code.dim, "match": w_src == w_img})
    bad_maps = sum(1 for r in mapped if not r["match"])
    status = 0 if report.ok and bad_maps == 0 else 1
    if cfg.output_format == "json":
        return status, _dump_json({"context": ctx.to_json(), "check": report.to_json(), "mapped_codes": mapped})
    if cfg.output_format == "csv":
        rows = [[k, report.checks[k], report.failures.get(k, 0)] for k in sorted(report.checks)]
        return status, _csv(["check", "count", "failures"], rows)
    lines = [
        f"alpha = {ctx.target.alpha!r}: s = {ctx.alpha_q}*{cfg.m} + {ctx.alpha_r}, alpha0 = {ctx.alpha0!r}",
        report.to_text(),
    ]
    if map_codes:
        lines.append(f"mapped {len(mapped)} cyclic codes, {bad_maps} histogram mismatches")
    return status, "\n".join(lines) + "\n"


# --- argument parsing ---------------------------------------------------------


def _env(name: str, default):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rucodes",
        description="Constacyclic codes of length p^s over GF(p^m) + u GF(p^m): construction, distances, verification.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--p", type=int, default=_env("p", 2), help="characteristic (prime)")
    ap.add_argument("--m", type=int, default=_env("m", 1), help="extension degree")
    ap.add_argument("--s", type=int, default=_env("s", 1), help="length exponent, n = p^s")
    ap.add_argument("--alpha", default=_env("alpha", "1"), help="constacyclic constant as coefficient list")
    ap.add_argument("--format", choices=FORMATS, default=_env("format", "text"))
    ap.add_argument("--out", default=_env("out", None), help="write output to this file")
    ap.add_argument("--seed", type=int, default=_env("seed", 0))
    ap.add_argument("--enum-cap", type=float, default=_env("enum_cap", ENUM_CAP_BITS), help="log2 codeword budget")
    ap.add_argument("--dual-cap", type=float, default=_env("dual_cap", DUAL_CAP_BITS), help="log2 ambient budget")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("field", help="show the coefficient field")

    code = sub.add_parser("code", help="work with one code descriptor")
    code.add_argument("action", choices=("build", "distance", "enumerate", "dual", "weights"))
    src = code.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec", help='JSON, e.g. {"kind":"type3","i":3,"t":1,"h":[1]}')
    src.add_argument("--spec-file", help="file holding the JSON descriptor")

    ver = sub.add_parser("verify", help="formula vs brute force over every admissible code")
    ver.add_argument(
        "--exclude-h0-omega-le-t",
        action="store_true",
        help="drop type4 specs with h = 0 and omega <= t",
    )

    tab = sub.add_parser("table", help="distance table D(i) for i = 0..p^s")
    tab.add_argument("--no-oracle", action="store_true")

    iso = sub.add_parser("isometry", help="check the cyclic -> alpha-constacyclic isometry")
    iso.add_argument("--mode", choices=("exhaustive", "randomized"), default="exhaustive")
    iso.add_argument("--budget", type=int, default=10**5)
    iso.add_argument("--map-codes", action="store_true", help="also compare weight histograms of mapped codes")
    return ap


def run(argv: list[str] | None = None) -> tuple[int, str]:
    return execute(build_parser().parse_args(argv))


def execute(args: argparse.Namespace) -> tuple[int, str]:
    try:
        cfg = RunConfig(
            p=int(args.p),
            m=int(args.m),
            s=int(args.s),
            alpha=parse_field_list(str(args.alpha)),
            enum_cap=float(args.enum_cap),
            dual_cap=float(args.dual_cap),
            seed=int(args.seed),
            output_format=args.format,
            output_path=args.out,
        )
        if args.command == "field":
            return cmd_field(cfg)
        cfg.params()  # validate p, m, s, alpha up front
        if args.command == "code":
            text = args.spec
            if args.spec_file:
                with open(args.spec_file) as fh:
                    text = fh.read()
            return cmd_code(args.action, text, cfg)
        if args.command == "verify":
            return cmd_verify(cfg, not args.exclude_h0_omega_le_t)
        if args.command == "table":
            return cmd_table(cfg, not args.no_oracle)
        if args.command == "isometry":
            return cmd_isometry(cfg, args.mode, args.budget, args.map_codes)
    except ValidationError as exc:
        return 2, f"error: invalid code descriptor ({exc.constraint}): {exc}\n"
    except ResourceError as exc:
        return 2, f"error: over budget: {exc}\n"
    except (ParameterError, ValueError, OSError) as exc:
        return 2, f"error: {exc}\n"
    return 2, "error: unknown command\n"


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    status, text = execute(args)
    if args.out and status != 2:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        (sys.stderr if status == 2 else sys.stdout).write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
