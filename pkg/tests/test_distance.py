from __future__ import annotations

import csv
import io

import pytest

from conftest import make_params
from rucodes.codes import TYPE1_UNIT, TYPE1_ZERO, TYPE2, TYPE3, TYPE4, CodeSpec, code_span, min_distance_oracle
from rucodes.distance import (
    CSV_COLUMNS,
    L_BAND,
    TK_BAND,
    UNIT_TRIVIAL,
    ZERO,
    admissible_specs,
    distance_bands,
    distance_via_torsion,
    field_torsion_oracle,
    formula_index,
    kinds_in,
    spec_distance_formula,
    torsion_distance_formula,
    torsion_index,
    verify_sweep,
)
from rucodes.errors import ParameterError, ValidationError
from rucodes.quotient import QuotientPoly

PRIMES = (2, 3, 5, 7, 11, 13)


def spec(params, kind, i=None, t=None, omega=None, h=()):
    return CodeSpec(params, kind, i, t, omega, tuple(h))


def test_torsion_formula_examples():
    assert torsion_distance_formula(2, 2, 0).value == 1
    assert torsion_distance_formula(2, 2, 0).case_kind == UNIT_TRIVIAL
    assert torsion_distance_formula(2, 2, 3).value == 4
    assert torsion_distance_formula(3, 2, 5).value == 3
    c = torsion_distance_formula(3, 2, 9)
    assert (c.value, c.case_kind) == (0, ZERO)


def test_torsion_formula_example_oracles():
    assert field_torsion_oracle(make_params(2, 1, 2), 3) == 4
    assert field_torsion_oracle(make_params(3, 1, 2), 5) == 3
    assert field_torsion_oracle(make_params(3, 1, 2), 9) == 0
    assert field_torsion_oracle(make_params(3, 1, 2), 0) == 1


def test_torsion_formula_range():
    with pytest.raises(ParameterError):
        torsion_distance_formula(2, 2, 5)
    with pytest.raises(ParameterError):
        torsion_distance_formula(2, 2, -1)


@pytest.mark.parametrize("p,m,s", [(2, 1, 1), (2, 1, 2), (2, 1, 3), (2, 1, 4), (3, 1, 1), (3, 1, 2), (5, 1, 1), (7, 1, 1), (2, 2, 2), (3, 2, 1)])
def test_torsion_formula_matches_field_oracle(p, m, s):
    params = make_params(p, m, s)
    for i in range(params.n + 1):
        assert field_torsion_oracle(params, i) == torsion_distance_formula(p, s, i).value, i


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_bands_partition(p, s):
    n = p**s
    bands = sorted(distance_bands(p, s), key=lambda b: b[0])
    assert bands[0][0] == 0 and bands[-1][1] == n
    for (lo, hi, _), (lo2, _, _) in zip(bands, bands[1:]):
        assert lo <= hi and lo2 == hi + 1
    for lo, hi, case in bands:
        if case.case_kind == L_BAND:
            assert 0 <= case.l <= p - 2 and case.value == case.l + 2
        elif case.case_kind == TK_BAND:
            assert 1 <= case.t <= p - 1 and 1 <= case.k <= s - 1
            assert case.value == (case.t + 1) * p**case.k
    if s == 1:
        assert all(c.case_kind != TK_BAND for _, _, c in bands)


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_every_index_hits_one_case_and_is_monotone(p, s):
    n = p**s
    values = [torsion_distance_formula(p, s, i).value for i in range(n + 1)]
    assert all(a <= b for a, b in zip(values[:-1], values[1:-1]))
    assert values[-1] == 0 and values[0] == 1
    assert values[n - 1] == n  # <(x-1)^{n-1}> is the repetition code


def test_spec_formula_examples():
    p212 = make_params(2, 1, 2)
    assert spec_distance_formula(spec(p212, TYPE2, 1)) == 2
    assert spec_distance_formula(spec(p212, TYPE3, 3, 1, h=[1])) == 4
    p312 = make_params(3, 1, 2)
    assert spec_distance_formula(spec(p312, TYPE4, 4, 0, 2, [1])) == 2
    for params in (p212, p312, make_params(2, 2, 1, 2)):
        assert spec_distance_formula(spec(params, TYPE2, 0)) == 1
        assert spec_distance_formula(spec(params, TYPE1_ZERO)) == 0
        assert spec_distance_formula(spec(params, TYPE1_UNIT)) == 1
    with pytest.raises(ValidationError):
        spec_distance_formula(spec(p212, TYPE2, 4))


def test_spec_formula_example_oracles():
    p212 = make_params(2, 1, 2)
    assert min_distance_oracle(code_span(spec(p212, TYPE2, 1))) == 2
    p312 = make_params(3, 1, 2)
    assert min_distance_oracle(code_span(spec(p312, TYPE4, 4, 0, 2, [1]))) == 2


def test_type3_closed_form_overshoots_when_annihilator_term_is_shorter():
    # C = <(x-1)^3 + u(x-1)> over F_2 + uF_2, length 4.  (x-1) * g = u (x-1)^2
    # since (x-1)^4 = 0, and u(x-1)^2 = u(1 + x^2) has weight 2.
    p212 = make_params(2, 1, 2)
    sp = spec(p212, TYPE3, 3, 1, h=[1])
    code = code_span(sp)
    b = QuotientPoly.adic_base(p212)
    word = b * (b**3 + b.times_u())
    assert word == QuotientPoly.from_parts(p212, [], [1, 0, 1])
    assert code.contains(word) and word.weight() == 2
    assert min_distance_oracle(code) == 2
    assert spec_distance_formula(sp) == 4
    assert torsion_index(sp) == 2 and distance_via_torsion(sp) == 2


def test_formula_is_constacyclic_invariant():
    cyclic, twisted = (
        {(sp.kind, sp.i, sp.t, sp.omega, spec_distance_formula(sp)) for sp in admissible_specs(make_params(3, 1, 2, a))}
        for a in (1, 2)
    )
    assert cyclic == twisted


def test_formula_depends_only_on_index():
    params = make_params(3, 1, 2)
    seen: dict[tuple, set] = {}
    for sp in admissible_specs(params):
        seen.setdefault((sp.kind, formula_index(sp)), set()).add(spec_distance_formula(sp))
    assert all(len(v) == 1 for v in seen.values())


@pytest.mark.parametrize("pms", [(2, 1, 2, 1), (2, 1, 3, 1), (3, 1, 1, 1), (3, 1, 2, 1), (2, 2, 2, 1), (3, 1, 1, 2), (5, 1, 1, 3)])
def test_oracle_depends_on_torsion_index(pms):
    # the oracle varies with t and h at fixed i, but only through T
    report = verify_sweep(make_params(*pms), enum_cap_bits=18)
    by_T: dict[int, set] = {}
    for r in report.compared:
        by_T.setdefault(r.torsion_index, set()).add(r.oracle)
        assert r.oracle == distance_via_torsion(r.spec)
    assert all(len(v) == 1 for v in by_T.values())


def test_mismatch_rows_are_exactly_the_shortened_torsion_rows():
    report = verify_sweep(make_params(2, 1, 3))
    for r in report.compared:
        shortened = r.torsion_index < formula_index(r.spec)
        if not shortened:
            assert r.match
        if r.match is False:
            assert shortened and r.spec.h and r.spec.kind in (TYPE3, TYPE4)


def test_sweep_smallest_case_agrees():
    report = verify_sweep(make_params(2, 1, 1))
    assert report.ok and not report.skipped
    assert [r.spec.kind for r in report.rows].count(TYPE2) == 2
    assert kinds_in(report) == {TYPE1_ZERO: 1, TYPE1_UNIT: 1, TYPE2: 2, TYPE3: 2, TYPE4: 0}


def test_sweep_admissible_set():
    params = make_params(2, 1, 2)
    specs = admissible_specs(params)
    assert len(specs) == len(set(specs))
    assert specs == sorted(specs, key=lambda s: s.sort_key)
    assert admissible_specs(params, seed=0) == specs
    narrow = admissible_specs(params, h0_omega_le_t=False)
    dropped = set(specs) - set(narrow)
    assert dropped and all(s.kind == TYPE4 and not s.h and s.omega <= s.t for s in dropped)
    assert set(narrow) <= set(specs)


def test_sweep_reports_skips_over_cap():
    report = verify_sweep(make_params(2, 1, 2), enum_cap_bits=3)
    assert report.skipped
    assert all(r.spec and r.dim > 3 for r in report.skipped)
    assert report.in_cap_fraction < 1
    assert "cap" in report.skipped[0].skipped
    assert all(r.match is None for r in report.skipped)


def test_sweep_outputs():
    report = verify_sweep(make_params(2, 1, 2))
    rows = list(csv.reader(io.StringIO(report.to_csv())))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == len(report.rows) + 1
    by_label = {r.spec.label: r for r in report.rows}
    bad = by_label["type3 i=3 t=1 h=[1]"]
    assert (bad.formula, bad.oracle, bad.match) == (4, 2, False)
    data = report.to_json()
    assert data["summary"]["mismatches"] == len(report.mismatches)
    assert data["summary"]["torsion_mismatches"] == 0
    assert "MISMATCH type3 i=3 t=1 h=[1]" in report.to_text()
    assert any("i > p-1" in note for note in report.notes)
    again = verify_sweep(make_params(2, 1, 2))
    assert again.to_csv() == report.to_csv()
