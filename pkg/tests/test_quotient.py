from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_params
from rucodes.errors import ParameterError
from rucodes.quotient import (
    AdicCoords,
    QuotientParams,
    QuotientPoly,
    adic_collapse,
    adic_expand,
    all_polys,
    qp_arith,
    qp_is_unit,
    qp_shift,
    qp_weight,
)
from rucodes.ring import RuElement

# (p, m, s, alpha) with alpha an integer code
SETS = [
    (2, 1, 1, 1), (2, 1, 2, 1), (2, 1, 3, 1), (2, 2, 1, 1), (2, 2, 2, 1),
    (3, 1, 1, 1), (3, 1, 2, 1), (3, 2, 1, 1), (5, 1, 1, 1),
    (3, 1, 1, 2), (3, 1, 2, 2), (2, 2, 2, 2), (2, 2, 2, 3), (5, 1, 1, 2), (5, 1, 1, 4), (3, 2, 1, 5),
]


def P(p, m=1, s=1, alpha=1):
    return make_params(p, m, s, alpha)


def poly(params, a=(), b=()):
    return QuotientPoly.from_parts(params, a, b)


def random_poly(params, rng):
    q, n = params.field.q, params.n
    return QuotientPoly(params, tuple(rng.randrange(q) for _ in range(n)), tuple(rng.randrange(q) for _ in range(n)))


def test_params_invariants():
    params = P(3, 1, 2)
    assert params.n == 9
    with pytest.raises(ParameterError):
        P(2, 1, 1, 0)
    with pytest.raises(ParameterError):
        P(2, 1, 8)  # 256 > 128
    assert QuotientParams.make(params.field, 5, 1, max_length=243).n == 243
    with pytest.raises(ParameterError):
        P(2, 1, 0)


def test_params_json():
    params = P(2, 2, 2, 2)
    data = params.to_json()
    assert data == {"p": 2, "m": 2, "modulus": [1, 1, 1], "s": 2, "alpha": [0, 1]}
    assert QuotientParams.from_json(data) == params
    assert QuotientParams.from_json({"p": 3, "s": 1, "alpha": 2}) == P(3, 1, 1, 2)


def test_arith_examples():
    p211 = P(2)
    x = QuotientPoly.x(p211)
    assert qp_arith("mul", x, x) == QuotientPoly.one(p211)
    p311 = P(3, 1, 1, 2)
    x = QuotientPoly.x(p311)
    assert x * x * x == poly(p311, [2])
    p212 = P(2, 1, 2)
    assert (QuotientPoly.x(p212) + QuotientPoly.one(p212)) ** 4 == QuotientPoly.zero(p212)


def test_mismatched_params():
    with pytest.raises(ParameterError):
        QuotientPoly.one(P(2)) + QuotientPoly.one(P(3))
    with pytest.raises(ParameterError):
        QuotientPoly.one(P(3)) * QuotientPoly.one(P(3, 1, 1, 2))


def test_shift_examples():
    p212 = P(2, 1, 2)
    assert qp_shift(poly(p212, [1, 0, 0, 0])).a == (0, 1, 0, 0)
    p311 = P(3, 1, 1, 2)
    assert qp_shift(poly(p311, [0, 0, 1])).a == (2, 0, 0)
    f = poly(p212, [1, 1, 0, 1], [0, 1, 1, 0])
    g = f
    for _ in range(p212.n):
        g = qp_shift(g)
    assert g == f


@pytest.mark.parametrize("spec", SETS[:6] + SETS[9:12])
def test_shift_is_multiplication_by_x(spec):
    params = P(*spec)
    rng = random.Random(1)
    x = QuotientPoly.x(params)
    for _ in range(50):
        f = random_poly(params, rng)
        assert qp_shift(f) == x * f


def test_adic_expand_examples():
    p211 = P(2)
    assert adic_expand(QuotientPoly.x(p211)).a == (1, 1)
    p212 = P(2, 1, 2)
    assert adic_expand(QuotientPoly.one(p212)).a == (1, 0, 0, 0)
    b = QuotientPoly.adic_base(p212)
    c = adic_expand(b**3)
    assert c.a == (0, 0, 0, 1) and c.b == (0, 0, 0, 0)


def test_adic_collapse_examples():
    p212 = P(2, 1, 2)
    zeros = (0,) * 4
    assert adic_collapse(AdicCoords(p212, (1, 0, 0, 0), zeros)) == QuotientPoly.one(p212)
    assert adic_collapse(AdicCoords(p212, (0, 0, 0, 1), zeros)) == poly(p212, [1, 1, 1, 1])
    p211 = P(2)
    assert adic_collapse(adic_expand(QuotientPoly.x(p211))) == QuotientPoly.x(p211)


def test_adic_coords_from_ring_elements():
    params = P(3, 1, 1)
    F = params.field
    c = AdicCoords.from_ru(params, [RuElement.of(F, 1, 2), RuElement.of(F, 0, 1)])
    assert c.coords[0] == RuElement.of(F, 1, 2)
    assert c.coords[2] == RuElement.zero(F)
    b = QuotientPoly.adic_base(params)
    assert adic_collapse(c) == poly(params, [1], [2]) + b.times_u()


def test_is_unit_examples():
    p212 = P(2, 1, 2)
    b = QuotientPoly.adic_base(p212)
    u = QuotientPoly.one(p212).times_u()
    assert qp_is_unit(QuotientPoly.x(p212))
    assert not qp_is_unit(u + b)
    assert qp_is_unit(QuotientPoly.one(p212) + b + u)


@pytest.mark.parametrize("spec", [(2, 1, 1, 1), (2, 1, 2, 1), (2, 2, 1, 1), (2, 2, 1, 2)])
def test_is_unit_matches_inverse_search(spec):
    params = P(*spec)
    els = list(all_polys(params))
    one = QuotientPoly.one(params)
    units = set()
    for f in els:
        if f in units:
            continue
        for g in els:
            if f * g == one:
                units.update((f, g))
                break
    assert {f for f in els if qp_is_unit(f)} == units
    # the units are exactly the complement of the maximal ideal <u, b>
    q, n = params.field.q, params.n
    assert len(units) == q ** (2 * n) - q ** (2 * n - 1)


def test_weight_examples():
    p212 = P(2, 1, 2)
    assert qp_weight(QuotientPoly.zero(p212)) == 0
    assert qp_weight(poly(p212, [], [1, 1, 1, 1])) == 4
    assert qp_weight(poly(p212, [1], [1, 0, 1])) == 2


@pytest.mark.parametrize("spec", SETS)
def test_nilpotency_index(spec):
    params = P(*spec)
    b = QuotientPoly.adic_base(params)
    assert (b ** (params.n - 1)).is_zero() is False
    assert (b**params.n).is_zero()


def _plain_mul(F, f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


@pytest.mark.parametrize("p,m,s", [(2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 2, 1), (7, 1, 1)])
def test_freshmans_dream(p, m, s):
    params = P(p, m, s)
    F = params.field
    minus_one = F.neg(1)
    for k in range(s + 1):
        e = p**k
        f = [1]
        for _ in range(e):
            f = _plain_mul(F, f, [minus_one, 1])  # x - 1, unreduced
        assert f == [minus_one] + [0] * (e - 1) + [1]
        reduced = QuotientPoly.adic_base(params) ** e
        assert reduced == QuotientPoly.monomial(params, e) - QuotientPoly.one(params)


def _residue_weights(f):
    return sum(1 for c in f.a if c), sum(1 for c in f.b if c)


@pytest.mark.parametrize("spec", [(2, 1, 1, 1), (2, 1, 2, 1), (2, 2, 1, 1), (3, 1, 1, 1), (3, 1, 1, 2)])
def test_round_trip_and_weight_bound_exhaustive(spec):
    params = P(*spec)
    for f in all_polys(params):
        assert adic_collapse(adic_expand(f)) == f
        assert qp_weight(f) >= max(_residue_weights(f))


@pytest.mark.parametrize("spec", [(3, 1, 2, 1), (3, 1, 2, 2), (5, 1, 1, 3), (2, 2, 2, 3), (2, 1, 4, 1)])
def test_round_trip_sampled(spec):
    params = P(*spec)
    rng = random.Random(7)
    for _ in range(300):
        f = random_poly(params, rng)
        assert adic_collapse(adic_expand(f)) == f


def test_unit_criterion_is_residue_constant():
    # the constant adic coordinate of the residue part decides invertibility
    # units: Lagrange with |U| = q^(2n-1) (q-1); nonunits: <u, b>^(n+1) = 0
    params = P(3, 1, 2)
    q, n = params.field.q, params.n
    rng = random.Random(3)
    for _ in range(40):
        f = random_poly(params, rng)
        if qp_is_unit(f):
            assert f * f ** (q ** (2 * n - 1) * (q - 1) - 1) == QuotientPoly.one(params)
        else:
            assert (f ** (n + 1)).is_zero()
    f = random_poly(params, rng)
    nonunit = f - QuotientPoly.from_parts(params, [adic_expand(f).a[0]])
    assert not qp_is_unit(nonunit) and (nonunit ** (n + 1)).is_zero()


def test_json_round_trip():
    params = P(2, 2, 1, 2)
    f = poly(params, [1, 3], [2])
    data = f.to_json()
    assert data[0] == {"a": [1, 0], "b": [0, 1]}
    assert QuotientPoly.from_json(params, data) == f


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SETS), st.randoms(use_true_random=False))
def test_ring_laws(spec, rng):
    params = P(*spec)
    f, g, h = (random_poly(params, rng) for _ in range(3))
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f - f == QuotientPoly.zero(params)
    assert adic_collapse(adic_expand(f)) == f
