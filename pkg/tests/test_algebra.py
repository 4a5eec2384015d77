from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_base_for, naive_field_for, naive_trace
from rseval.algebra import (
    BaseField,
    coefficient_weights,
    deg_set,
    interpolate,
    interpolation_coefficient,
    is_irreducible,
    make_extension_field,
    poly_divmod,
    poly_eval,
    poly_eval_many,
    poly_mod_reduce,
    poly_add,
    poly_mul,
    poly_powmod,
    recover_from_traces,
    trace,
    trim,
)
from rseval.errors import DependentBasis, DuplicatePoint, NotPrimePower, ReducibleModulus, ZeroModulus

FIELDS = [(2, 2), (2, 3), (2, 4), (4, 2), (3, 2), (8, 2), (9, 2), (5, 2)]


@pytest.fixture(params=FIELDS, ids=lambda qt: f"GF({qt[0]}^{qt[1]})")
def field(request):
    return make_extension_field(*request.param)


def test_default_moduli():
    assert make_extension_field(2, 2).modulus == (1, 1, 1)
    assert make_extension_field(2, 3).modulus == (1, 1, 0, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        make_extension_field(2, 2, modulus=(1, 0, 1))


def test_not_prime_power():
    for q in (0, 1, 6, 10, 12):
        with pytest.raises(NotPrimePower):
            make_extension_field(q, 2)


def test_t_must_be_at_least_two():
    with pytest.raises(ValueError):
        make_extension_field(2, 1)


def test_multiplication_matches_schoolbook(field):
    N = naive_field_for(field)
    rng = random.Random(1)
    pairs = [(a, b) for a in range(field.Q) for b in range(field.Q)] if field.Q <= 16 else [
        (rng.randrange(field.Q), rng.randrange(field.Q)) for _ in range(500)
    ]
    for a, b in pairs:
        assert field.mul(a, b) == N.mul(a, b)
        assert field.add(a, b) == N.add(a, b)


def test_base_field_matches_schoolbook():
    for q in (2, 3, 4, 8, 9):
        B = BaseField(q)
        N = naive_base_for(make_extension_field(q, 2))
        for a in range(q):
            for b in range(q):
                assert B.mul(a, b) == N.mul(a, b)
                assert B.add(a, b) == N.add(a, b)


def test_field_axioms_small():
    for q, t in [(2, 2), (2, 3), (2, 4), (4, 2), (3, 2)]:
        F = make_extension_field(q, t)
        E = range(F.Q)
        for a in E:
            assert F.add(a, F.neg(a)) == 0
            assert F.pow(a, F.Q) == a
            if a:
                assert F.mul(a, F.inv(a)) == 1
            for b in E:
                assert F.mul(a, b) == F.mul(b, a)
                for c in (1, F.Q - 1):
                    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_multiplicative_group_cyclic(field):
    g = field.generator
    seen = {field.pow(g, e) for e in range(field.Q - 1)}
    assert seen == set(range(1, field.Q))


def test_trace_examples_gf4():
    F = make_extension_field(2, 2)
    alpha = 2
    assert trace(F, 0) == 0
    assert trace(F, 1) == 0
    assert trace(F, alpha) == 1


def test_trace_matches_oracle_and_is_base_linear(field):
    N = naive_field_for(field)
    q, t = field.q, field.t
    xs = range(field.Q) if field.Q <= 81 else random.Random(2).sample(range(field.Q), 60)
    image = set()
    for x in xs:
        tr = field.trace(x)
        assert tr == naive_trace(N, x, q, t)
        assert field.in_base(tr)
        assert field.trace(field.pow(x, q)) == tr
        image.add(tr)
        for lam in range(q):
            assert field.trace(field.mul(lam, x)) == field.base.mul(lam, tr)
    assert image == set(range(q))


def test_trace_additive_gf16():
    F = make_extension_field(2, 4)
    for x in range(16):
        for y in range(16):
            assert F.trace(F.add(x, y)) == F.add(F.trace(x), F.trace(y))


def test_recover_from_traces_examples():
    F = make_extension_field(2, 2)
    assert recover_from_traces(F, [0, 0]) == 0
    assert recover_from_traces(F, [1, 1]) == 2  # alpha
    G = make_extension_field(2, 3)
    for a in range(8):
        assert recover_from_traces(G, G.trace_coords(a)) == a


def test_recover_from_traces_roundtrip(field):
    for a in range(min(field.Q, 200)):
        assert field.recover_from_traces(field.trace_coords(a)) == a


def test_custom_basis():
    F = make_extension_field(2, 3, basis=(3, 5, 7))
    assert F.basis == (3, 5, 7)
    for a in range(8):
        assert F.from_coords(F.coords(a)) == a
        assert F.recover_from_traces(F.trace_coords(a)) == a


def test_dependent_basis_rejected():
    with pytest.raises(DependentBasis):
        make_extension_field(2, 3, basis=(1, 2, 3))


def test_field_descriptor_roundtrip():
    F = make_extension_field(4, 2)
    G = type(F).from_dict(F.to_dict())
    assert G.to_dict() == F.to_dict()
    assert all(G.mul(a, b) == F.mul(a, b) for a in range(16) for b in range(16))


def test_deg_set_examples():
    assert deg_set(()) == set()
    assert deg_set((0, 0, 0, 1, 1)) == {3, 4}
    assert deg_set((0, 1, 0, 2)) == {1, 3}


def test_poly_mod_reduce_examples():
    F = make_extension_field(2, 3)
    mod = (0, 1, 0, 0, 0, 0, 0, 0, 1)  # X^8 - X
    x = lambda e: tuple([0] * e + [1])
    assert poly_mod_reduce(F, x(8), mod) == (0, 1)
    assert poly_mod_reduce(F, x(3), mod) == x(3)
    assert poly_mod_reduce(F, x(14), mod) == x(7)
    with pytest.raises(ZeroModulus):
        poly_mod_reduce(F, x(3), ())


def test_poly_powmod_matches_reduce():
    F = make_extension_field(4, 2)
    mod = tuple([0, F.neg(1)] + [0] * 14 + [1])
    for e in range(0, 60, 7):
        assert poly_powmod(F, (0, 1), e, mod) == poly_mod_reduce(F, tuple([0] * e + [1]), mod)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 15), max_size=12), st.lists(st.integers(0, 15), min_size=1, max_size=6))
def test_divmod_identity(a, m):
    F = make_extension_field(2, 4)
    m = trim(m)
    if not m:
        return
    quo, rem = poly_divmod(F, a, m)
    assert len(rem) < len(m)
    assert poly_add(F, poly_mul(F, quo, m), rem) == trim(a)


def test_interpolate_examples():
    F4 = make_extension_field(2, 2)
    assert interpolate(F4, [(0, 0), (1, 1)]) == (0, 1)
    F8 = make_extension_field(2, 3)
    assert interpolate(F8, [(a, 5) for a in range(8)]) == (5,)
    rng = random.Random(3)
    f = tuple(rng.randrange(8) for _ in range(5)) + (rng.randrange(1, 8),)
    assert interpolate(F8, [(a, poly_eval(F8, f, a)) for a in range(8)]) == f
    with pytest.raises(DuplicatePoint):
        interpolate(F8, [(1, 0), (1, 1)])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 80), min_size=1, max_size=9), st.integers(0, 10))
def test_interpolation_coefficient_matches_full_interpolation(f, d):
    F = make_extension_field(9, 2)
    xs = list(range(0, 40, 3))[: max(len(f), 1) + 2]
    pts = [(x, poly_eval(F, f, x)) for x in xs]
    full = interpolate(F, pts)
    want = full[d] if d < len(full) else 0
    assert interpolation_coefficient(F, pts, d) == want
    assert len(coefficient_weights(F, tuple(xs), d)) == len(xs)


def test_poly_eval_many_matches_horner(field):
    rng = random.Random(4)
    f = tuple(rng.randrange(field.Q) for _ in range(7))
    xs = list(range(min(field.Q, 64)))
    assert poly_eval_many(field, f, xs) == [poly_eval(field, f, x) for x in xs]


def test_irreducibility_against_root_search():
    B = BaseField(2)
    # degree 2 and 3 polynomials are irreducible iff they have no root
    for code in range(8):
        f = tuple(int(b) for b in format(code, "03b")[::-1]) + (1,)
        has_root = any(poly_eval(B, f, a) == 0 for a in range(2))
        assert is_irreducible(B, f) == (not has_root)


def test_large_field_builds():
    F = make_extension_field(2, 10)
    assert F.Q == 1024
    assert F.pow(F.generator, 1023) == 1
    assert F.bits_per_symbol == 1 and F.bits_per_element == 10
