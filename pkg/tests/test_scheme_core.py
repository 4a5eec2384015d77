from __future__ import annotations

import itertools
import random

import pytest

import oracles
from rseval import linalg
from rseval.algebra import make_extension_field
from rseval.errors import MissingResponse, NotAScheme, TooLargeForExhaustive
from rseval.rs_scheme import rate_half_params, single_window_scheme
from rseval.rscode import dual_code_basis, encode, rs_code
from rseval.scheme_core import (
    GenericSchemeWitness,
    NodeResponse,
    SubspaceAssignment,
    decompose_witness,
    find_witness,
    generic_reconstruct,
    node_response,
    pack_symbols,
    perp_char_check,
    unpack_symbols,
    verify_linear_scheme,
)


def rs82():
    return rs_code(2, 3, 2)


def test_find_witness():
    code = rs82()
    F = code.field
    assert find_witness(code, (0, 0)) == (0,) * 8
    rng = random.Random(0)
    for _ in range(100):
        p = (rng.randrange(8), rng.randrange(8))
        w = find_witness(code, p)
        assert tuple(linalg.mat_vec(F, code.generator_t, w)) == p
        assert find_witness(code, p) == w


def test_verify_full_and_zero_assignment():
    code = rs_code(2, 2, 2)
    F = code.field
    full = SubspaceAssignment.full(F, 4)
    for p in itertools.product(range(4), repeat=2):
        assert verify_linear_scheme(code, p, full)
    zero = SubspaceAssignment.zero(4)
    assert not verify_linear_scheme(code, (1, 0), zero)
    assert verify_linear_scheme(code, (0, 0), zero)


def test_verify_rejects_against_brute_force():
    """Decide zeta_i w in C-perp + V by enumerating C-perp and V directly."""
    code = rs_code(2, 2, 2)
    F = code.field
    N = oracles.naive_field_for(F)
    dual = oracles.dual_by_enumeration(N, code.points, code.k)
    rng = random.Random(5)
    for _ in range(15):
        bases = tuple((rng.randrange(1, 4),) if rng.random() < 0.6 else () for _ in range(4))
        V = SubspaceAssignment(bases)
        spans = [{F.mul(c, b[0]) for c in range(2)} if b else {0} for b in bases]
        p = (rng.randrange(4), rng.randrange(4))
        w = find_witness(code, p)
        want = True
        for z in F.basis:
            target = [F.mul(z, x) for x in w]
            ok = any(all(F.add(target[j], F.neg(y[j])) in spans[j] for j in range(4)) for y in dual)
            want &= ok
        assert verify_linear_scheme(code, p, V) == want


def test_decompose_witness_invariants():
    code = rs82()
    F = code.field
    T = rate_half_params(2, 3, 2)
    dual = dual_code_basis(code)
    for p in itertools.product(range(8), repeat=2):
        ws = single_window_scheme(code, p, T)
        V = ws.assignment()
        wit = decompose_witness(code, p, V)
        assert tuple(linalg.mat_vec(F, code.generator_t, wit.w)) == p
        for i, z in enumerate(F.basis):
            assert not any(linalg.mat_vec(F, code.generator_t, wit.z[i]))
            for j in range(code.n):
                v = 0
                for a, beta in zip(wit.tables[i][j], V.bases[j]):
                    v = F.add(v, F.mul(a, beta))
                assert v == F.sub(F.mul(z, wit.w[j]), wit.z[i][j])
    assert dual  # code has a nontrivial dual


def test_decompose_witness_not_a_scheme():
    code = rs_code(2, 2, 2)
    with pytest.raises(NotAScheme):
        decompose_witness(code, (1, 0), SubspaceAssignment.zero(4))


def test_generic_reconstruct_exhaustive_rs82():
    code = rs82()
    F = code.field
    N = oracles.naive_field_for(F)
    T = rate_half_params(2, 3, 2)
    msgs = list(itertools.product(range(8), repeat=2))
    words = [encode(code, m) for m in msgs]
    for p in itertools.product(range(8), repeat=2):
        ws = single_window_scheme(code, p, T)
        wit = decompose_witness(code, p, ws.assignment())
        for m, c in zip(msgs, words):
            resp = [node_response(F, c[j], ws.assignment().bases[j], node=j) for j in range(8)]
            assert generic_reconstruct(wit, resp) == oracles.dot(N, p, m)


def test_generic_reconstruct_missing_response():
    code = rs82()
    ws = single_window_scheme(code, (1, 1), rate_half_params(2, 3, 2))
    wit = decompose_witness(code, (1, 1), ws.assignment())
    c = encode(code, (2, 7))
    resp = {j: node_response(code.field, c[j], ws.assignment().bases[j], node=j) for j in ws.contacted[1:]}
    with pytest.raises(MissingResponse):
        generic_reconstruct(wit, resp)


def test_node_response_examples():
    F = make_extension_field(2, 2)
    alpha = 2
    r = node_response(F, 3, ())
    assert r.values == () and r.bit_count == 0
    assert node_response(F, 0, (1, alpha)).values == (0, 0)
    assert node_response(F, alpha, (alpha,)).values == (1,)


def test_wire_format_packing():
    assert pack_symbols([1, 0, 1], 1) == bytes([0b10100000])
    assert pack_symbols([3, 1], 2) == bytes([0b11010000])
    assert pack_symbols([], 3) == b""
    rng = random.Random(2)
    for width in (1, 2, 3, 4, 7):
        vals = [rng.randrange(1 << width) for _ in range(rng.randrange(12))]
        data = pack_symbols(vals, width)
        assert len(data) == (len(vals) * width + 7) // 8
        assert unpack_symbols(data, len(vals), width) == vals
    r = NodeResponse(4, (2, 0, 3), 2)
    assert NodeResponse.from_wire(r.to_wire(), 2) == r


def test_bandwidth_bits_and_tolerated():
    F = make_extension_field(4, 2)
    V = SubspaceAssignment.checked(F, [(1,), (), (1, 4), ()])
    assert V.dims == (1, 0, 2, 0)
    assert V.bandwidth_bits(F) == 3 * 2
    assert V.tolerated == frozenset({1, 3})
    with pytest.raises(ValueError):
        SubspaceAssignment.checked(F, [(1, 2, 3)])


def test_witness_serialization():
    code = rs82()
    ws = single_window_scheme(code, (3, 5), rate_half_params(2, 3, 2))
    wit = decompose_witness(code, (3, 5), ws.assignment())
    back = GenericSchemeWitness.from_dict(code.field, wit.to_dict())
    assert back == wit
    assert set(wit.to_dict()) == {"p", "w", "z_list", "tables", "bases"}


def test_perp_char_examples():
    code = rs_code(2, 2, 2)
    F = code.field
    assert perp_char_check(code, SubspaceAssignment.full(F, 4)) == (True, True)
    assert perp_char_check(code, SubspaceAssignment.zero(4)) == (True, True)
    rng = random.Random(9)
    for _ in range(5):
        V = SubspaceAssignment(tuple((rng.randrange(1, 4),) for _ in range(4)))
        assert perp_char_check(code, V) == (True, True)
    with pytest.raises(TooLargeForExhaustive):
        perp_char_check(rs_code(2, 4, 4), SubspaceAssignment.zero(16))
