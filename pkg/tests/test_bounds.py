from __future__ import annotations

import itertools
import json
import math
import random
from fractions import Fraction

import pytest

import oracles
from rseval import linalg
from rseval.bounds import (
    bound_report,
    covering_radius,
    dstar_bruteforce,
    mds_lower_bound,
    obs_lower_bound,
    obs_terms,
    prop_lower_bound,
)
from rseval.errors import DegenerateArgument, NotApplicable, TooLargeForExhaustive
from rseval.rs_scheme import SchemeParams, build_scheme
from rseval.rscode import dual_code_basis, rs_code
from rseval.scheme_core import find_witness


def test_obs_examples():
    assert obs_lower_bound(8, 2, 2, 3) == pytest.approx(4.0, abs=1e-12)
    terms = obs_terms(8, 2, 2, 3)
    assert terms["cut-set"] == pytest.approx(24 / 7)
    assert terms["log"] == pytest.approx(8 * math.log2(8 / 7))
    assert obs_lower_bound(16, 8, 2, 4) == pytest.approx(16 * math.log2(16 / 9), abs=1e-9)
    for n, t in [(5, 2), (8, 3)]:
        terms = obs_terms(n, n, 2, t)
        # the log term is n log_q n here, not 0, since n - k + 1 = 1
        assert terms["log"] == pytest.approx(n * math.log2(n))
        assert terms["cut-set"] == t * n
        assert obs_lower_bound(n, n, 2, t) == max(n + t - 1, t * n, n * math.log2(n))


def test_prop_examples():
    assert prop_lower_bound(4, 2, 4, 0) == 0
    assert prop_lower_bound(4, 2, 4, 1) == pytest.approx(4 * math.log2(16 / 13), abs=1e-9)
    vals = [prop_lower_bound(16, 2, 16, d) for d in range(0, 16)]
    assert vals == sorted(vals) and len(set(vals)) == len(vals)
    with pytest.raises(DegenerateArgument):
        prop_lower_bound(2, 2, 4, 3)


def test_mds_examples():
    assert mds_lower_bound(16, 8, 2) == pytest.approx(16 * math.log2(16 / 11), abs=1e-9)
    assert mds_lower_bound(8, 2, 2) == 0.0
    with pytest.raises(NotApplicable):
        mds_lower_bound(8, 7, 2)


def test_dstar_examples():
    code = rs_code(2, 2, 2)
    assert dstar_bruteforce(code, (0, 0)) == 0
    with pytest.raises(TooLargeForExhaustive):
        dstar_bruteforce(rs_code(2, 4, 4), (1, 0, 0, 0))


def test_dstar_witness_independent():
    code = rs_code(2, 2, 2)
    F = code.field
    dual = dual_code_basis(code)
    rng = random.Random(0)
    for _ in range(10):
        p = (rng.randrange(4), rng.randrange(4))
        base = dstar_bruteforce(code, p)
        for _ in range(5):
            u = [0] * 4
            for y in dual:
                c = rng.randrange(4)
                u = [F.add(a, F.mul(c, b)) for a, b in zip(u, y)]
            w = [F.add(a, b) for a, b in zip(find_witness(code, p), u)]
            assert tuple(linalg.mat_vec(F, code.generator_t, w)) == p
            assert dstar_bruteforce(code, p, witness=w) == base


def test_dstar_max_is_dual_covering_radius():
    code = rs_code(2, 2, 2)
    F = code.field
    N = oracles.naive_field_for(F)
    best = max(dstar_bruteforce(code, p) for p in itertools.product(range(4), repeat=2))
    dual = oracles.dual_by_enumeration(N, code.points, code.k)
    radius = max(min(oracles.hamming(x, y) for y in dual) for x in itertools.product(range(4), repeat=4))
    assert best == radius == covering_radius(F, dual_code_basis(code), 4)
    # covering radius of an MDS code of dimension n-k is at least k-1
    assert radius >= code.k - 1


def test_covering_radius_mds_inequality_small():
    for q, t, k in [(2, 2, 1), (2, 2, 2), (2, 2, 3), (2, 3, 6)]:
        code = rs_code(q, t, k)
        F = code.field
        gens = [list(r) for r in code.generator_t]
        if F.Q ** code.n > 1 << 20:
            continue
        assert covering_radius(F, gens, code.n) >= code.n - code.k - 1


def test_bound_report():
    rep = bound_report(8, 2, 2, 3)
    assert rep.binding == "obs" and rep.value == 4.0
    assert rep.vacuous["mds"]
    d = json.loads(rep.to_json())
    assert all(b["symbols"] >= 0 for b in d["bounds"])
    assert d["value"] == max(b["symbols"] for b in d["bounds"])
    rep = bound_report(8, 7, 2, 3, dstar=3)
    assert "mds" not in rep.bounds and "prop" in rep.bounds
    assert "obs" in rep.notes


def test_constructed_schemes_respect_bounds():
    """Both bounds hold for a scheme serving every linear function.

    Such a scheme's bandwidth is the worst case over targets, so the largest
    download seen over the sampled targets must already clear each bound.
    """
    rng = random.Random(1)
    cases = [(rs_code(2, 3, 2), None), (rs_code(2, 4, 4), None), (rs_code(4, 2, 6), None),
             (rs_code(2, 5, 8), None),
             (rs_code(4, 2, 4), SchemeParams(Fraction(3, 4), Fraction(1, 4), Fraction(1, 2)))]
    for code, params in cases:
        F = code.field
        lb = obs_lower_bound(code.n, code.k, F.q, F.t)
        try:
            lb = max(lb, mds_lower_bound(code.n, code.k, F.q))
        except NotApplicable:
            pass
        worst = 0
        for _ in range(40):
            p = [rng.randrange(F.Q) for _ in range(code.k)]
            s = build_scheme(code, p, params)
            worst = max(worst, s.bits() // F.bits_per_symbol)
            assert s.budget() // F.bits_per_symbol >= lb
        assert worst >= lb, (code.n, code.k, worst, lb)
