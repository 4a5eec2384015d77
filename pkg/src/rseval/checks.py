"""Verification suites behind ``rseval verify``.

Each suite returns a :class:`SuiteResult`; a suite passes when it ran at
least one case and saw no failures. Randomized suites take a seeded RNG so a
run is reproducible.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .algebra import poly_eval
from .rs_scheme import (
    GoodTriple,
    SchemeParams,
    build_scheme,
    decompose_target,
    evaluate_full,
    main_params,
    mod_star,
    rate_half_params,
    rs_reconstruct,
    sigma,
    sigma_by_reduction,
    single_window_scheme,
)
from .rscode import RSCode, dot, encode
from .scheme_core import (
    SubspaceAssignment,
    decompose_witness,
    generic_reconstruct,
    perp_char_check,
    verify_linear_scheme,
)

EXHAUSTIVE_CASES = 1 << 16


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.cases > 0 and not self.failures

    def fail(self, msg: str) -> None:
        if len(self.failures) < 20:
            self.failures.append(msg)
        else:
            self.failures[-1] = f"... and more (last: {msg})"

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "cases": self.cases,
                "failures": self.failures, "seconds": round(self.seconds, 3)}


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _vectors(F, k: int, rng: random.Random, count: Optional[int]) -> Iterable[tuple[int, ...]]:
    if count is None:
        return itertools.product(range(F.Q), repeat=k)
    return (tuple(rng.randrange(F.Q) for _ in range(k)) for _ in range(count))


@_timed
def rate_half_suite(code: RSCode, rng: random.Random, samples: int = 200) -> SuiteResult:
    """Single-window scheme returns p^T x; exhaustive when small enough."""
    F = code.field
    res = SuiteResult("rate-half correctness")
    T = rate_half_params(F.q, F.t, code.k)
    exhaustive = F.Q ** (2 * code.k) <= EXHAUSTIVE_CASES
    res.name += " (exhaustive)" if exhaustive else f" ({samples} random)"
    count = None if exhaustive else samples
    ps = list(_vectors(F, code.k, rng, count if count is None else max(1, count // 10)))
    for p in ps:
        ws = single_window_scheme(code, p, T)
        xs = _vectors(F, code.k, rng, None if exhaustive else 10)
        for x in xs:
            res.cases += 1
            got = rs_reconstruct(ws, ws.responses(encode(code, x)))
            if got != dot(F, p, x):
                res.fail(f"p={p} x={x}: got {got}")
        if ws.bits() > code.n * F.bits_per_symbol:
            res.fail(f"p={p}: {ws.bits()} bits over budget")
    return res


@_timed
def goodparity_suite(code: RSCode, triple: Optional[GoodTriple] = None) -> SuiteResult:
    """Messages whose node traces all vanish have p^T g = 0."""
    F = code.field
    T = triple or rate_half_params(F.q, F.t, code.k)
    res = SuiteResult("trace-kernel property (exhaustive)")
    lo, hi = T.window(code.k)
    msgs = list(itertools.product(range(F.Q), repeat=code.k))
    words = [encode(code, g) for g in msgs]
    for p in itertools.product(range(F.Q), repeat=code.k):
        if any(c and not lo <= l <= hi for l, c in enumerate(p)):
            continue
        ws = single_window_scheme(code, p, T)
        for g, c in zip(msgs, words):
            res.cases += 1
            if all(F.trace(F.mul(b, cj)) == 0 for b, cj in zip(ws.queries, c)) and dot(F, p, g):
                res.fail(f"p={p} g={g}")
    return res


@_timed
def sigma_suite(code: RSCode) -> SuiteResult:
    F = code.field
    res = SuiteResult("sigma closed form vs reduction")
    for i in range(F.t):
        for j in range(F.Q):
            res.cases += 1
            closed = frozenset({mod_star(j * F.q ** i, F.Q - 1)})
            if closed != sigma_by_reduction(code, i, j) or sigma(code, i, j) != closed:
                res.fail(f"i={i} j={j}")
    return res


def _erasure_set(rng: random.Random, n: int, limit: int) -> frozenset[int]:
    return frozenset(rng.sample(range(n), rng.randrange(limit + 1)))


def _max_erasures(code: RSCode, params: SchemeParams) -> int:
    # absent evaluation points count as erasures
    g = params.gamma * code.field.Q
    most = int(g) - 1 if g.denominator == 1 else int(g)
    return max(0, most - (code.field.Q - code.n))


@_timed
def decomposition_suite(code: RSCode, params: SchemeParams, rng: random.Random, count: int = 200) -> SuiteResult:
    F, k = code.field, code.k
    res = SuiteResult("target decomposition")
    _, triples = main_params(F.q, F.t, params.eps, params.gamma, params.delta, k=k)
    limit = _max_erasures(code, params)
    for _ in range(count):
        p = tuple(rng.randrange(F.Q) for _ in range(k))
        er = _erasure_set(rng, code.n, limit)
        ps, vs = decompose_target(code, p, triples, er)
        res.cases += 1
        total = [0] * k
        for T, pr, v in zip(triples, ps, vs):
            lo, hi = T.window(k)
            total = [F.add(a, b) for a, b in zip(total, pr)]
            if any(c and not lo <= l <= hi for l, c in enumerate(pr)):
                res.fail(f"p={p}: round target outside window")
            if any(c and not T.j_min <= j <= T.j_max for j, c in enumerate(v)):
                res.fail(f"p={p}: v outside [j_min, j_max]")
            for j in range(T.j_min, T.j_max + 1):
                if 0 <= T.d - j < k and (v[j] if j < len(v) else 0) != pr[T.d - j]:
                    res.fail(f"p={p}: forced slot {j} inconsistent")
            if any(poly_eval(F, v, code.points[j]) for j in er):
                res.fail(f"p={p}: v does not vanish on erasures")
        if tuple(total) != p:
            res.fail(f"p={p}: round targets do not sum to p")
    return res


@_timed
def end_to_end_suite(code: RSCode, params: Optional[SchemeParams], rng: random.Random,
                     count: int = 100, erasures: Optional[Iterable[int]] = None) -> SuiteResult:
    F = code.field
    res = SuiteResult("end-to-end evaluation")
    limit = _max_erasures(code, params) if params is not None else 0
    for _ in range(count):
        p = tuple(rng.randrange(F.Q) for _ in range(code.k))
        x = tuple(rng.randrange(F.Q) for _ in range(code.k))
        er = frozenset(erasures) if erasures is not None else _erasure_set(rng, code.n, limit)
        scheme = build_scheme(code, p, params, er)
        resp = scheme.responses(encode(code, x))
        res.cases += 1
        if evaluate_full(scheme, resp) != dot(F, p, x):
            res.fail(f"p={p} x={x} erasures={sorted(er)}")
        if any(j in r for r in resp for j in er):
            res.fail(f"erased node answered (erasures={sorted(er)})")
        if scheme.bits() > scheme.budget() or scheme.bits() > scheme.theorem_bound():
            res.fail(f"p={p}: {scheme.bits()} bits over budget {scheme.budget()}")
    return res


@_timed
def cross_decoder_suite(code: RSCode, rng: random.Random, count: int = 50,
                        triple: Optional[GoodTriple] = None) -> SuiteResult:
    """Interpolation decoder equals the generic trace decoder."""
    F = code.field
    T = triple or rate_half_params(F.q, F.t, code.k)
    lo, hi = T.window(code.k)
    res = SuiteResult("interpolation vs generic decoder")
    for _ in range(count):
        p = tuple(rng.randrange(F.Q) if lo <= l <= hi else 0 for l in range(code.k))
        x = tuple(rng.randrange(F.Q) for _ in range(code.k))
        ws = single_window_scheme(code, p, T)
        V = ws.assignment()
        witness = decompose_witness(code, p, V)
        c = encode(code, x)
        a = rs_reconstruct(ws, ws.responses(c))
        b = generic_reconstruct(witness, ws.responses(c))
        res.cases += 1
        if a != b or a != dot(F, p, x):
            res.fail(f"p={p} x={x}: interpolation {a}, generic {b}")
        if not verify_linear_scheme(code, p, V):
            res.fail(f"p={p}: assignment rejected by the generic check")
    return res


@_timed
def perp_char_suite(code: RSCode, rng: random.Random, count: int = 20) -> SuiteResult:
    F = code.field
    res = SuiteResult("two characterizations of admissible witnesses")
    for _ in range(count):
        bases = []
        for _ in range(code.n):
            dim = rng.randrange(F.t + 1)
            while True:
                b = [rng.randrange(1, F.Q) for _ in range(dim)]
                try:
                    SubspaceAssignment.checked(F, [b])
                    break
                except ValueError:
                    continue
            bases.append(tuple(b))
        res.cases += 1
        if perp_char_check(code, SubspaceAssignment(tuple(bases))) != (True, True):
            res.fail(f"V={bases}")
    return res
