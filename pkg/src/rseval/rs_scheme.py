"""Low-bandwidth evaluation of linear functions on Reed-Solomon codewords.

A window scheme picks integers (j_min, j_max, d) and a polynomial v supported
on monomials j_min..j_max whose coefficient at j equals p_{d-j}. Node j is
asked for the single base-field symbol tr(v(a_j) c_j). Interpolating those
symbols gives tr(v(X) f(X)) reduced modulo prod (X - a_j), and when the triple
is *good* its X^d coefficient is exactly p^T f.

The full scheme splits an arbitrary target into s windows, each handled by
one window scheme, with every v vanishing on the erased nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from . import linalg
from .algebra import (
    FieldExtension,
    Poly,
    deg_set,
    interpolation_coefficient,
    poly_eval_many,
    poly_from_roots,
    poly_powmod,
    trim,
)
from .errors import (
    BadTripleShape,
    DimensionTooLarge,
    InsufficientFreedom,
    MissingResponse,
    NotGood,
    ParamConstraintViolated,
    SupportOutOfWindow,
    TooManyErasures,
)
from .rscode import RSCode, dot, rs_code
from .scheme_core import NodeResponse, Responses, SubspaceAssignment, _by_node, node_response


# ---------------------------------------------------------------------------
# sigma and good triples


def mod_star(x: int, m: int) -> int:
    """x reduced into {1..m}, except that 0 stays 0."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if x == 0:
        return 0
    r = x % m
    return r if r else m


@lru_cache(maxsize=32)
def vanishing_polynomial(code: RSCode) -> Poly:
    return poly_from_roots(code.field, code.points)


def sigma_by_reduction(code: RSCode, i: int, j: int) -> frozenset[int]:
    """degSet of X^(j q^i) mod prod (X - a) by repeated squaring."""
    F = code.field
    r = poly_powmod(F, (0, 1), j * F.q ** i, vanishing_polynomial(code))
    return frozenset(deg_set(r))


def sigma(code: RSCode, i: int, j: int) -> frozenset[int]:
    F = code.field
    if code.is_full_length:
        return frozenset({mod_star(j * F.q ** i, F.Q - 1)})
    return sigma_by_reduction(code, i, j)


@dataclass(frozen=True)
class GoodTriple:
    j_min: int
    j_max: int
    d: int

    def window(self, k: int) -> tuple[int, int]:
        return max(0, self.d - self.j_max), min(k - 1, self.d - self.j_min)

    def as_list(self) -> list[int]:
        return [self.j_min, self.j_max, self.d]


def window(triple: GoodTriple, k: int) -> tuple[int, int]:
    return triple.window(k)


def is_good(code: RSCode, j_min: int, j_max: int, d: int) -> bool:
    if min(j_min, j_max, d) < 1 or j_min > j_max or j_min >= d:
        raise BadTripleShape(f"need positive j_min <= j_max and j_min < d, got ({j_min}, {j_max}, {d})")
    n, k, t = code.n, code.k, code.field.t
    if not (d < n and j_max + k - 1 < n):
        return False
    span = range(j_min, j_max + k)
    for i in range(1, t):
        if any(d in sigma(code, i, j) for j in span):
            return False
    return any(d in sigma(code, 0, j) for j in span)


# ---------------------------------------------------------------------------
# consistent polynomials


def _vanishing_fill(code: RSCode, fixed: Mapping[int, int], free: Sequence[int],
                    erasures: Iterable[int]) -> Poly:
    """Polynomial with the ``fixed`` coefficients, free slots chosen to vanish on ``erasures``.

    Free slots are pivoted in ascending order; unused freedom is zero.
    """
    F = code.field
    erasures = sorted(set(erasures))
    coeffs = dict(fixed)
    if erasures:
        if len(erasures) > len(free):
            raise InsufficientFreedom(f"{len(erasures)} erasures but only {len(free)} free coefficients")
        A, rhs = [], []
        for e in erasures:
            a = code.points[e]
            A.append([F.pow(a, j) for j in free])
            acc = 0
            for j, c in fixed.items():
                if c:
                    acc = F.add(acc, F.mul(c, F.pow(a, j)))
            rhs.append(F.neg(acc))
        sol = linalg.solve(F, A, rhs)
        if sol is None:
            raise InsufficientFreedom("free coefficients cannot cancel the forced part on the erasures")
        coeffs.update(zip(free, sol))
    top = max(coeffs, default=-1)
    return trim(coeffs.get(j, 0) for j in range(top + 1))


def consistent_polynomial(code: RSCode, p: Sequence[int], triple: GoodTriple,
                          erasures: Iterable[int] = ()) -> Poly:
    k = code.k
    lo, hi = triple.window(k)
    if len(p) != k:
        raise ValueError(f"target has length {len(p)}, expected {k}")
    if any(c and not lo <= l <= hi for l, c in enumerate(p)):
        raise SupportOutOfWindow(f"target support must lie in [{lo}, {hi}]")
    fixed, free = {}, []
    for j in range(triple.j_min, triple.j_max + 1):
        if 0 <= triple.d - j <= k - 1:
            fixed[j] = p[triple.d - j]
        else:
            free.append(j)
    return _vanishing_fill(code, fixed, free, erasures)


# ---------------------------------------------------------------------------
# one window


@dataclass(frozen=True, eq=False)
class WindowScheme:
    code: RSCode
    triple: GoodTriple
    p: tuple[int, ...]
    v: Poly
    erasures: frozenset[int]
    queries: tuple[int, ...]  # v(a_j) per node; V_j is its B-span

    @classmethod
    def from_polynomial(cls, code: RSCode, triple: GoodTriple, p: Sequence[int], v: Poly,
                        erasures: Iterable[int] = ()) -> "WindowScheme":
        queries = tuple(poly_eval_many(code.field, v, code.points))
        erasures = frozenset(erasures)
        if any(queries[j] for j in erasures):
            raise ValueError("v does not vanish on the erasure set")
        return cls(code, triple, tuple(p), tuple(v), erasures, queries)

    @property
    def contacted(self) -> tuple[int, ...]:
        return tuple(j for j, b in enumerate(self.queries) if b)

    def assignment(self) -> SubspaceAssignment:
        return SubspaceAssignment(tuple((b,) if b else () for b in self.queries))

    def bits(self) -> int:
        return len(self.contacted) * self.code.field.bits_per_symbol

    def respond(self, j: int, c_j: int) -> NodeResponse:
        b = self.queries[j]
        return node_response(self.code.field, c_j, (b,) if b else (), node=j)

    def responses(self, codeword: Sequence[int]) -> dict[int, NodeResponse]:
        return {j: self.respond(j, codeword[j]) for j in self.contacted}


def single_window_scheme(code: RSCode, p: Sequence[int], triple: GoodTriple,
                         erasures: Iterable[int] = ()) -> WindowScheme:
    if not is_good(code, triple.j_min, triple.j_max, triple.d):
        raise NotGood(f"{triple} is not good for this code")
    erasures = frozenset(erasures)
    v = consistent_polynomial(code, p, triple, erasures)
    return WindowScheme.from_polynomial(code, triple, p, v, erasures)


def rs_reconstruct(ws: WindowScheme, responses: Responses) -> int:
    """X^d coefficient of the interpolant through (a_j, tr(v(a_j) c_j))."""
    got = _by_node(responses)
    code = ws.code
    points = []
    for j, a in enumerate(code.points):
        if ws.queries[j]:
            if j not in got:
                raise MissingResponse(j)
            m = got[j].values[0]
        else:
            m = 0
        points.append((a, m))
    return interpolation_coefficient(code.field, points, ws.triple.d)


# ---------------------------------------------------------------------------
# parameters


def rate_half_bound(q: int, t: int) -> Fraction:
    Q = q ** t
    return Fraction(Q * (q // 2) * (q - 1), q * q)


def rate_half_params(q: int, t: int, k: int) -> GoodTriple:
    if k > rate_half_bound(q, t):
        raise DimensionTooLarge(f"k = {k} exceeds {rate_half_bound(q, t)} for q={q}, t={t}")
    h = q // 2
    T = GoodTriple(h * q ** (t - 2) + 1, q ** t - k, h * q ** (t - 1))
    if T.j_min >= T.d or T.j_min > T.j_max:
        # only GF(4) over GF(2) hits this: j_min = d = 2
        raise BadTripleShape(f"rate-1/2 triple {T.as_list()} is degenerate for q={q}, t={t}")
    return T


@dataclass(frozen=True)
class SchemeParams:
    eps: Fraction
    gamma: Fraction
    delta: Fraction

    def __post_init__(self):
        for name in ("eps", "gamma", "delta"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def rounds(self) -> int:
        x = 1 / (self.eps - self.delta)
        return math.ceil(x) - 1

    def to_dict(self) -> dict:
        return {name: [getattr(self, name).numerator, getattr(self, name).denominator]
                for name in ("eps", "gamma", "delta")} | {"s": self.rounds}

    @classmethod
    def from_dict(cls, d: dict) -> "SchemeParams":
        return cls(*(Fraction(*d[name]) for name in ("eps", "gamma", "delta")))


def param_violations(q: int, t: int, params: SchemeParams, k: Optional[int] = None) -> list[str]:
    eps, gamma, delta = params.eps, params.gamma, params.delta
    Q = q ** t
    bad = []
    if not eps > 0:
        bad.append("ε > 0")
    if not gamma > 0:
        bad.append("γ > 0")
    if not delta >= gamma + Fraction(1, q):
        bad.append(f"δ ≥ γ + 1/q ({delta} < {gamma + Fraction(1, q)})")
    if not eps > delta:
        bad.append(f"ε > δ ({eps} ≤ {delta})")
    elif ((eps - delta) * q).denominator != 1:
        bad.append(f"(ε − δ)·q ∈ ℤ ((ε − δ)·q = {(eps - delta) * q})")
    cap = Q * (1 - eps)
    if k is None:
        if cap.denominator != 1 or cap < 1:
            bad.append(f"k = Q(1 − ε) ∈ ℤ, k ≥ 1 (Q(1 − ε) = {cap})")
    elif not 1 <= k <= cap:
        bad.append(f"1 ≤ k ≤ Q(1 − ε) (k = {k}, Q(1 − ε) = {cap})")
    return bad


def main_params(q: int, t: int, eps, gamma, delta, k: Optional[int] = None) -> tuple[int, list[GoodTriple]]:
    """Number of rounds s and the s good triples of the multi-window construction."""
    params = SchemeParams(eps, gamma, delta)
    bad = param_violations(q, t, params, k)
    if bad:
        raise ParamConstraintViolated(bad)
    eps, gamma, delta = params.eps, params.gamma, params.delta
    Q = q ** t
    if k is None:
        k = int(Q * (1 - eps))
    s = params.rounds
    step = int((eps - delta) * q)
    triples = [GoodTriple(step * r * q ** (t - 2) + 1, Q - k, step * r * q ** (t - 1)) for r in range(1, s + 1)]

    code = rs_code(q, t, k)
    checks = []
    if not delta >= (1 - eps) / (q - 1) + gamma / (1 - Fraction(1, q)):
        checks.append("δ ≥ (1 − ε)/(q − 1) + γ/(1 − 1/q)")
    for r, T in enumerate(triples, 1):
        if not is_good(code, T.j_min, T.j_max, T.d):
            checks.append(f"round {r} triple {T.as_list()} is good")
    if triples[0].d - triples[0].j_max > 0:
        checks.append("d(1) − j_max(1) ≤ 0")
    if triples[-1].d - triples[-1].j_min < k - 1 + Q * gamma:
        checks.append("d(s) − j_min(s) ≥ k − 1 + Qγ")
    for r in range(s - 1):
        a, b = triples[r], triples[r + 1]
        if (a.d - a.j_min) - (b.d - b.j_max) < Q * gamma - 1:
            checks.append(f"round gap {r + 1}->{r + 2} ≥ Qγ − 1")
    if checks:
        raise ParamConstraintViolated(checks)
    return s, triples


# ---------------------------------------------------------------------------
# splitting a target across rounds


def decompose_target(code: RSCode, p: Sequence[int], triples: Sequence[GoodTriple],
                     erasures: Iterable[int] = ()) -> tuple[list[tuple[int, ...]], list[Poly]]:
    F, k = code.field, code.k
    if len(p) != k:
        raise ValueError(f"target has length {len(p)}, expected {k}")
    erasures = frozenset(erasures)
    s = len(triples)
    windows = [T.window(k) for T in triples]
    if windows[0][0] != 0:
        raise ValueError("first window must start at 0")
    covered = [0] * k
    ps, vs = [], []
    for r, T in enumerate(triples):
        lo, hi = windows[r]
        pr = [0] * k
        try:
            if r < s - 1:
                nxt = windows[r + 1][0]
                for l in range(lo, nxt):
                    pr[l] = F.sub(p[l], covered[l])
                fixed, free = {}, []
                for j in range(T.j_min, T.j_max + 1):
                    if lo <= T.d - j < nxt:
                        fixed[j] = pr[T.d - j]
                    else:
                        free.append(j)
                v = _vanishing_fill(code, fixed, free, erasures)
                for l in range(nxt, hi + 1):
                    j = T.d - l
                    pr[l] = v[j] if j < len(v) else 0
            else:
                for l in range(lo, k):
                    pr[l] = F.sub(p[l], covered[l])
                v = consistent_polynomial(code, pr, T, erasures)
        except InsufficientFreedom as exc:
            raise TooManyErasures(f"round {r + 1}: {exc}") from None
        covered = [F.add(a, b) for a, b in zip(covered, pr)]
        ps.append(tuple(pr))
        vs.append(v)
    return ps, vs


# ---------------------------------------------------------------------------
# the full scheme


@dataclass(frozen=True, eq=False)
class EvaluationScheme:
    """One target, s window schemes on the full-length code, one erasure set.

    ``code`` is the stored code; node j of it is node ``code.points[j]`` of
    the full-length ``ambient`` code the rounds are built on. Evaluation
    points missing from a shorter code are folded into the erasure set.
    """

    code: RSCode
    ambient: RSCode
    params: Optional[SchemeParams]
    triples: tuple[GoodTriple, ...]
    rounds: tuple[WindowScheme, ...]
    failures: frozenset[int]
    p: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.rounds)

    @property
    def ambient_erasures(self) -> frozenset[int]:
        return self.rounds[0].erasures

    def node_queries(self, r: int) -> dict[int, int]:
        """Round r: node index of ``code`` -> field element whose B-span is V_j."""
        qs = self.rounds[r].queries
        return {j: qs[a] for j, a in enumerate(self.code.points) if qs[a]}

    def contacted(self) -> tuple[int, ...]:
        return tuple(sorted({j for r in range(self.s) for j in self.node_queries(r)}))

    def ledger(self) -> list[dict[int, int]]:
        b = self.code.field.bits_per_symbol
        return [{j: b for j in self.node_queries(r)} for r in range(self.s)]

    def bits(self) -> int:
        return sum(ws.bits() for ws in self.rounds)

    def budget(self) -> int:
        """Bits the scheme may use: one base symbol per surviving node per round."""
        return (self.code.n - len(self.failures)) * self.s * self.code.field.bits_per_symbol

    def theorem_bound(self) -> Fraction:
        alive = self.code.n - len(self.failures)
        b = self.code.field.bits_per_symbol
        if self.params is None:
            return Fraction(alive * b)
        return alive * (1 / (self.params.eps - self.params.delta)) * b

    def respond(self, r: int, j: int, c_j: int) -> NodeResponse:
        resp = self.rounds[r].respond(self.code.points[j], c_j)
        return NodeResponse(j, resp.values, resp.bits_per_symbol)

    def responses(self, codeword: Sequence[int]) -> list[dict[int, NodeResponse]]:
        """What every contacted node returns, per round, for a stored codeword."""
        return [{j: self.respond(r, j, codeword[j]) for j in self.node_queries(r)} for r in range(self.s)]

    def to_dict(self) -> dict:
        return {
            "code": self.code.to_dict(),
            "params": None if self.params is None else self.params.to_dict(),
            "erasures": sorted(self.failures),
            "target": list(self.p),
            "rounds": [
                {"triple": T.as_list(), "p": list(ws.p), "v": list(ws.v)}
                for T, ws in zip(self.triples, self.rounds)
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EvaluationScheme":
        code = RSCode.from_dict(d["code"])
        params = None if d["params"] is None else SchemeParams.from_dict(d["params"])
        failures = frozenset(d["erasures"])
        ambient, amb_erasures = _ambient(code, failures)
        triples, rounds = [], []
        for rd in d["rounds"]:
            T = GoodTriple(*rd["triple"])
            triples.append(T)
            rounds.append(WindowScheme.from_polynomial(ambient, T, rd["p"], trim(rd["v"]), amb_erasures))
        scheme = cls(code, ambient, params, tuple(triples), tuple(rounds), failures, tuple(d["target"]))
        _check_rounds(scheme)
        return scheme


def _ambient(code: RSCode, failures: Iterable[int]) -> tuple[RSCode, frozenset[int]]:
    F = code.field
    if code.points == tuple(range(F.Q)):
        ambient = code
    else:
        ambient = RSCode.full_length(F, code.k)
    present = set(code.points)
    erased = {code.points[j] for j in failures} | {a for a in range(F.Q) if a not in present}
    return ambient, frozenset(erased)


def _check_rounds(scheme: EvaluationScheme) -> None:
    F, k = scheme.code.field, scheme.code.k
    total = [0] * k
    for T, ws in zip(scheme.triples, scheme.rounds):
        lo, hi = T.window(k)
        if any(c and not lo <= l <= hi for l, c in enumerate(ws.p)):
            raise ValueError("round target outside its window")
        for j in range(len(ws.v)):
            if ws.v[j] and not T.j_min <= j <= T.j_max:
                raise ValueError("v has a monomial outside [j_min, j_max]")
        for j in range(T.j_min, T.j_max + 1):
            if 0 <= T.d - j < k:
                vj = ws.v[j] if j < len(ws.v) else 0
                if vj != ws.p[T.d - j]:
                    raise ValueError("v is not consistent with its round target")
        total = [F.add(a, b) for a, b in zip(total, ws.p)]
    if tuple(total) != tuple(scheme.p):
        raise ValueError("round targets do not sum to the target")


def build_scheme(code: RSCode, p: Sequence[int], params: Optional[SchemeParams] = None,
                 erasures: Iterable[int] = ()) -> EvaluationScheme:
    """Scheme for p^T x tolerating ``erasures`` (node indices of ``code``).

    With ``params`` the multi-window construction is used; without, the
    single-window rate-1/2 construction.
    """
    F = code.field
    q, t, Q = F.q, F.t, F.Q
    failures = frozenset(erasures)
    if any(not 0 <= j < code.n for j in failures):
        raise ValueError("erasure index out of range")
    ambient, amb_erasures = _ambient(code, failures)
    if params is not None:
        if not len(amb_erasures) < params.gamma * Q:
            raise TooManyErasures(
                f"{len(amb_erasures)} failed or absent nodes, need fewer than γQ = {params.gamma * Q}"
            )
        _, triples = main_params(q, t, params.eps, params.gamma, params.delta, k=code.k)
    else:
        triples = [rate_half_params(q, t, code.k)]
    ps, vs = decompose_target(ambient, p, triples, amb_erasures)
    rounds = tuple(
        WindowScheme.from_polynomial(ambient, T, pr, vr, amb_erasures) for T, pr, vr in zip(triples, ps, vs)
    )
    scheme = EvaluationScheme(code, ambient, params, tuple(triples), rounds, failures, tuple(p))
    if scheme.bits() > scheme.budget() or scheme.bits() > scheme.theorem_bound():
        raise AssertionError("bandwidth ledger exceeds the guaranteed bound")
    return scheme


def evaluate_full(scheme: EvaluationScheme, responses: Sequence[Responses]) -> int:
    """Sum of the per-round reconstructions, i.e. p^T x."""
    F = scheme.code.field
    acc = 0
    for r, ws in enumerate(scheme.rounds):
        got = _by_node(responses[r]) if r < len(responses) else {}
        by_ambient = {scheme.code.points[j]: resp for j, resp in got.items()}
        acc = F.add(acc, rs_reconstruct(ws, by_ambient))
    return acc


def direct_value(code: RSCode, p: Sequence[int], message: Sequence[int]) -> int:
    return dot(code.field, p, message)
