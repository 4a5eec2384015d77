"""Lower bounds on the bandwidth of linear evaluation schemes.

All bounds count base-field symbols, i.e. sum_j dim V_j. For q = 2 that is
the number of bits; multiply by log2(q) for bits in general.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import DegenerateArgument, NotApplicable, TooLargeForExhaustive
from .rscode import RSCode, dual_code_basis
from .scheme_core import find_witness

BRUTE_FORCE_LIMIT = 1 << 16


def obs_terms(n: int, k: int, q: int, t: int) -> dict[str, float]:
    if not n >= k >= 1:
        raise ValueError(f"need n >= k >= 1, got n={n}, k={k}")
    return {
        "k+t-1": float(k + t - 1),
        "cut-set": t * n / (n - k + 1),
        "log": n * math.log(n / (n - k + 1), q),
    }


def obs_lower_bound(n: int, k: int, q: int, t: int) -> float:
    """Bound for non-maximal MDS codes (every RS code qualifies)."""
    return max(obs_terms(n, k, q, t).values())


def _span(F, gens: Sequence[Sequence[int]], n: int):
    if not gens:
        yield (0,) * n
        return
    for coeffs in itertools.product(range(F.Q), repeat=len(gens)):
        v = [0] * n
        for c, g in zip(coeffs, gens):
            if c:
                v = [F.add(a, F.mul(c, b)) for a, b in zip(v, g)]
        yield tuple(v)


def hamming(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x != y for x, y in zip(a, b))


def dstar_bruteforce(code: RSCode, p: Sequence[int], witness: Optional[Sequence[int]] = None) -> int:
    """min over dual codewords y of the distance from a witness w (G^T w = p) to y."""
    F = code.field
    if F.Q ** (code.n - code.k) > BRUTE_FORCE_LIMIT:
        raise TooLargeForExhaustive(f"Q^(n-k) = {F.Q ** (code.n - code.k)} dual codewords")
    w = tuple(witness) if witness is not None else find_witness(code, p)
    return min(hamming(w, y) for y in _span(F, dual_code_basis(code), code.n))


def covering_radius(F, gens: Sequence[Sequence[int]], n: int) -> int:
    """max over F^n of the distance to the nearest word in span(gens)."""
    if F.Q ** n * F.Q ** len(gens) > BRUTE_FORCE_LIMIT * 64:
        raise TooLargeForExhaustive("covering radius search too large")
    words = list(_span(F, gens, n))
    return max(min(hamming(x, y) for y in words) for x in itertools.product(range(F.Q), repeat=n))


def prop_lower_bound(n: int, q: int, Q: int, dstar: int) -> float:
    """Bound from the distance d* between a witness and the dual code."""
    arg = 1 - (1 - 1 / Q) * dstar / n
    if arg <= 0:
        raise DegenerateArgument(f"log argument {arg} is not positive")
    return n * math.log(1 / arg, q)


def mds_bound_raw(n: int, k: int, q: int) -> float:
    if n <= k + 1:
        raise NotApplicable(f"needs n > k + 1, got n={n}, k={k}")
    return n * math.log(n / (n - k + 3), q)


def mds_lower_bound(n: int, k: int, q: int) -> float:
    """Bound for any MDS code, clamped to 0 where it is vacuous."""
    return max(0.0, mds_bound_raw(n, k, q))


@dataclass
class BoundReport:
    n: int
    k: int
    q: int
    t: int
    bounds: dict[str, float] = field(default_factory=dict)
    vacuous: dict[str, bool] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    @property
    def binding(self) -> str:
        return max(self.bounds, key=self.bounds.get)

    @property
    def value(self) -> float:
        return self.bounds[self.binding] if self.bounds else 0.0

    def to_dict(self) -> dict:
        return {
            "code": {"n": self.n, "k": self.k, "q": self.q, "t": self.t},
            "unit": "base-field symbols",
            "bounds": [
                {"name": name, "symbols": v, "bits": v * math.log2(self.q),
                 "vacuous": self.vacuous.get(name, False), "binding": name == self.binding}
                for name, v in self.bounds.items()
            ],
            "binding": self.binding,
            "value": self.value,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def table(self) -> str:
        lines = [f"{'bound':<12} {'symbols':>10}  binding"]
        for name, v in self.bounds.items():
            flag = "*" if name == self.binding else ""
            extra = " (vacuous)" if self.vacuous.get(name) else ""
            lines.append(f"{name:<12} {v:>10.4f}  {flag}{extra}")
        return "\n".join(lines)


def bound_report(n: int, k: int, q: int, t: int, dstar: Optional[int] = None) -> BoundReport:
    rep = BoundReport(n, k, q, t)
    rep.bounds["obs"] = obs_lower_bound(n, k, q, t)
    rep.notes["obs"] = "applies to every RS code (not maximal MDS)"
    try:
        raw = mds_bound_raw(n, k, q)
        rep.bounds["mds"] = max(0.0, raw)
        rep.vacuous["mds"] = raw <= 0
    except NotApplicable as exc:
        rep.notes["mds"] = f"not applicable: {exc}"
    if dstar is not None:
        rep.bounds["prop"] = prop_lower_bound(n, q, q ** t, dstar)
        rep.vacuous["prop"] = dstar == 0
    return rep
