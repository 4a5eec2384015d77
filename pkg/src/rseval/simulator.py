"""An in-process storage cluster with exact download accounting.

Every node stores one symbol per data block. Evaluations go through the
node read interface, which refuses to serve failed nodes, so a scheme that
touched a failed node would raise instead of silently succeeding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .algebra import poly_eval
from .errors import (
    CoefficientNotInBase,
    DimensionTooLarge,
    InsufficientSurvivors,
    LengthMismatch,
    NodeUnavailable,
)
from .rs_scheme import EvaluationScheme, SchemeParams, build_scheme, evaluate_full
from .rscode import RSCode, dot, encode, naive_recover, systematic_encode
from .scheme_core import NodeResponse


class StorageNode:
    def __init__(self, index: int, symbols: Sequence[int] = ()):
        self.index = index
        self.symbols = list(symbols)
        self.failed = False
        self.reads = 0

    def read(self, block: int) -> int:
        if self.failed:
            raise NodeUnavailable(self.index)
        self.reads += 1
        return self.symbols[block]

    def answer(self, field, block: int, basis: Sequence[int],
               local: Optional[Callable[[int], int]] = None) -> NodeResponse:
        """tr(c * beta) for each beta, after an optional local map of the stored symbol."""
        c = self.read(block)
        if local is not None:
            c = local(c)
        values = tuple(field.trace(field.mul(c, beta)) for beta in basis)
        return NodeResponse(self.index, values, field.bits_per_symbol)


@dataclass
class Cluster:
    code: RSCode
    nodes: list[StorageNode]
    blocks: int = 0
    systematic: bool = False
    failed: frozenset[int] = frozenset()
    ledger: dict[int, int] = field(default_factory=dict)  # node -> bits downloaded so far
    upload_bits: int = 0
    _schemes: dict = field(default_factory=dict, repr=False)

    @property
    def info_positions(self) -> tuple[int, ...]:
        return tuple(range(self.code.k))

    @property
    def survivors(self) -> list[int]:
        return [j for j in range(self.code.n) if j not in self.failed]

    def total_bits(self) -> int:
        return sum(self.ledger.values())

    def _credit(self, node: int, bits: int) -> None:
        if node in self.failed:  # unreachable: failed nodes refuse reads
            raise NodeUnavailable(node)
        if bits:
            self.ledger[node] = self.ledger.get(node, 0) + bits

    def snapshot(self) -> dict:
        return {
            "code": self.code.to_dict(),
            "M": self.blocks,
            "systematic": self.systematic,
            "failed": sorted(self.failed),
            "ledger_bits": self.total_bits(),
        }

    def to_json(self) -> str:
        return json.dumps(self.snapshot(), indent=2)


@dataclass(frozen=True)
class EvalResult:
    value: int | tuple[int, ...]
    bits_downloaded: int
    bits_naive: int
    nodes_contacted: tuple[int, ...]
    bits_budget: Optional[int] = None
    upload_bits: int = 0
    nodes_queried: tuple[int, ...] = ()  # survivors that received the broadcast

    def to_dict(self) -> dict:
        return {
            "value": list(self.value) if isinstance(self.value, tuple) else self.value,
            "bits_downloaded": self.bits_downloaded,
            "bits_naive": self.bits_naive,
            "bits_budget": self.bits_budget,
            "upload_bits": self.upload_bits,
            "nodes_contacted": list(self.nodes_contacted),
            "nodes_queried": list(self.nodes_queried),
        }


def deploy(code: RSCode, blocks: Sequence[Sequence[int]], systematic: bool = False) -> Cluster:
    """Encode each block and give node j symbol j of every codeword."""
    words = []
    for b in blocks:
        if len(b) != code.k:
            raise LengthMismatch(f"block has length {len(b)}, expected {code.k}")
        words.append(systematic_encode(code, b, range(code.k)) if systematic else encode(code, b))
    nodes = [StorageNode(j, [w[j] for w in words]) for j in range(code.n)]
    return Cluster(code, nodes, len(words), systematic)


def fail_nodes(cluster: Cluster, erased: Iterable[int]) -> Cluster:
    erased = frozenset(erased)
    if any(not 0 <= j < cluster.code.n for j in erased):
        raise ValueError("node index out of range")
    for j in erased:
        cluster.nodes[j].failed = True
    cluster.failed = cluster.failed | erased
    return cluster


def _target_on_coefficients(code: RSCode, p: Sequence[int], info: Sequence[int], length: int) -> tuple[int, ...]:
    """p'_l = sum_i p_i a_i^l, so that p^T (f(a_i))_i = p'^T f."""
    F = code.field
    out = []
    for l in range(length):
        acc = 0
        for pi, j in zip(p, info):
            if pi:
                acc = F.add(acc, F.mul(pi, F.pow(code.points[j], l)))
        out.append(acc)
    return tuple(out)


def _scheme_for(cluster: Cluster, code: RSCode, target: tuple[int, ...],
                params: Optional[SchemeParams]) -> EvaluationScheme:
    key = (code.k, target, cluster.failed, params)
    scheme = cluster._schemes.get(key)
    if scheme is None:
        scheme = build_scheme(code, target, params, cluster.failed)
        cluster._schemes[key] = scheme
    return scheme


def _run(cluster: Cluster, scheme: EvaluationScheme, block: int,
         local: Optional[Callable[[int], int]] = None) -> tuple[int, int, tuple[int, ...], int]:
    F = scheme.code.field
    rounds = []
    bits = 0
    for r in range(scheme.s):
        got = {}
        for j, beta in scheme.node_queries(r).items():
            resp = cluster.nodes[j].answer(F, block, (beta,), local)
            got[j] = resp
            cluster._credit(j, resp.bit_count)
            bits += resp.bit_count
        rounds.append(got)
    upload = sum(len(ws.v) for ws in scheme.rounds) * F.bits_per_element
    cluster.upload_bits += upload
    return evaluate_full(scheme, rounds), bits, scheme.contacted(), upload


def evaluate(cluster: Cluster, block: int, p: Sequence[int],
             params: Optional[SchemeParams] = None) -> EvalResult:
    """p^T x for one stored block through the low-bandwidth scheme.

    Without ``params`` the single-window rate-1/2 construction is used.
    """
    code = cluster.code
    if len(p) != code.k:
        raise LengthMismatch(f"target has length {len(p)}, expected {code.k}")
    target = tuple(p)
    if cluster.systematic:
        target = _target_on_coefficients(code, p, cluster.info_positions, code.k)
    scheme = _scheme_for(cluster, code, target, params)
    value, bits, contacted, upload = _run(cluster, scheme, block)
    return EvalResult(value, bits, code.k * code.field.bits_per_element, contacted, scheme.budget(), upload,
                      tuple(cluster.survivors))


def evaluate_scheme(cluster: Cluster, block: int, scheme: EvaluationScheme) -> EvalResult:
    """Run a prebuilt (for example reloaded) scheme against one stored block."""
    code = cluster.code
    if scheme.code.to_dict() != code.to_dict():
        raise ValueError("scheme was built for a different code")
    if scheme.failures != cluster.failed:
        raise ValueError("scheme erasure set does not match the failed nodes")
    value, bits, contacted, upload = _run(cluster, scheme, block)
    return EvalResult(value, bits, code.k * code.field.bits_per_element, contacted, scheme.budget(), upload,
                      tuple(cluster.survivors))


def evaluate_naive(cluster: Cluster, block: int, p: Sequence[int]) -> EvalResult:
    """Download k whole symbols from the lowest-indexed survivors, decode, evaluate."""
    code = cluster.code
    F = code.field
    alive = cluster.survivors
    if len(alive) < code.k:
        raise InsufficientSurvivors(f"{len(alive)} survivors, need {code.k}")
    chosen = alive[: code.k]
    symbols = []
    for j in chosen:
        symbols.append((j, cluster.nodes[j].read(block)))
        cluster._credit(j, F.bits_per_element)
    message = naive_recover(code, symbols).message
    if cluster.systematic:
        x = [poly_eval(F, message, code.points[j]) for j in cluster.info_positions]
    else:
        x = message
    bits = code.k * F.bits_per_element
    return EvalResult(dot(F, p, x), bits, bits, tuple(chosen), nodes_queried=tuple(chosen))


def evaluate_sum_of_squares(cluster: Cluster, block: int,
                            params: Optional[SchemeParams] = None) -> EvalResult:
    """sum_i x_i^2 for a systematically stored block.

    Each node squares its symbol locally; the squares form a codeword of the
    dimension 2k-1 code on the same points, and the evaluator asks for the
    sum of that polynomial over the information points.
    """
    if not cluster.systematic:
        raise ValueError("sum of squares needs systematically stored blocks")
    code = cluster.code
    F = code.field
    k2 = 2 * code.k - 1
    if k2 > code.n:
        raise DimensionTooLarge(f"2k-1 = {k2} exceeds n = {code.n}")
    big = code.with_dimension(k2)
    ones = (1,) * code.k
    target = _target_on_coefficients(big, ones, cluster.info_positions, k2)
    scheme = _scheme_for(cluster, big, target, params)
    value, bits, contacted, upload = _run(cluster, scheme, block, local=lambda c: F.mul(c, c))
    return EvalResult(value, bits, code.k * F.bits_per_element, contacted, scheme.budget(), upload,
                      tuple(cluster.survivors))


def evaluate_batched_base_field(cluster: Cluster, block: int, b: Sequence[int],
                                params: Optional[SchemeParams] = None) -> EvalResult:
    """t base-field dot products b^T y^(i), where x = sum_i zeta_i y^(i), from one run."""
    F = cluster.code.field
    if any(not 0 <= c < F.q for c in b):
        raise CoefficientNotInBase("every coefficient must lie in the base field")
    res = evaluate(cluster, block, b, params)
    return EvalResult(tuple(F.coords(res.value)), res.bits_downloaded, res.bits_naive,
                      res.nodes_contacted, res.bits_budget, res.upload_bits, res.nodes_queried)
