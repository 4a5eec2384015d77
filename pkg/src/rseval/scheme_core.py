"""Linear evaluation schemes for an arbitrary linear code.

A scheme for a target functional p assigns every node j a subspace V_j of the
big field F, taken over the base field B. Node j answers with tr(c_j * beta)
for each basis element beta of V_j. The assignment works for p when
zeta_i * w lies in C-perp + (V_1 x ... x V_n) for every basis element zeta_i,
where w is any vector with G^T w = p.

Every B-linear question is answered by expanding F^n into B^(n t) through the
coordinates of each entry in the field basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Optional, Sequence, Union

from . import linalg
from .algebra import FieldExtension
from .errors import MissingResponse, NotAScheme, TooLargeForExhaustive
from .rscode import RSCode, dual_code_basis, encode


@dataclass(frozen=True)
class SubspaceAssignment:
    """Per-node B-subspaces of F, each given by a B-independent basis."""

    bases: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "bases", tuple(tuple(b) for b in self.bases))

    @classmethod
    def checked(cls, field: FieldExtension, bases: Sequence[Sequence[int]]) -> "SubspaceAssignment":
        for j, b in enumerate(bases):
            rows = [field.coords(x) for x in b]
            if linalg.rank(field.base, rows, field.t) != len(b):
                raise ValueError(f"basis of V_{j} is not independent over the base field")
        return cls(tuple(tuple(b) for b in bases))

    @classmethod
    def full(cls, field: FieldExtension, n: int) -> "SubspaceAssignment":
        return cls(tuple(field.basis for _ in range(n)))

    @classmethod
    def zero(cls, n: int) -> "SubspaceAssignment":
        return cls(tuple(() for _ in range(n)))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.bases)

    @property
    def tolerated(self) -> frozenset[int]:
        return frozenset(j for j, b in enumerate(self.bases) if not b)

    def symbols(self) -> int:
        return sum(self.dims)

    def bandwidth_bits(self, field: FieldExtension) -> int:
        return self.symbols() * field.bits_per_symbol


@dataclass(frozen=True)
class NodeResponse:
    """Base-field symbols tr(c_j * beta) returned by node j."""

    node: int
    values: tuple[int, ...]
    bits_per_symbol: int

    @property
    def bit_count(self) -> int:
        return len(self.values) * self.bits_per_symbol

    def payload(self) -> bytes:
        return pack_symbols(self.values, self.bits_per_symbol)

    def to_wire(self) -> dict:
        return {"node": self.node, "count": len(self.values), "payload": self.payload().hex()}

    @classmethod
    def from_wire(cls, d: dict, bits_per_symbol: int) -> "NodeResponse":
        values = unpack_symbols(bytes.fromhex(d["payload"]), d["count"], bits_per_symbol)
        return cls(d["node"], tuple(values), bits_per_symbol)


def pack_symbols(values: Sequence[int], width: int) -> bytes:
    """Concatenate fixed-width symbols big-endian, zero-padded to a byte boundary."""
    acc = 0
    for v in values:
        if v >> width:
            raise ValueError(f"symbol {v} does not fit in {width} bits")
        acc = (acc << width) | v
    nbits = len(values) * width
    pad = (-nbits) % 8
    return (acc << pad).to_bytes((nbits + pad) // 8, "big")


def unpack_symbols(data: bytes, count: int, width: int) -> list[int]:
    nbits = count * width
    acc = int.from_bytes(data, "big") >> (len(data) * 8 - nbits)
    mask = (1 << width) - 1
    return [(acc >> (width * (count - 1 - i))) & mask for i in range(count)]


@dataclass(frozen=True)
class GenericSchemeWitness:
    field: FieldExtension = dc_field(repr=False, compare=False)
    p: tuple[int, ...]
    w: tuple[int, ...]
    z: tuple[tuple[int, ...], ...]
    # tables[i][j][l]: coefficient of bases[j][l] in zeta_i w_j - z^(i)_j
    tables: tuple[tuple[tuple[int, ...], ...], ...]
    bases: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {
            "p": list(self.p),
            "w": list(self.w),
            "z_list": [list(z) for z in self.z],
            "tables": [[list(a) for a in row] for row in self.tables],
            "bases": [list(b) for b in self.bases],
        }

    @classmethod
    def from_dict(cls, field: FieldExtension, d: dict) -> "GenericSchemeWitness":
        return cls(
            field,
            tuple(d["p"]),
            tuple(d["w"]),
            tuple(tuple(z) for z in d["z_list"]),
            tuple(tuple(tuple(a) for a in row) for row in d["tables"]),
            tuple(tuple(b) for b in d["bases"]),
        )


# ---------------------------------------------------------------------------


def expand(field: FieldExtension, vec: Sequence[int]) -> list[int]:
    """F^n -> B^(n t) through basis coordinates."""
    out: list[int] = []
    for x in vec:
        out.extend(field.coords(x))
    return out


def scale(field: FieldExtension, c: int, vec: Sequence[int]) -> tuple[int, ...]:
    return tuple(field.mul(c, x) for x in vec)


def find_witness(code: RSCode, p: Sequence[int]) -> tuple[int, ...]:
    """Deterministic w with G^T w = p."""
    if len(p) != code.k:
        raise ValueError(f"target has length {len(p)}, expected {code.k}")
    w = linalg.solve(code.field, code.generator_t, p)
    if w is None:  # G has full column rank, so this cannot happen
        raise ArithmeticError("generator matrix is rank deficient")
    return tuple(w)


def _dual_generators(code: RSCode) -> list[tuple[int, ...]]:
    F = code.field
    return [scale(F, z, y) for y in dual_code_basis(code) for z in F.basis]


def _subspace_generators(code: RSCode, V: SubspaceAssignment) -> list[tuple[int, ...]]:
    gens = []
    for j, basis in enumerate(V.bases):
        for beta in basis:
            e = [0] * code.n
            e[j] = beta
            gens.append(tuple(e))
    return gens


def _solve_decomposition(code: RSCode, V: SubspaceAssignment, target: Sequence[int]) -> Optional[list[int]]:
    F = code.field
    gens = _dual_generators(code) + _subspace_generators(code, V)
    cols = [expand(F, g) for g in gens]
    rows = [[c[r] for c in cols] for r in range(code.n * F.t)] if cols else [[] for _ in range(code.n * F.t)]
    rhs = expand(F, target)
    if not cols:
        return [] if not any(rhs) else None
    return linalg.solve(F.base, rows, rhs)


def verify_linear_scheme(code: RSCode, p: Sequence[int], V: SubspaceAssignment) -> bool:
    F = code.field
    w = find_witness(code, p)
    return all(_solve_decomposition(code, V, scale(F, z, w)) is not None for z in F.basis)


def decompose_witness(code: RSCode, p: Sequence[int], V: SubspaceAssignment) -> GenericSchemeWitness:
    F = code.field
    w = find_witness(code, p)
    dual_gens = _dual_generators(code)
    nd = len(dual_gens)
    zs, tables = [], []
    for zeta in F.basis:
        x = _solve_decomposition(code, V, scale(F, zeta, w))
        if x is None:
            raise NotAScheme("zeta * w is not in C-perp + V for some basis element")
        z = [0] * code.n
        for coef, g in zip(x[:nd], dual_gens):
            if coef:
                z = [F.add(a, F.mul(coef, b)) for a, b in zip(z, g)]
        pos = nd
        row = []
        for basis in V.bases:
            row.append(tuple(x[pos: pos + len(basis)]))
            pos += len(basis)
        zs.append(tuple(z))
        tables.append(tuple(row))
    return GenericSchemeWitness(F, tuple(p), w, tuple(zs), tuple(tables), V.bases)


def node_response(field: FieldExtension, c_j: int, basis: Sequence[int], node: int = 0) -> NodeResponse:
    values = tuple(field.trace(field.mul(c_j, beta)) for beta in basis)
    return NodeResponse(node, values, field.bits_per_symbol)


Responses = Union[Mapping[int, NodeResponse], Iterable[NodeResponse]]


def _by_node(responses: Responses) -> dict[int, NodeResponse]:
    if isinstance(responses, Mapping):
        return dict(responses)
    return {r.node: r for r in responses}


def generic_reconstruct(witness: GenericSchemeWitness, responses: Responses) -> int:
    """p^T x from the node answers, through the trace identity of each zeta_i."""
    F = witness.field
    B = F.base
    got = _by_node(responses)
    traces = []
    for table in witness.tables:
        acc = 0
        for j, coeffs in enumerate(table):
            if not witness.bases[j]:
                continue
            if j not in got:
                raise MissingResponse(j)
            for a, m in zip(coeffs, got[j].values):
                if a and m:
                    acc = B.add(acc, B.mul(a, m))
        traces.append(acc)
    return F.recover_from_traces(traces)


# ---------------------------------------------------------------------------
# two descriptions of the same set of admissible w


EXHAUSTIVE_LIMIT = 4096


def admissible_witnesses(code: RSCode, V: SubspaceAssignment) -> list[list[int]]:
    """B-basis (in B^(n t)) of {w : zeta_i w in C-perp + V for all i}."""
    F, B = code.field, code.field.base
    nt = code.n * F.t
    gens = [expand(F, g) for g in _dual_generators(code) + _subspace_generators(code, V)]
    annihilator = linalg.nullspace(B, gens, nt) if gens else [
        [1 if r == c else 0 for c in range(nt)] for r in range(nt)
    ]
    stacked = []
    for zeta in F.basis:
        # column (j, a) is the expansion of zeta * zeta_a * e_j
        cols = []
        for j in range(code.n):
            for za in F.basis:
                e = [0] * code.n
                e[j] = F.mul(zeta, za)
                cols.append(expand(F, e))
        for h in annihilator:
            stacked.append([sum_b(B, h, col) for col in cols])
    return linalg.nullspace(B, stacked, nt) if stacked else [
        [1 if r == c else 0 for c in range(nt)] for r in range(nt)
    ]


def sum_b(B, a: Sequence[int], b: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = B.add(acc, B.mul(x, y))
    return acc


def codewords_in_dual_product(code: RSCode, V: SubspaceAssignment) -> list[tuple[int, ...]]:
    """Codewords c with tr(c_j beta) = 0 for every basis element beta of V_j."""
    F = code.field
    if F.Q ** code.k > EXHAUSTIVE_LIMIT:
        raise TooLargeForExhaustive(f"Q^k = {F.Q ** code.k} codewords")
    out = []
    for msg in itertools.product(range(F.Q), repeat=code.k):
        c = encode(code, msg)
        if all(F.trace(F.mul(cj, beta)) == 0 for cj, basis in zip(c, V.bases) for beta in basis):
            out.append(c)
    return out


def orthogonal_of_span(code: RSCode, words: Sequence[Sequence[int]]) -> list[list[int]]:
    """B-basis (in B^(n t)) of (span_F words)^perp."""
    F = code.field
    perp = linalg.nullspace(F, [list(c) for c in words], code.n) if words else [
        [1 if r == c else 0 for c in range(code.n)] for r in range(code.n)
    ]
    return [expand(F, scale(F, z, u)) for u in perp for z in F.basis]


def perp_char_check(code: RSCode, V: SubspaceAssignment) -> tuple[bool, bool]:
    """(left within right, right within left) for the two characterizations.

    Left: w with zeta_i w in C-perp + V for all i.
    Right: w orthogonal to span_F(C intersect W), W_j the trace-dual of V_j.
    """
    F = code.field
    left = admissible_witnesses(code, V)
    right = orthogonal_of_span(code, codewords_in_dual_product(code, V))
    return linalg.same_span(F.base, left, right, code.n * F.t)
