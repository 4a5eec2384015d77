"""Reed-Solomon codes: encoding, systematic encoding, duals, naive recovery."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

from . import linalg
from .algebra import FieldExtension, interpolate, make_extension_field, poly_eval
from .errors import DuplicatePosition, InconsistentSymbols, LengthMismatch


@dataclass(frozen=True, eq=False)
class RSCode:
    """Evaluations of degree-<k polynomials at ``points`` (node j holds f(points[j]))."""

    field: FieldExtension
    k: int
    points: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        n = len(self.points)
        if not 1 <= self.k <= n <= self.field.Q:
            raise ValueError(f"need 1 <= k <= n <= Q, got k={self.k}, n={n}, Q={self.field.Q}")
        if len(set(self.points)) != n:
            raise ValueError("evaluation points must be distinct")
        if any(not 0 <= a < self.field.Q for a in self.points):
            raise ValueError("evaluation point outside the field")

    @classmethod
    def full_length(cls, field: FieldExtension, k: int) -> "RSCode":
        """n = Q, evaluation points in ascending element code, so node j holds f(j)."""
        return cls(field, k, tuple(range(field.Q)))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def is_full_length(self) -> bool:
        return self.n == self.field.Q

    @cached_property
    def generator(self) -> list[list[int]]:
        """n x k generator matrix, row j = (1, a_j, a_j^2, ...)."""
        F = self.field
        return [[F.pow(a, l) for l in range(self.k)] for a in self.points]

    @cached_property
    def generator_t(self) -> list[list[int]]:
        G = self.generator
        return [[G[j][l] for j in range(self.n)] for l in range(self.k)]

    def with_dimension(self, k: int) -> "RSCode":
        return RSCode(self.field, k, self.points)

    def to_dict(self) -> dict:
        return {"field": self.field.to_dict(), "k": self.k, "n": self.n, "eval_point_codes": list(self.points)}

    @classmethod
    def from_dict(cls, d: dict) -> "RSCode":
        field = FieldExtension.from_dict(d["field"])
        points = d["eval_point_codes"]
        if len(points) != d["n"]:
            raise ValueError("n does not match the number of evaluation points")
        return cls(field, d["k"], tuple(points))


def rs_code(q: int, t: int, k: int, n: Optional[int] = None) -> RSCode:
    """RS code over the default GF(q^t); the first n field elements are the points."""
    field = make_extension_field(q, t)
    if n is None or n == field.Q:
        return RSCode.full_length(field, k)
    return RSCode(field, k, tuple(range(n)))


def encode(code: RSCode, message: Sequence[int]) -> tuple[int, ...]:
    if len(message) != code.k:
        raise LengthMismatch(f"message has length {len(message)}, expected {code.k}")
    F = code.field
    return tuple(poly_eval(F, message, a) for a in code.points)


def systematic_encode(code: RSCode, values: Sequence[int], info_positions: Sequence[int]) -> tuple[int, ...]:
    """Codeword agreeing with ``values`` at ``info_positions``."""
    if len(values) != code.k or len(info_positions) != code.k:
        raise LengthMismatch(f"need {code.k} values and positions")
    if len(set(info_positions)) != len(info_positions):
        raise DuplicatePosition("info positions must be distinct")
    f = message_from_values(code, values, info_positions)
    return encode(code, f)


def message_from_values(code: RSCode, values: Sequence[int], info_positions: Sequence[int]) -> tuple[int, ...]:
    """Coefficient vector of the degree-<k polynomial taking ``values`` at the positions."""
    f = interpolate(code.field, [(code.points[j], v) for j, v in zip(info_positions, values)])
    return tuple(f) + (0,) * (code.k - len(f))


class Recovery(NamedTuple):
    message: tuple[int, ...]
    bits: int


def naive_recover(code: RSCode, symbols: Sequence[tuple[int, int]]) -> Recovery:
    """Recover the message from k (or more) ``(index, value)`` pairs.

    Extra pairs beyond the first k are checked against the recovered message.
    """
    if len(symbols) < code.k:
        raise LengthMismatch(f"need at least {code.k} symbols, got {len(symbols)}")
    idx = [j for j, _ in symbols]
    if len(set(idx)) != len(idx):
        raise DuplicatePosition("symbol indices must be distinct")
    head = symbols[: code.k]
    message = message_from_values(code, [v for _, v in head], [j for j, _ in head])
    F = code.field
    for j, v in symbols[code.k:]:
        if poly_eval(F, message, code.points[j]) != v:
            raise InconsistentSymbols(f"symbol at node {j} is not on the recovered codeword")
    return Recovery(message, code.k * F.bits_per_element)


def dual_code_basis(code: RSCode) -> list[tuple[int, ...]]:
    """Basis of C-perp = ker(G^T), n - k vectors."""
    return [tuple(y) for y in linalg.nullspace(code.field, code.generator_t, code.n)]


def is_codeword(code: RSCode, word: Sequence[int]) -> bool:
    if len(word) != code.n:
        return False
    f = interpolate(code.field, list(zip(code.points, word)))
    return len(f) <= code.k


def dot(F, a: Sequence[int], b: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc
