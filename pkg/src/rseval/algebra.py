"""Finite fields GF(q) and GF(q^t), the field trace, and univariate polynomials.

Elements are plain ints. An element of GF(p^m) is the integer whose base-p
digits are the coefficients (low to high) of its polynomial representative;
an element of GF(q^t) is the integer whose base-q digits are its coefficients
over GF(q). The two encodings agree digit-for-digit in base p, so the base
field sits inside the extension as the integers ``0 .. q-1`` and addition is
digitwise mod p everywhere (plain xor in characteristic 2).

Polynomials are tuples of coefficients, low degree first, with no trailing
zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import linalg
from .errors import (
    DependentBasis,
    DuplicatePoint,
    NotPrimePower,
    ReducibleModulus,
    ZeroModulus,
)

Poly = tuple


# ---------------------------------------------------------------------------
# integer helpers


def prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p**m, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    p, m, r = ps[0], 0, q
    while r > 1:
        r //= p
        m += 1
    return p, m


def to_digits(x: int, base: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        x, d = divmod(x, base)
        out.append(d)
    return out


def from_digits(digits: Iterable[int], base: int) -> int:
    x, place = 0, 1
    for d in digits:
        x += d * place
        place *= base
    return x


# ---------------------------------------------------------------------------
# fields


class _TabulatedField:
    """Shared arithmetic: digitwise addition, log/exp multiplication."""

    order: int
    char: int

    def _build_tables(self, slow_mul) -> None:
        order = self.order
        n = order - 1

        def slow_pow(a, e):
            r = 1
            while e:
                if e & 1:
                    r = slow_mul(r, a)
                a = slow_mul(a, a)
                e >>= 1
            return r

        if order == 2:
            g = 1
        else:
            cofactors = [n // r for r in prime_factors(n)]
            g = next(
                (c for c in range(2, order) if all(slow_pow(c, e) != 1 for e in cofactors)),
                None,
            )
            if g is None:
                raise ReducibleModulus("no element of full multiplicative order")
        exp = [0] * (2 * n)
        log = [0] * order
        x = 1
        for i in range(n):
            if i and x == 1:
                raise ReducibleModulus("multiplicative group is not cyclic of full order")
            exp[i] = x
            log[x] = i
            x = slow_mul(x, g)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self.generator = g
        self._exp = exp
        self._log = log

    # additive structure -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.char == 2:
            return a ^ b
        p = self.char
        out, place = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def neg(self, a: int) -> int:
        if self.char == 2:
            return a
        p = self.char
        out, place = 0, 1
        while a:
            out += ((-(a % p)) % p) * place
            a //= p
            place *= p
        return out

    def sub(self, a: int, b: int) -> int:
        if self.char == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    # multiplicative structure -------------------------------------------
    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, e: int) -> int:
        return self._exp[e % (self.order - 1)]

    def elements(self) -> range:
        return range(self.order)

    def nonzero(self) -> range:
        return range(1, self.order)


class BaseField(_TabulatedField):
    """GF(q) for a prime power q."""

    def __init__(self, q: int):
        p, m = prime_power(q)
        self.q = self.order = q
        self.char = p
        self.degree = m
        if m == 1:
            self.prime = None
            self.modulus: Poly = (0, 1)
            self._build_tables(lambda a, b: (a * b) % p)
        else:
            self.prime = BaseField(p)
            self.modulus = smallest_irreducible(self.prime, m)

            def slow_mul(a, b):
                prod = poly_mul(self.prime, to_digits(a, p, m), to_digits(b, p, m))
                rem = poly_mod_reduce(self.prime, prod, self.modulus)
                return from_digits(rem, p)

            self._build_tables(slow_mul)

    def __repr__(self):
        return f"GF({self.q})"


class FieldExtension(_TabulatedField):
    """GF(q^t) represented as GF(q)[x] / (modulus)."""

    def __init__(self, base: BaseField, t: int, modulus: Sequence[int], basis: Optional[Sequence[int]] = None):
        self.base = base
        self.q = base.q
        self.t = t
        self.Q = self.order = base.q ** t
        self.char = base.char
        self.modulus: Poly = trim(modulus)
        if len(self.modulus) != t + 1:
            raise ValueError(f"modulus must have degree {t}")
        if not is_irreducible(base, self.modulus):
            raise ReducibleModulus(f"modulus {list(self.modulus)} is reducible over GF({base.q})")
        q = self.q

        def slow_mul(a, b):
            prod = poly_mul(base, to_digits(a, q, t), to_digits(b, q, t))
            return from_digits(poly_mod_reduce(base, prod, self.modulus), q)

        self._build_tables(slow_mul)
        self._trace_table: Optional[list[int]] = None

        self.basis: tuple[int, ...] = tuple(basis) if basis is not None else tuple(q ** i for i in range(t))
        if len(self.basis) != t:
            raise DependentBasis(f"basis needs exactly {t} elements")
        # columns are the digit vectors of the basis elements
        cols = [self.digits(z) for z in self.basis]
        M = [[cols[j][i] for j in range(t)] for i in range(t)]
        try:
            self._coord_matrix = linalg.inverse(base, M)
        except ZeroDivisionError:
            raise DependentBasis("basis elements are linearly dependent over the base field") from None
        gram = [[self.trace(self.mul(zi, zj)) for zj in self.basis] for zi in self.basis]
        self._trace_gram_inv = linalg.inverse(base, gram)

    def __repr__(self):
        return f"GF({self.q}^{self.t})"

    @property
    def bits_per_symbol(self) -> int:
        """Bits needed for one base-field symbol."""
        return (self.q - 1).bit_length()

    @property
    def bits_per_element(self) -> int:
        return (self.Q - 1).bit_length()

    def digits(self, x: int) -> list[int]:
        return to_digits(x, self.q, self.t)

    def in_base(self, x: int) -> bool:
        return 0 <= x < self.q

    def frobenius(self, x: int, i: int = 1) -> int:
        return self.pow(x, self.q ** i)

    def trace(self, x: int) -> int:
        if self._trace_table is not None:
            return self._trace_table[x]
        acc, y = 0, x
        for _ in range(self.t):
            acc = self.add(acc, y)
            y = self.pow(y, self.q)
        return acc

    def trace_table(self) -> list[int]:
        if self._trace_table is None:
            self._trace_table = [self.trace(x) for x in range(self.Q)]
        return self._trace_table

    def coords(self, x: int) -> list[int]:
        """Coordinates of x in the basis, as base-field elements."""
        return linalg.mat_vec(self.base, self._coord_matrix, self.digits(x))

    def from_coords(self, coords: Sequence[int]) -> int:
        acc = 0
        for c, z in zip(coords, self.basis):
            if c:
                acc = self.add(acc, self.mul(c, z))
        return acc

    def trace_coords(self, x: int) -> list[int]:
        return [self.trace(self.mul(z, x)) for z in self.basis]

    def recover_from_traces(self, coords: Sequence[int]) -> int:
        if len(coords) != self.t:
            raise ValueError(f"need {self.t} trace values, got {len(coords)}")
        a = linalg.mat_vec(self.base, self._trace_gram_inv, coords)
        return self.from_coords(a)

    def to_dict(self) -> dict:
        return {"q": self.q, "t": self.t, "modulus": list(self.modulus), "basis": list(self.basis)}

    @classmethod
    def from_dict(cls, d: dict) -> "FieldExtension":
        return make_extension_field(d["q"], d["t"], d.get("modulus"), d.get("basis"))


@lru_cache(maxsize=None)
def _base_field(q: int) -> BaseField:
    return BaseField(q)


@lru_cache(maxsize=None)
def _default_extension(q: int, t: int) -> FieldExtension:
    base = _base_field(q)
    return FieldExtension(base, t, smallest_irreducible(base, t))


def make_extension_field(q: int, t: int, modulus: Optional[Sequence[int]] = None,
                         basis: Optional[Sequence[int]] = None) -> FieldExtension:
    """GF(q^t) over GF(q).

    Without a modulus the lexicographically smallest irreducible monic
    polynomial is used (smallest integer code of its lower coefficients), and
    the same object is returned for repeated calls.
    """
    if t < 2:
        raise ValueError("extension degree t must be at least 2")
    base = _base_field(q)
    if modulus is None and basis is None:
        return _default_extension(q, t)
    if modulus is None:
        modulus = smallest_irreducible(base, t)
    return FieldExtension(base, t, modulus, basis)


def trace(field: FieldExtension, x: int) -> int:
    return field.trace(x)


def recover_from_traces(field: FieldExtension, coords: Sequence[int]) -> int:
    return field.recover_from_traces(coords)


# ---------------------------------------------------------------------------
# polynomials


def trim(coeffs: Iterable[int]) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def deg(f: Poly) -> int:
    return len(f) - 1


def deg_set(f: Sequence[int]) -> set[int]:
    return {i for i, c in enumerate(f) if c}


def poly_add(F, a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    return trim(F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n))


def poly_sub(F, a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    return trim(F.sub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n))


def poly_scale(F, a: Sequence[int], c: int) -> Poly:
    return trim(F.mul(c, x) for x in a)


def poly_mul(F, a: Sequence[int], b: Sequence[int]) -> Poly:
    a, b = trim(a), trim(b)
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def poly_divmod(F, a: Sequence[int], m: Sequence[int]) -> tuple[Poly, Poly]:
    m = trim(m)
    if not m:
        raise ZeroModulus("division by the zero polynomial")
    r = list(trim(a))
    dm = len(m) - 1
    lead_inv = F.inv(m[-1])
    if len(r) <= dm:
        return (), tuple(r)
    quo = [0] * (len(r) - dm)
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i]
        if not c:
            continue
        f = F.mul(c, lead_inv)
        quo[i - dm] = f
        for j in range(dm + 1):
            if m[j]:
                r[i - dm + j] = F.sub(r[i - dm + j], F.mul(f, m[j]))
    return trim(quo), trim(r[:dm])


def poly_mod_reduce(F, f: Sequence[int], modulus: Sequence[int]) -> Poly:
    """Remainder of f modulo a nonzero polynomial."""
    return poly_divmod(F, f, modulus)[1]


def poly_powmod(F, f: Sequence[int], e: int, modulus: Sequence[int]) -> Poly:
    result: Poly = poly_mod_reduce(F, (1,), modulus)
    base = poly_mod_reduce(F, f, modulus)
    while e:
        if e & 1:
            result = poly_mod_reduce(F, poly_mul(F, result, base), modulus)
        base = poly_mod_reduce(F, poly_mul(F, base, base), modulus)
        e >>= 1
    return result


def poly_eval(F, f: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_eval_many(F, f: Sequence[int], xs: Iterable[int]) -> list[int]:
    """Evaluate f at many points using the log tables; cost is per nonzero term."""
    terms = [(F.log(c), i) for i, c in enumerate(f) if c]
    const = f[0] if f else 0
    order = F.order - 1
    exp = F._exp
    out = []
    for x in xs:
        if x == 0:
            out.append(const)
            continue
        lx = F.log(x)
        if F.char == 2:
            acc = 0
            for lc, i in terms:
                acc ^= exp[(lc + i * lx) % order]
        else:
            acc = 0
            for lc, i in terms:
                acc = F.add(acc, exp[(lc + i * lx) % order])
        out.append(acc)
    return out


def poly_from_roots(F, roots: Iterable[int]) -> Poly:
    f: Poly = (1,)
    for r in roots:
        f = poly_mul(F, f, (F.neg(r), 1))
    return f


def poly_derivative(F, f: Sequence[int]) -> Poly:
    out = []
    for i in range(1, len(f)):
        c = 0
        for _ in range(i % F.char):
            c = F.add(c, f[i])
        out.append(c)
    return trim(out)


def _check_distinct(xs: Sequence[int]) -> None:
    if len(set(xs)) != len(xs):
        raise DuplicatePoint("interpolation points must have distinct x")


def interpolate(F, points: Sequence[tuple[int, int]]) -> Poly:
    """Lagrange interpolation: the unique polynomial of degree < len(points)."""
    xs = [x for x, _ in points]
    _check_distinct(xs)
    if not points:
        return ()
    master = poly_from_roots(F, xs)
    out = [0] * len(points)
    for xj, yj in points:
        if not yj:
            continue
        num, _ = poly_divmod(F, master, (F.neg(xj), 1))
        scale = F.div(yj, poly_eval(F, num, xj))
        for i, c in enumerate(num):
            if c:
                out[i] = F.add(out[i], F.mul(scale, c))
    return trim(out)


@lru_cache(maxsize=64)
def coefficient_weights(F, xs: tuple[int, ...], d: int) -> tuple[int, ...]:
    """Weights w_j with  [X^d] R = sum_j w_j R(x_j)  for every R of degree < len(xs).

    w_j is the X^d coefficient of the j-th Lagrange basis polynomial, so one
    O(n^2) precomputation serves every later coefficient extraction.
    """
    _check_distinct(xs)
    n = len(xs)
    if not 0 <= d < n:
        return (0,) * n
    master = poly_from_roots(F, xs)
    dmaster = poly_derivative(F, master)
    weights = []
    for xj in xs:
        # synthetic division of master by (X - xj), only up to X^d is needed
        # from the top: quotient coefficients q_{i-1} = master_i + xj * q_i
        qcoef = 0
        for i in range(n, d, -1):
            qcoef = F.add(master[i], F.mul(xj, qcoef))
        weights.append(F.div(qcoef, poly_eval(F, dmaster, xj)))
    return tuple(weights)


def interpolation_coefficient(F, points: Sequence[tuple[int, int]], d: int) -> int:
    """Coefficient of X^d in the interpolant through the given points."""
    xs = tuple(x for x, _ in points)
    w = coefficient_weights(F, xs, d)
    acc = 0
    for wj, (_, y) in zip(w, points):
        if wj and y:
            acc = F.add(acc, F.mul(wj, y))
    return acc


# ---------------------------------------------------------------------------
# irreducibility


def _monic_polys(F, degree: int):
    for code in range(F.order ** degree):
        yield tuple(to_digits(code, F.order, degree)) + (1,)


def is_irreducible(F, f: Sequence[int]) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f) / 2."""
    f = trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if f[0] == 0:
        return False
    for x in F.nonzero():
        if poly_eval(F, f, x) == 0:
            return False
    for d in range(2, n // 2 + 1):
        for g in _monic_polys(F, d):
            if not poly_mod_reduce(F, f, g):
                return False
    return True


def smallest_irreducible(F, degree: int) -> Poly:
    for f in _monic_polys(F, degree):
        if is_irreducible(F, f):
            return f
    raise ReducibleModulus(f"no irreducible polynomial of degree {degree}")  # unreachable for fields
