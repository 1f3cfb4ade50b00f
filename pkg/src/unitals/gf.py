"""Exact arithmetic in finite fields GF(p^k).

Elements are represented by their coefficient vectors over Z_p in the power
basis of a root of the field's modulus polynomial.  The modulus is not an
input: for each (p, k) it is the lexicographically smallest monic irreducible
polynomial of degree k, where polynomials are compared coefficient by
coefficient starting from the constant term.  Fixing the modulus this way
makes every field context, element enumeration, and downstream construction
reproducible byte for byte.

Polynomials throughout are tuples of ints in [0, p), lowest degree first.
A degree-k monic modulus therefore has length k + 1 with last entry 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

MAX_FIELD_SIZE = 2**32

# Lookup tables are only worth building for small fields; everything this
# package closes over matrices fits well under this bound.
_TABLE_LIMIT = 512


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_mod(poly: list[int], modulus: tuple[int, ...], p: int) -> list[int]:
    """Reduce poly modulo the monic modulus, in place, return it."""
    k = len(modulus) - 1
    for d in range(len(poly) - 1, k - 1, -1):
        c = poly[d]
        if c:
            poly[d] = 0
            for i in range(k):
                poly[d - k + i] = (poly[d - k + i] - c * modulus[i]) % p
    del poly[k:]
    while len(poly) < k:
        poly.append(0)
    return poly


def _poly_mul_mod(a: tuple[int, ...], b: tuple[int, ...],
                  modulus: tuple[int, ...], p: int) -> tuple[int, ...]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return tuple(_poly_mod(prod, modulus, p))


def _divides(divisor: tuple[int, ...], poly: tuple[int, ...], p: int) -> bool:
    """Whether the monic divisor divides poly over Z_p."""
    rem = list(poly)
    dd = len(divisor) - 1
    for d in range(len(rem) - 1, dd - 1, -1):
        c = rem[d]
        if c:
            rem[d] = 0
            for i in range(dd):
                rem[d - dd + i] = (rem[d - dd + i] - c * divisor[i]) % p
    return not any(rem[:dd])


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by all monic polynomials of degree up to deg(poly)/2."""
    deg = len(poly) - 1
    if poly[0] == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if _divides(low + (1,), poly, p):
                return False
    return True


def _find_modulus(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=k):
        candidate = low + (1,)
        if _is_irreducible(candidate, p):
            return candidate
    raise RuntimeError(f"no irreducible polynomial of degree {k} over GF({p})")


class FieldCtx:
    """A finite field GF(p^k) with its canonical modulus.

    Contexts compare and hash by (p, k, modulus), so two independently
    created contexts for the same field are interchangeable.  Element
    enumeration, the multiplicative generator, and the integer operation
    tables are computed lazily and cached on the context.
    """

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.size = p**k
        self.modulus = modulus
        self.zero = FieldElem(self, (0,) * k)
        self.one = FieldElem(self, (1,) + (0,) * (k - 1))
        self._elements: tuple[FieldElem, ...] | None = None
        self._index: dict[tuple[int, ...], int] | None = None
        self._add_table: np.ndarray | None = None
        self._mul_table: np.ndarray | None = None
        self._generator: FieldElem | None = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, k={self.k}, modulus={self.modulus})"

    def elem(self, coeffs: tuple[int, ...]) -> FieldElem:
        if len(coeffs) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(coeffs)}")
        return FieldElem(self, tuple(c % self.p for c in coeffs))

    def from_int(self, n: int) -> FieldElem:
        """Image of the integer n in the prime subfield."""
        return FieldElem(self, (n % self.p,) + (0,) * (self.k - 1))

    def elements(self) -> tuple[FieldElem, ...]:
        """All field elements, zero first, in lexicographic coefficient order."""
        if self._elements is None:
            self._elements = tuple(
                FieldElem(self, coeffs)
                for coeffs in itertools.product(range(self.p), repeat=self.k)
            )
        return self._elements

    def index_of(self, a: FieldElem) -> int:
        """Position of a in the canonical enumeration."""
        if self._index is None:
            self._index = {e.coeffs: i for i, e in enumerate(self.elements())}
        return self._index[a.coeffs]

    def multiplicative_generator(self) -> FieldElem:
        """First element in enumeration order generating the unit group."""
        if self._generator is None:
            target = self.size - 1
            for a in self.elements():
                if not a.is_zero() and _mult_order(a) == target:
                    self._generator = a
                    break
            else:
                raise RuntimeError("no multiplicative generator found")
        return self._generator

    def op_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(add, mul) tables over element indices, for vectorised closures."""
        if self.size > _TABLE_LIMIT:
            raise ValueError(f"field too large for operation tables: {self.size}")
        if self._add_table is None:
            elems = self.elements()
            s = self.size
            add = np.zeros((s, s), dtype=np.int16)
            mul = np.zeros((s, s), dtype=np.int16)
            for i, a in enumerate(elems):
                for j, b in enumerate(elems):
                    add[i, j] = self.index_of(a + b)
                    mul[i, j] = self.index_of(a * b)
            self._add_table = add
            self._mul_table = mul
        return self._add_table, self._mul_table


@dataclass(frozen=True)
class FieldElem:
    """One element of a field context, as a coefficient tuple."""

    ctx: FieldCtx
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.ctx.k:
            raise ValueError("coefficient count does not match field degree")

    def _check(self, other: FieldElem) -> None:
        if not isinstance(other, FieldElem):
            raise TypeError(f"cannot combine FieldElem with {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ValueError("elements belong to different fields")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> FieldElem:
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(
            self.ctx,
            _poly_mul_mod(self.coeffs, other.coeffs, self.ctx.modulus, self.ctx.p),
        )

    def __truediv__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int) -> FieldElem:
        if not isinstance(e, int):
            raise TypeError("exponent must be an int")
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FieldElem:
        """Multiplicative inverse, as a^(p^k - 2)."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return self ** (self.ctx.size - 2)

    def frobenius(self, m: int = 1) -> FieldElem:
        """m-fold Frobenius image a^(p^m)."""
        if m < 0:
            raise ValueError("Frobenius power must be nonnegative")
        return self ** (self.ctx.p**m)

    def __repr__(self) -> str:
        return f"FieldElem{self.coeffs}@GF({self.ctx.p}^{self.ctx.k})"


def _mult_order(a: FieldElem) -> int:
    order = 1
    x = a
    one = a.ctx.one
    while x != one:
        x = x * a
        order += 1
        if order > a.ctx.size:
            raise RuntimeError("multiplicative order runaway")
    return order


def field_create(p: int, k: int) -> FieldCtx:
    """Build GF(p^k) with the canonical (lexicographically least) modulus."""
    if not _is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if p**k > MAX_FIELD_SIZE:
        raise ValueError(f"field size {p}^{k} exceeds supported bound {MAX_FIELD_SIZE}")
    return FieldCtx(p, k, _find_modulus(p, k))


def field_for_order(q: int) -> FieldCtx:
    """Build GF(q) from a prime power q."""
    pk = _prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    return field_create(*pk)


def _prime_power(n: int) -> tuple[int, int] | None:
    if n < 2:
        return None
    for p in range(2, n + 1):
        if p * p > n:
            return (n, 1)
        if n % p == 0:
            k = 0
            m = n
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
    return None


def enumerate_elements(ctx: FieldCtx) -> Iterator[FieldElem]:
    """Yield the field elements in canonical order, zero first."""
    yield from ctx.elements()


def field_to_json(ctx: FieldCtx) -> dict:
    return {"p": ctx.p, "k": ctx.k, "modulus": list(ctx.modulus)}


def field_from_json(doc: dict) -> FieldCtx:
    try:
        p = int(doc["p"])
        k = int(doc["k"])
        modulus = tuple(int(c) for c in doc["modulus"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed field document: {exc}") from exc
    ctx = field_create(p, k)
    if ctx.modulus != modulus:
        raise ValueError(
            f"modulus {modulus} is not the canonical modulus for GF({p}^{k}), "
            f"expected {ctx.modulus}"
        )
    return ctx
