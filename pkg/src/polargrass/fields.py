"""Exact fields: GF(p^e) in a polynomial basis, and the rationals.

Finite field elements are plain ints.  The int ``c0 + c1*p + ... + c_{e-1}*p^(e-1)``
stands for the residue of ``c0 + c1*t + ...`` modulo the field's monic modulus, so
integer order is colex order on coefficient vectors and ``0..p-1`` is the prime
subfield.  Rational elements are :class:`fractions.Fraction`.

Arithmetic goes through the field object (``F.add(a, b)``, ``F.mul(a, b)``, ...),
which keeps the hot loops free of per-element wrapper objects.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Callable, Iterator, Sequence

__all__ = [
    "FieldError",
    "InfiniteFieldError",
    "Field",
    "FiniteField",
    "RationalField",
    "QQ",
    "make_field",
    "parse_field",
    "frobenius_involution",
    "trace_preimage",
    "subfield_embedding",
    "is_irreducible",
    "default_modulus",
]

MAX_ORDER = 256


class FieldError(ValueError):
    """Bad field parameters or a failed field operation."""


class InfiniteFieldError(FieldError):
    """Exhaustive enumeration was requested over an infinite field."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % r for r in range(2, int(p**0.5) + 1))


# polynomials over GF(p) as coefficient lists, lowest degree first


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _polymul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division of a monic polynomial by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _polymod(poly, list(low) + [1], p):
                return False
    return True


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Least monic irreducible of degree e, ordering candidates by their lower coefficients as base-p integers."""
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        poly = low + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise FieldError(f"no irreducible polynomial of degree {e} over GF({p})")


class Field:
    """Common interface of the exact fields used throughout the package."""

    char: int
    is_finite: bool
    zero: object
    one: object

    def elements(self) -> list:
        raise NotImplementedError

    def nonzero(self) -> list:
        return [x for x in self.elements() if x != self.zero]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n: int):
        if n < 0:
            return self.power(self.inv(a), -n)
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def dot(self, u: Sequence, v: Sequence):
        s = self.zero
        for a, b in zip(u, v):
            if a != self.zero and b != self.zero:
                s = self.add(s, self.mul(a, b))
        return s


class FiniteField(Field):
    """GF(p^e) with precomputed addition and multiplication tables."""

    is_finite = True

    def __init__(self, p: int, e: int = 1, modulus: Sequence[int] | None = None):
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if e < 1:
            raise FieldError(f"degree {e} must be positive")
        if p**e > MAX_ORDER:
            raise FieldError(f"GF({p}^{e}) is larger than the supported order {MAX_ORDER}")
        if modulus is None:
            modulus = default_modulus(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus {list(modulus)} is not monic of degree {e}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p, self.e, self.modulus = p, e, modulus
        self.char = p
        self.order = q = p**e
        self.zero, self.one = 0, 1

        vecs = [self.coeffs(a) for a in range(q)]
        self._add = [[self.from_coeffs([(x + y) % p for x, y in zip(vecs[a], vecs[b])])
                      for b in range(q)] for a in range(q)]
        self._neg = [self.from_coeffs([(-x) % p for x in vecs[a]]) for a in range(q)]
        self._mul = [[0] * q for _ in range(q)]
        for a in range(1, q):
            for b in range(a, q):
                c = self.from_coeffs(_polymod(_polymul(vecs[a], vecs[b], p), modulus, p))
                self._mul[a][b] = self._mul[b][a] = c
        self._inv = [0] * q
        for a in range(1, q):
            row = self._mul[a]
            self._inv[a] = row.index(1)
        self._sub = [[self._add[a][self._neg[b]] for b in range(q)] for a in range(q)]
        self._sqrt: dict[int, int] = {}
        for a in range(q - 1, -1, -1):
            self._sqrt[self._mul[a][a]] = a
        if e % 2 == 0:
            h = p ** (e // 2)
            self._conj: list[int] | None = [self.power(a, h) for a in range(q)]
        else:
            self._conj = None

    # representation

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple((a // self.p**i) % self.p for i in range(self.e))

    def from_coeffs(self, c: Sequence[int]) -> int:
        c = list(c) + [0] * (self.e - len(c))
        return sum((x % self.p) * self.p**i for i, x in enumerate(c[: self.e]))

    def from_int(self, n: int) -> int:
        return n % self.p

    def elements(self) -> list[int]:
        return list(range(self.order))

    # arithmetic

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._sub[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        add, mul = self._add, self._mul
        s = 0
        for a, b in zip(u, v):
            if a and b:
                s = add[s][mul[a][b]]
        return s

    def sqrt(self, a: int) -> int | None:
        """Least square root of a, or None when a is a non-square."""
        return self._sqrt.get(a)

    def is_square(self, a: int) -> bool:
        return a in self._sqrt

    # involution

    @property
    def has_involution(self) -> bool:
        return self._conj is not None

    def conj(self, a: int) -> int:
        if self._conj is None:
            raise FieldError(f"{self} has no involutory automorphism (odd degree)")
        return self._conj[a]

    # text

    def format_element(self, a: int) -> str:
        return str(a)

    def parse_element(self, text) -> int:
        a = int(text)
        if not 0 <= a < self.order:
            raise FieldError(f"{text!r} is not an element code of {self}")
        return a

    @property
    def text(self) -> str:
        s = f"{self.p}^{self.e}" if self.e > 1 else str(self.p)
        if self.e > 1 and self.modulus != default_modulus(self.p, self.e):
            s += " mod=[" + ",".join(map(str, self.modulus)) + "]"
        return s

    def __eq__(self, other) -> bool:
        return (isinstance(other, FiniteField) and self.p == other.p
                and self.e == other.e and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash(("GF", self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.order})" if self.e == 1 or self.modulus == default_modulus(self.p, self.e) \
            else f"GF({self.order}, mod={list(self.modulus)})"


class RationalField(Field):
    """The rationals with exact Fraction arithmetic."""

    is_finite = False
    char = 0

    def __init__(self):
        self.zero, self.one = Fraction(0), Fraction(1)

    def elements(self):
        raise InfiniteFieldError("the rationals cannot be enumerated")

    def nonzero(self):
        raise InfiniteFieldError("the rationals cannot be enumerated")

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def sqrt(self, a) -> Fraction | None:
        a = Fraction(a)
        if a < 0:
            return None
        num, den = _isqrt_exact(a.numerator), _isqrt_exact(a.denominator)
        if num is None or den is None:
            return None
        return Fraction(num, den)

    def is_square(self, a) -> bool:
        return self.sqrt(a) is not None

    has_involution = False

    def conj(self, a):
        raise FieldError("the rationals have no involutory automorphism")

    def format_element(self, a) -> str:
        return str(Fraction(a))

    def parse_element(self, text) -> Fraction:
        try:
            return Fraction(text)
        except (ValueError, TypeError) as exc:
            raise FieldError(f"{text!r} is not a rational number") from exc

    text = "Q"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __repr__(self) -> str:
        return "QQ"


def _isqrt_exact(n: int) -> int | None:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


QQ = RationalField()

_cache: dict[tuple, FiniteField] = {}


def make_field(p: int, e: int = 1, modulus: Sequence[int] | None = None) -> FiniteField:
    """GF(p^e); fields are cached so repeated construction is cheap."""
    key = (p, e, tuple(modulus) if modulus is not None else None)
    if key not in _cache:
        _cache[key] = FiniteField(p, e, modulus)
    return _cache[key]


_FIELD_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*(?:mod\s*=\s*\[([\d,\s]*)\])?\s*$")


def parse_field(text: str) -> Field:
    """Parse ``"Q"``, ``"p"``, ``"p^e"`` or ``"p^e mod=[c0,...,1]"``."""
    if text.strip().upper() in ("Q", "QQ"):
        return QQ
    m = _FIELD_RE.match(text)
    if not m:
        raise FieldError(f"cannot parse field {text!r}")
    p, e = int(m.group(1)), int(m.group(2) or 1)
    if m.group(2) is None and not _is_prime(p):
        # a bare prime power such as "4"
        base = next((r for r in range(2, p + 1) if p % r == 0), p)
        power = 0
        while p > 1 and p % base == 0:
            p //= base
            power += 1
        if p != 1:
            raise FieldError(f"{text!r} is not a prime power")
        p, e = base, power
    modulus = [int(c) for c in m.group(3).split(",")] if m.group(3) else None
    return make_field(p, e, modulus)


def frobenius_involution(F: Field) -> tuple[Callable, list]:
    """The involution x -> x^(p^(e/2)) and its fixed subfield, listed as elements of F."""
    if not getattr(F, "has_involution", False):
        raise FieldError(f"{F} admits no involutory automorphism")
    fixed = [a for a in F.elements() if F.conj(a) == a]
    return F.conj, fixed


def trace_preimage(F: Field, a) -> int:
    """Least t (in element order) with t + t^sigma = a."""
    sigma, fixed = frobenius_involution(F)
    if a not in fixed:
        raise FieldError(f"{a} is not in the fixed subfield, so it is not a trace")
    for t in F.elements():
        if F.add(t, sigma(t)) == a:
            return t
    raise FieldError(f"no trace preimage of {a}")  # unreachable: the trace is onto


def subfield_embedding(sub: FiniteField, F: FiniteField) -> dict[int, int]:
    """An embedding of ``sub`` into ``F`` sending the generator t to the least root of sub's modulus in F."""
    if sub.p != F.p or F.e % sub.e:
        raise FieldError(f"{sub} is not a subfield of {F}")
    gens = [r for r in F.elements()
            if _eval_poly(F, sub.modulus, r) == 0]
    if not gens:
        raise FieldError(f"{sub} does not embed in {F}")  # unreachable for finite fields
    t = gens[0]
    emb = {}
    for a in sub.elements():
        val = 0
        for i, c in enumerate(sub.coeffs(a)):
            val = F.add(val, F.mul(c, F.power(t, i)))
        emb[a] = val
    return emb


def _eval_poly(F: Field, coeffs: Sequence[int], x):
    acc = F.zero
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), F.from_int(c))
    return acc


def iter_vectors(F: Field, n: int) -> Iterator[tuple]:
    """All vectors of F^n, the last coordinate varying fastest."""
    return itertools.product(F.elements(), repeat=n)
