"""Exact arithmetic in GF(p^m).

Elements are polynomial residues modulo a monic irreducible polynomial over
Z_p, stored as little-endian coefficient tuples of length m.  Every element
also has an integer *index*: its coefficients read as a base-p number, least
significant digit first.  Index 0 is zero and index 1 is one; the geometry
layer works with indices and the lookup tables built here.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .errors import DivisionByZero, FieldMismatch, NotPrimePower


def factor_prime_power(q):
    """Return ``(p, m)`` with ``q == p**m`` and ``p`` prime, or None."""
    if q < 2:
        return None
    p = next((i for i in range(2, int(q**0.5) + 1) if q % i == 0), q)
    m = 0
    while q % p == 0:
        q //= p
        m += 1
    return (p, m) if q == 1 else None


def is_prime_power(q):
    return factor_prime_power(q) is not None


def _trim(poly):
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mod(num, den, p):
    """Remainder of ``num`` divided by monic ``den`` over Z_p (little-endian lists)."""
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    return [x % p for x in num[:dd]] + [0] * max(0, dd - len(num))


def _monic_polys(p, deg):
    # lexicographic order on the lower coefficients, read as a base-p integer
    for low in itertools.product(range(p), repeat=deg):
        yield list(reversed(low)) + [1]


def is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    for dd in range(1, deg // 2 + 1):
        for div in _monic_polys(p, dd):
            if not any(_poly_mod(poly, div, p)):
                return False
    return True


def smallest_irreducible(p, m):
    if m == 1:
        return (0, 1)
    for poly in _monic_polys(p, m):
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class FiniteField:
    characteristic: int
    degree: int
    modulus: tuple

    @property
    def order(self):
        return self.characteristic**self.degree

    @property
    def p(self):
        return self.characteristic

    @property
    def q(self):
        return self.order

    def __repr__(self):
        return f"GF({self.order})"

    def __len__(self):
        return self.order

    # element construction

    def element(self, value):
        """Build an element from an index (int) or a coefficient sequence."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} does not belong to {self!r}")
            return value
        if isinstance(value, int):
            if not 0 <= value < self.order:
                raise ValueError(f"index {value} out of range for {self!r}")
            coeffs = []
            for _ in range(self.degree):
                value, r = divmod(value, self.p)
                coeffs.append(r)
            return FieldElement(self, tuple(coeffs))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients, got {len(coeffs)}")
        return FieldElement(self, coeffs)

    def __call__(self, value):
        return self.element(value)

    @property
    def zero(self):
        return self.element(0)

    @property
    def one(self):
        return self.element(1)

    def elements(self):
        return [self.element(i) for i in range(self.order)]

    # raw polynomial arithmetic on coefficient tuples

    def _add(self, x, y):
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def _neg(self, x):
        return tuple((-a) % self.p for a in x)

    def _mul(self, x, y):
        prod = [0] * (2 * self.degree - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prod[i + j] += a * b
        return tuple(_poly_mod(prod, self.modulus, self.p))

    # index-level lookup tables used by the geometry code

    @functools.cached_property
    def add_table(self):
        els = self.elements()
        return tuple(tuple((x + y).index for y in els) for x in els)

    @functools.cached_property
    def mul_table(self):
        els = self.elements()
        return tuple(tuple((x * y).index for y in els) for x in els)

    @functools.cached_property
    def neg_table(self):
        return tuple((-x).index for x in self.elements())

    @functools.cached_property
    def inv_table(self):
        # inv_table[0] is a placeholder; zero has no inverse
        return (0,) + tuple(x.inverse().index for x in self.elements()[1:])


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    coeffs: tuple

    @property
    def index(self):
        return sum(c * self.field.p**i for i, c in enumerate(self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def _other(self, other):
        if isinstance(other, int):
            return self.field.element(other % self.field.p if self.field.degree == 1 else other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"cannot combine elements of {self.field!r} and {other.field!r}")
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.coeffs))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero(f"zero has no inverse in {self.field!r}")
        # x^(q-1) = 1 for nonzero x
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __int__(self):
        return self.index

    def __repr__(self):
        return f"{self.field!r}[{self.index}]"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(("" if c == 1 and i else str(c)) + mono)
        return " + ".join(reversed(terms)) or "0"


@functools.lru_cache(maxsize=None)
def make_field(q):
    """Field of order ``q`` with the lexicographically smallest monic irreducible modulus."""
    if not isinstance(q, int) or isinstance(q, bool):
        raise TypeError("field order must be an int")
    pm = factor_prime_power(q)
    if pm is None:
        raise NotPrimePower(f"{q} is not a prime power")
    p, m = pm
    return FiniteField(p, m, smallest_irreducible(p, m))


def ff_elements(field):
    return field.elements()


def ff_arith(op, x, y=None):
    """Dispatch one of ``add``, ``neg``, ``mul``, ``inv`` on field elements."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown field operation {op!r}")
