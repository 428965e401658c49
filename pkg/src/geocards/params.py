"""Parameter sets for the slicing protocol and the conditions that make it work.

All arithmetic here is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParams
from .field import factor_prime_power, is_prime_power


@dataclass(frozen=True, order=True)
class ProtocolParams:
    """Deal size ``(a, b, c)`` with field order ``q``, dimension ``d + 1`` and ``k`` slices.

    Requires ``a == k * q**d`` and ``a + b + c == q**(d + 1)``.
    """

    a: int
    b: int
    c: int
    q: int
    d: int
    k: int

    def __post_init__(self):
        if not is_prime_power(self.q):
            raise BadParams(f"q = {self.q} is not a prime power")
        if self.d < 1:
            raise BadParams("d must be at least 1")
        if not 1 <= self.k <= self.q - 1:
            raise BadParams(f"k = {self.k} outside [1, q-1] = [1, {self.q - 1}]")
        if self.a != self.k * self.q**self.d:
            raise BadParams(f"a = {self.a} but k*q^d = {self.k * self.q**self.d}")
        if self.a + self.b + self.c != self.q ** (self.d + 1):
            raise BadParams(f"a+b+c = {self.a + self.b + self.c} but q^(d+1) = {self.deck_size}")
        if self.b < 1 or self.c < 0:
            raise BadParams("need b >= 1 and c >= 0")

    @classmethod
    def from_qdkc(cls, q, d, k, c):
        a = k * q**d
        return cls(a, q ** (d + 1) - a - c, c, q, d, k)

    @property
    def deck_size(self):
        return self.q ** (self.d + 1)

    @property
    def n(self):
        return self.d + 1

    @property
    def size(self):
        return (self.a, self.b, self.c)

    def as_dict(self):
        return {"a": self.a, "b": self.b, "c": self.c, "q": self.q, "d": self.d, "k": self.k}


@dataclass(frozen=True)
class SizeRecord:
    params: ProtocolParams
    cond1: bool
    cond2: bool

    @property
    def theorem_applies(self):
        return self.cond1 and self.cond2

    def as_dict(self):
        out = self.params.as_dict()
        out.update(cond1=self.cond1, cond2=self.cond2, theorem_applies=self.theorem_applies)
        return out


def slicing_margin(q, d, k):
    """``k*q^d - k^2*q^(d-1)``: the right-hand side of the first condition."""
    return k * q**d - k * k * q ** (d - 1)


def check_conditions(params):
    q, d, k, c = params.q, params.d, params.k, params.c
    cond1 = c < slicing_margin(q, d, k)
    cond2 = max(c + k, c * k) <= q
    return SizeRecord(params, cond1, cond2)


def slicing_gap_lower_bound(q, d, k):
    """Lower bound on ``|X u Y|`` for two distinct k-slicings of F_q^(d+1)."""
    if not 1 <= k <= q - 1:
        raise BadParams(f"k = {k} outside [1, {q - 1}]")
    return min((k + 1) * q**d, 2 * k * q**d - k * k * q ** (d - 1))


def power_of_two_witness(n):
    """The unique power of two in ``(n, 2n]``."""
    return 1 << n.bit_length()


def prime_power_in_range(n):
    """Smallest prime power strictly greater than ``n``; it never exceeds ``2n``."""
    if n < 1:
        raise ValueError("n must be positive")
    p = n + 1
    while factor_prime_power(p) is None:
        p += 1
    return p


def derive_params(k, c, d):
    """Parameters for Cath holding ``c`` cards and ``k``-safety, in dimension ``d + 1``.

    Picks q as the smallest prime power above ``k*c + 1``; then ``a = k*q^d``
    and Bob gets the rest of the deck.
    """
    if min(k, c, d) < 1:
        raise BadParams("k, c and d must all be at least 1")
    q = prime_power_in_range(k * c + 1)
    return check_conditions(ProtocolParams.from_qdkc(q, d, k, c))


def enumerate_sizes(max_deck):
    """Every legal parameter set with deck size at most ``max_deck``, with condition flags."""
    if max_deck < 4:
        raise ValueError("max_deck must be at least 4")
    records = []
    for q in range(2, int(max_deck**0.5) + 1):
        if not is_prime_power(q):
            continue
        d = 1
        while q ** (d + 1) <= max_deck:
            for k in range(1, q):
                a = k * q**d
                for c in range(q ** (d + 1) - a):
                    records.append(check_conditions(ProtocolParams.from_qdkc(q, d, k, c)))
            d += 1
    records.sort(key=lambda r: (r.params.deck_size, r.params.q, r.params.d, r.params.k, r.params.c))
    return records
