"""Alice's slicing announcement, Bob's and Cath's views, and the two-step exchange.

Cards are the integers ``1 .. q^(d+1)``.  A :class:`CardMap` sends each card
to a point of F_q^(d+1); the announcement is then every hand that the map
sends onto a k-slicing.  It is usually carried implicitly as ``(map, k)`` and
only listed out when a verifier needs the full set.

Randomness comes from :class:`random.Random` (Mersenne Twister) seeded with
an explicit integer, so every announcement is reproducible from its seed.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from math import comb

from .errors import Ambiguous, BadHandSize, EmptyCath, PreconditionViolated, SizeGuard
from .field import make_field
from .geometry import AffineSpace, find_avoiding_subspace, is_slicing
from .params import ProtocolParams

#: Default cap on the number of hands an announcement may be expanded into.
HAND_BUDGET = 200_000


def _sorted_hand(cards):
    return tuple(sorted(cards))


@functools.lru_cache(maxsize=None)
def protocol_space(q, d):
    return AffineSpace(make_field(q), d + 1)


@dataclass(frozen=True)
class Deal:
    """Partition of the deck ``1..a+b+c`` into the hands of Alice, Bob and Cath."""

    A: tuple
    B: tuple
    C: tuple

    def __post_init__(self):
        for name in "ABC":
            object.__setattr__(self, name, _sorted_hand(getattr(self, name)))
        cards = self.A + self.B + self.C
        if len(set(cards)) != len(cards):
            raise ValueError("hands of a deal must be pairwise disjoint")
        if set(cards) != set(range(1, len(cards) + 1)):
            raise ValueError("hands must cover the deck 1..a+b+c exactly")

    @property
    def size(self):
        return (len(self.A), len(self.B), len(self.C))

    @property
    def deck(self):
        return tuple(range(1, sum(self.size) + 1))

    def check_params(self, params):
        if self.size != params.size:
            raise BadHandSize(f"deal has size {self.size}, parameters need {params.size}")

    @classmethod
    def random(cls, params, seed):
        cards = list(range(1, params.deck_size + 1))
        random.Random(seed).shuffle(cards)
        a, b = params.a, params.b
        return cls(cards[:a], cards[a : a + b], cards[a + b :])


@dataclass(frozen=True)
class CardMap:
    """Bijection card -> point; ``forward[card - 1]`` is the point's codec index."""

    params: ProtocolParams
    forward: tuple

    def __post_init__(self):
        if sorted(self.forward) != list(range(self.params.deck_size)):
            raise ValueError("card map must be a bijection onto the point indices")

    @classmethod
    def identity(cls, params):
        return cls(params, tuple(range(params.deck_size)))

    @property
    def space(self):
        return protocol_space(self.params.q, self.params.d)

    @functools.cached_property
    def inverse(self):
        inv = [0] * len(self.forward)
        for card, idx in enumerate(self.forward, start=1):
            inv[idx] = card
        return tuple(inv)

    def point(self, card):
        return self.space.encode(self.forward[card - 1])

    def card(self, point):
        return self.inverse[self.space.decode(point)]

    def image(self, cards):
        return {self.point(c) for c in cards}

    def preimage(self, points):
        return _sorted_hand(self.card(x) for x in points)


@dataclass(frozen=True)
class ImplicitAnnouncement:
    """All hands ``X`` with ``f(X)`` a k-slicing, represented by ``(f, k)``."""

    cardmap: CardMap
    k: int

    @property
    def params(self):
        return self.cardmap.params

    def __contains__(self, hand):
        hand = set(hand)
        if len(hand) != self.params.a:
            return False
        return is_slicing(self.cardmap.space, self.cardmap.image(hand), self.k) is not None

    def count(self):
        q, n = self.params.q, self.params.n
        return (q**n - 1) // (q - 1) * comb(q, self.k)


@dataclass(frozen=True)
class EnumeratedAnnouncement:
    """An explicit, lexicographically sorted list of sorted hands."""

    hands: tuple
    deck_size: int

    def __post_init__(self):
        hands = tuple(sorted(_sorted_hand(h) for h in self.hands))
        object.__setattr__(self, "hands", hands)

    def __contains__(self, hand):
        return _sorted_hand(hand) in self._members

    @functools.cached_property
    def _members(self):
        return frozenset(self.hands)

    def __len__(self):
        return len(self.hands)

    def __iter__(self):
        return iter(self.hands)

    @property
    def hand_size(self):
        return len(self.hands[0]) if self.hands else 0


def choose_announcement(A, params, seed):
    """Sample a card map sending ``A`` onto a k-slicing.

    Draws, in order: a direction, a k-subset of its offsets, a bijection from
    ``A`` onto the slicing's points, and a bijection from the remaining cards
    onto the remaining points; all uniform.
    """
    A = _sorted_hand(A)
    if len(A) != params.a or len(set(A)) != len(A):
        raise BadHandSize(f"Alice's hand has {len(set(A))} cards, expected {params.a}")
    deck = range(1, params.deck_size + 1)
    if not set(A) <= set(deck):
        raise BadHandSize("Alice's hand contains cards outside the deck")
    rng = random.Random(seed)
    sp = protocol_space(params.q, params.d)
    direction = sp.directions[rng.randrange(len(sp.directions))]
    offsets = sorted(rng.sample(range(sp.q), params.k))
    cosets = sp.cosets(direction)
    inside = [i for t in offsets for i in cosets[t]]
    outside = sorted(set(range(sp.size)) - set(inside))
    rng.shuffle(inside)
    rng.shuffle(outside)
    forward = [0] * params.deck_size
    rest = [c for c in deck if c not in set(A)]
    for card, idx in zip(A, inside):
        forward[card - 1] = idx
    for card, idx in zip(rest, outside):
        forward[card - 1] = idx
    return ImplicitAnnouncement(CardMap(params, tuple(forward)), params.k)


def canonical_announcement(params, k=None):
    """The announcement of the identity card map (card i is point index i - 1)."""
    return ImplicitAnnouncement(CardMap.identity(params), params.k if k is None else k)


def enumerate_announcement(ann, max_hands=HAND_BUDGET):
    if isinstance(ann, EnumeratedAnnouncement):
        return ann
    if ann.count() > max_hands:
        raise SizeGuard(f"announcement has {ann.count()} hands, over the budget of {max_hands}")
    cmap = ann.cardmap
    sp = cmap.space
    sp.require_budget()
    inv = cmap.inverse
    hands = []
    for direction in sp.directions:
        cosets = sp.cosets(direction)
        for offs in itertools.combinations(range(sp.q), ann.k):
            hands.append(_sorted_hand(inv[i] for t in offs for i in cosets[t]))
    return EnumeratedAnnouncement(tuple(hands), cmap.params.deck_size)


def same_announcement(first, second, max_hands=HAND_BUDGET):
    """Equality of announcements as sets of hands (distinct maps can agree)."""
    return (
        enumerate_announcement(first, max_hands).hands
        == enumerate_announcement(second, max_hands).hands
    )


def hands_avoiding(ann, cards):
    """Every announced hand disjoint from ``cards``, sorted."""
    cards = set(cards)
    if isinstance(ann, EnumeratedAnnouncement):
        return [h for h in ann.hands if cards.isdisjoint(h)]
    cmap = ann.cardmap
    sp = cmap.space
    sp.require_budget()
    blocked = {cmap.forward[c - 1] for c in cards}
    inv = cmap.inverse
    out = []
    for direction in sp.directions:
        offs = sp.offsets(direction)
        hit = {offs[i] for i in blocked}
        free = [t for t in range(sp.q) if t not in hit]
        cosets = sp.cosets(direction)
        for chosen in itertools.combinations(free, ann.k):
            out.append(_sorted_hand(inv[i] for t in chosen for i in cosets[t]))
    out.sort()
    return out


def bob_resolve(ann, B):
    """The unique announced hand that avoids Bob's cards."""
    candidates = hands_avoiding(ann, B)
    if len(candidates) != 1:
        raise Ambiguous(len(candidates))
    return candidates[0]


def cath_candidates(ann, C):
    return hands_avoiding(ann, C)


def _require_safety_bound(X, C, ann):
    k, q, c = ann.k, ann.params.q, len(set(C))
    if not 1 <= len(set(X)) <= k:
        raise PreconditionViolated(f"|X| = {len(set(X))} outside [1, k] = [1, {k}]")
    if set(X) & set(C):
        raise PreconditionViolated("X meets Cath's hand")
    if max(c + k, c * k) > q:
        raise PreconditionViolated(f"max(c+k, ck) = {max(c + k, c * k)} exceeds q = {q}")


def _pad_slicing(sp, direction, required, blocked_points, k):
    """Offsets of ``required`` plus the first free offsets of ``direction`` up to k."""
    offs = sp.offsets(direction)
    hit = {offs[sp.decode(x)] for x in blocked_points}
    chosen = sorted(required)
    for t in range(sp.q):
        if len(chosen) >= k:
            break
        if t not in hit and t not in chosen:
            chosen.append(t)
    if len(chosen) < k or hit & set(chosen):  # pragma: no cover - excluded by c + k <= q
        raise AssertionError("not enough free hyperplanes")
    cosets = sp.cosets(direction)
    return [i for t in chosen for i in cosets[t]]


def construct_containing_hand(X, C, ann):
    """An announced hand containing ``X`` and missing ``C``, built from an avoiding direction."""
    if not isinstance(ann, ImplicitAnnouncement):
        raise TypeError("construction needs an implicit announcement")
    _require_safety_bound(X, C, ann)
    cmap = ann.cardmap
    sp = cmap.space
    fX, fC = cmap.image(X), cmap.image(C)
    direction = find_avoiding_subspace(sp, fC, fX, ann.k)
    required = {sp.dot(direction.normal, x) for x in fX}
    indices = _pad_slicing(sp, direction, required, fC, ann.k)
    return _sorted_hand(cmap.inverse[i] for i in indices)


def construct_excluding_hand(X, C, ann):
    """An announced hand missing ``C`` and at least one card of ``X``.

    Takes the smallest card x of X and the smallest card y of C and uses a
    direction whose hyperplane through x also passes through y; that
    hyperplane is blocked by Cath, so no admissible slicing covers x.
    """
    if not isinstance(ann, ImplicitAnnouncement):
        raise TypeError("construction needs an implicit announcement")
    if not C:
        raise EmptyCath("construction needs at least one of Cath's cards")
    _require_safety_bound(X, C, ann)
    cmap = ann.cardmap
    sp = cmap.space
    x, y = cmap.point(min(X)), cmap.point(min(C))
    diff = sp.sub(x, y)
    direction = next(dr for dr in sp.directions if sp.dot(dr.normal, diff) == 0)
    indices = _pad_slicing(sp, direction, set(), cmap.image(C), ann.k)
    return _sorted_hand(cmap.inverse[i] for i in indices)


@dataclass(frozen=True)
class Transcript:
    params: ProtocolParams
    seed: int
    announcement: ImplicitAnnouncement
    bob_resolution: tuple
    bob_second_announcement: tuple
    cath_candidate_count: int


def run_exchange(deal, params, seed):
    """Alice announces, Bob resolves her hand and then announces Cath's."""
    deal.check_params(params)
    ann = choose_announcement(deal.A, params, seed)
    resolved = bob_resolve(ann, deal.B)
    if resolved != deal.A:  # pragma: no cover - a hand avoiding B that is not A is ambiguity
        raise Ambiguous(2, "Bob resolved a hand other than Alice's")
    # Bob now knows A and B, so C is the rest of the deck
    second = _sorted_hand(set(deal.deck) - set(resolved) - set(deal.B))
    candidates = cath_candidates(ann, deal.C)
    return Transcript(params, seed, ann, resolved, second, len(candidates))
