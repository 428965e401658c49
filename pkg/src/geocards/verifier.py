"""Exhaustive checks of informativity and k-safety for explicit announcements.

Hands are handled as bitmasks (bit ``card - 1``) so that filtering the
announcement by one of Cath's hands is a single AND per hand.  Cath hands are
scanned in lexicographic order and, within one, tuples by size then
lexicographically, so the first violation reported is always the same one.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from math import comb

from .geometry import iter_slicings, slicing_points
from .protocol import HAND_BUDGET, canonical_announcement, enumerate_announcement, protocol_space


class ViolationKind(str, enum.Enum):
    NOT_INFORMATIVE = "NotInformative"
    NO_CONTAINING_HAND = "NoContainingHand"
    NO_EXCLUDING_HAND = "NoExcludingHand"


@dataclass(frozen=True)
class Violation:
    """A re-checkable counterexample.

    For informativity ``tuple`` holds the two hands that both fit inside
    ``A u C`` (with ``A`` the first of them); for safety it holds the cards X.
    """

    kind: ViolationKind
    cath_hand: tuple
    tuple: tuple
    detail: str = ""

    def replay(self, ann):
        """True if the announcement still exhibits this violation."""
        ann = enumerate_announcement(ann)
        C = set(self.cath_hand)
        if self.kind is ViolationKind.NOT_INFORMATIVE:
            first, second = self.tuple
            allowed = set(first) | C
            fits = [h for h in ann.hands if set(h) <= allowed]
            return first in ann and second in ann and len(fits) >= 2 and not C & set(first)
        X = set(self.tuple)
        candidates = [set(h) for h in ann.hands if C.isdisjoint(h)]
        if not candidates or X & C:
            return False
        if self.kind is ViolationKind.NO_CONTAINING_HAND:
            return not any(X <= h for h in candidates)
        return all(X <= h for h in candidates)

    def as_dict(self):
        t = [list(h) for h in self.tuple] if self.kind is ViolationKind.NOT_INFORMATIVE else list(self.tuple)
        return {
            "kind": self.kind.value,
            "cath_hand": list(self.cath_hand),
            "tuple": t,
            "detail": self.detail,
        }


def _mask(cards):
    m = 0
    for c in cards:
        m |= 1 << (c - 1)
    return m


def _cards(mask):
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def check_informative(ann, params):
    """True, or the first pair of hands whose union has at most ``a + c`` cards.

    Two distinct hands X, Y fit together inside some ``A u C`` exactly when
    ``|X u Y| <= a + c``, so the pairwise test is equivalent to the definition.
    """
    ann = enumerate_announcement(ann)
    limit = params.a + params.c
    masks = [_mask(h) for h in ann.hands]
    for i, j in itertools.combinations(range(len(masks)), 2):
        union = (masks[i] | masks[j]).bit_count()
        if union <= limit:
            X, Y = ann.hands[i], ann.hands[j]
            extra = sorted(set(Y) - set(X))
            spare = [c for c in range(1, ann.deck_size + 1) if c not in set(X) | set(Y)]
            C = tuple(sorted(extra + spare[: params.c - len(extra)]))
            return Violation(
                ViolationKind.NOT_INFORMATIVE,
                C,
                (X, Y),
                f"hands {X} and {Y} both lie inside A u C with A = first hand, C = {C}",
            )
    return True


def min_pairwise_union(ann):
    ann = enumerate_announcement(ann)
    masks = [_mask(h) for h in ann.hands]
    return min((x | y).bit_count() for x, y in itertools.combinations(masks, 2))


def _safety_violation(free, candidates, k):
    """First X (size, then lexicographic) that Cath can decide, or None."""
    union = 0
    inter = -1
    for h in candidates:
        union |= h
        inter &= h
    for card in free:
        bit = 1 << (card - 1)
        if not union & bit:
            return ViolationKind.NO_CONTAINING_HAND, (card,)
        if inter & bit:
            return ViolationKind.NO_EXCLUDING_HAND, (card,)
    # any larger X inside every candidate has a singleton inside every candidate,
    # so from here on only containing hands can be missing
    for size in range(2, k + 1):
        covered = set()
        for h in candidates:
            for combo in itertools.combinations(_cards(h), size):
                covered.add(combo)
        if len(covered) < comb(len(free), size):
            for combo in itertools.combinations(free, size):
                if combo not in covered:
                    return ViolationKind.NO_CONTAINING_HAND, combo
    return None


def check_k_safe(ann, params, k, cath_hands=None):
    """True, or the first (C, X) for which Cath can decide whether X is inside Alice's hand.

    Cath hands that every announced hand meets are skipped: no deal
    consistent with the announcement gives Cath such a hand.  Pass
    ``cath_hands`` to examine only those hands instead of all c-subsets.
    """
    ann = enumerate_announcement(ann)
    masks = [_mask(h) for h in ann.hands]
    deck = range(1, ann.deck_size + 1)
    if cath_hands is None:
        cath_hands = itertools.combinations(deck, params.c)
    for C in cath_hands:
        C = tuple(sorted(C))
        cmask = _mask(C)
        candidates = [h for h in masks if not h & cmask]
        if not candidates:
            continue
        free = [x for x in deck if not cmask & (1 << (x - 1))]
        found = _safety_violation(free, candidates, k)
        if found:
            kind, X = found
            verb = "contains" if kind is ViolationKind.NO_CONTAINING_HAND else "omits"
            return Violation(
                kind,
                C,
                X,
                f"Cath holding {C} sees {len(candidates)} candidate hands, none of which {verb} {X}",
            )
    return True


@dataclass
class ProtocolReport:
    params: object
    k: int
    hands: int
    informative: bool
    safe: bool
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return self.informative and self.safe

    def as_dict(self):
        return {
            "params": self.params.as_dict(),
            "k": self.k,
            "hands": self.hands,
            "informative": self.informative,
            "k_safe": self.safe,
            "violations": [v.as_dict() for v in self.violations],
        }


def check_announcement(ann, params, k=None, max_hands=HAND_BUDGET):
    k = params.k if k is None else k
    ann = enumerate_announcement(ann, max_hands)
    informative = check_informative(ann, params)
    safe = check_k_safe(ann, params, k)
    violations = [v for v in (informative, safe) if v is not True]
    return ProtocolReport(params, k, len(ann), informative is True, safe is True, violations)


def check_protocol(params, k=None, max_hands=HAND_BUDGET):
    """Verify the whole protocol through its identity-map announcement.

    Every announcement of the protocol is the image of this one under a
    relabelling of the cards, and both properties survive relabelling.
    """
    return check_announcement(canonical_announcement(params), params, k, max_hands)


def oracle_slicing_count(params):
    """Number of distinct k-slicing point sets, counted by brute force."""
    sp = protocol_space(params.q, params.d)
    sp.require_budget()
    return len({slicing_points(sp, s) for s in iter_slicings(sp, params.k)})


def check_informative_by_deals(ann, params):
    """Definitional informativity: every consistent deal leaves exactly one hand inside A u C.

    Quadratically slower than :func:`check_informative`; meant for small decks.
    """
    ann = enumerate_announcement(ann)
    masks = [_mask(h) for h in ann.hands]
    deck = set(range(1, ann.deck_size + 1))
    for A, amask in zip(ann.hands, masks):
        for C in itertools.combinations(sorted(deck - set(A)), params.c):
            allowed = amask | _mask(C)
            if sum(1 for h in masks if h & ~allowed == 0) != 1:
                return False
    return True
