import itertools
import random

import pytest

from geocards.params import ProtocolParams
from geocards.protocol import (
    CardMap,
    EnumeratedAnnouncement,
    ImplicitAnnouncement,
    canonical_announcement,
    enumerate_announcement,
)
from geocards.verifier import (
    ViolationKind,
    check_informative,
    check_informative_by_deals,
    check_k_safe,
    check_protocol,
    min_pairwise_union,
    oracle_slicing_count,
)

from conftest import ALPHA, ALPHA2, ONE, ZERO, card


def naive_k_safe(hands, deck_size, c, k):
    """Definition read literally with Python sets."""
    deck = set(range(1, deck_size + 1))
    hands = [set(h) for h in hands]
    for C in itertools.combinations(sorted(deck), c):
        cands = [h for h in hands if not h & set(C)]
        if not cands:
            continue
        for size in range(1, k + 1):
            for X in itertools.combinations(sorted(deck - set(C)), size):
                X = set(X)
                if not any(X <= h for h in cands) or all(X <= h for h in cands):
                    return False
    return True


SMALL = [
    ProtocolParams.from_qdkc(q, d, k, c)
    for q, d, k, c in [
        (4, 1, 2, 2), (4, 1, 2, 3), (4, 1, 1, 2), (4, 1, 3, 1), (4, 1, 1, 5),
        (3, 1, 1, 1), (3, 1, 2, 1), (3, 1, 1, 3), (2, 2, 1, 1), (2, 2, 1, 2),
        (2, 3, 1, 1), (2, 1, 1, 1), (5, 1, 1, 2), (4, 1, 2, 0),
    ]
]


def test_informative_862(p862):
    ann = canonical_announcement(p862)
    assert check_informative(ann, p862) is True
    assert min_pairwise_union(ann) == 12 > p862.a + p862.c


def test_informative_10_12_3():
    p = ProtocolParams(10, 12, 3, 5, 1, 2)
    ann = canonical_announcement(p)
    assert check_informative(ann, p) is True
    assert min_pairwise_union(ann) == 15


def test_not_informative_handcrafted():
    p = ProtocolParams(8, 6, 2, 4, 1, 2)
    X = tuple(range(1, 9))
    Y = tuple(range(1, 7)) + (9, 10)  # |X u Y| = 10 = a + c
    ann = EnumeratedAnnouncement((X, Y), 16)
    v = check_informative(ann, p)
    assert v.kind is ViolationKind.NOT_INFORMATIVE
    assert v.tuple == (X, Y) and v.cath_hand == (9, 10)
    assert v.replay(ann)


def test_two_safe_862(p862):
    assert check_k_safe(canonical_announcement(p862), p862, 2) is True


def test_paper_three_card_witness():
    p = ProtocolParams(8, 5, 3, 4, 1, 2)
    ann = canonical_announcement(p)
    C = (card(ALPHA2, ZERO), card(ALPHA2, ONE), card(ALPHA2, ALPHA))
    v = check_k_safe(ann, p, 1, cath_hands=[C])
    assert v.kind is ViolationKind.NO_CONTAINING_HAND
    assert v.cath_hand == C and v.tuple == (card(ALPHA2, ALPHA2),)
    assert v.replay(ann)
    first = check_k_safe(ann, p, 1)
    assert first.kind is ViolationKind.NO_CONTAINING_HAND and first.replay(ann)


def test_two_safe_10_12_3():
    p = ProtocolParams(10, 12, 3, 5, 1, 2)
    assert check_k_safe(canonical_announcement(p), p, 2) is True


def test_protocol_reports():
    r = check_protocol(ProtocolParams(8, 6, 2, 4, 1, 2))
    assert (r.informative, r.safe, r.hands) == (True, True, 30)
    r = check_protocol(ProtocolParams(14, 33, 2, 7, 1, 2), 2)
    assert r.ok
    # every pair of points of F_2^2 is a line: not informative, yet 1-safe
    r = check_protocol(ProtocolParams(2, 1, 1, 2, 1, 1), 1)
    assert (r.informative, r.safe) == (False, True)
    assert r.violations[0].kind is ViolationKind.NOT_INFORMATIVE


@pytest.mark.parametrize("q,k,expected", [(4, 2, 30), (5, 2, 60), (2, 1, 6)])
def test_oracle_slicing_count(q, k, expected):
    params = ProtocolParams.from_qdkc(q, 1, k, 0)
    assert oracle_slicing_count(params) == expected
    assert len(enumerate_announcement(canonical_announcement(params))) == expected


@pytest.mark.parametrize("params", SMALL, ids=str)
def test_fast_checks_match_definitions(params):
    full = enumerate_announcement(canonical_announcement(params))
    rng = random.Random(params.deck_size * 31 + params.c)
    anns = [full] + [
        EnumeratedAnnouncement(tuple(rng.sample(full.hands, rng.randint(2, len(full)))), full.deck_size)
        for _ in range(6)
    ]
    for ann in anns:
        assert len(ann) <= 64 and ann.deck_size <= 25
        inf = check_informative(ann, params)
        assert (inf is True) == check_informative_by_deals(ann, params)
        if inf is not True:
            assert inf.replay(ann)
        for k in range(1, min(params.k, 2) + 1):
            safe = check_k_safe(ann, params, k)
            assert (safe is True) == naive_k_safe(ann.hands, ann.deck_size, params.c, k)
            if safe is not True:
                assert safe.replay(ann)


def test_excluding_violation_is_found():
    p = ProtocolParams(8, 6, 2, 4, 1, 2)
    # both hands share card 1, so Cath knows Alice holds it
    ann = EnumeratedAnnouncement((tuple(range(1, 9)), (1,) + tuple(range(10, 17))), 16)
    v = check_k_safe(ann, p, 1)
    assert v.kind is ViolationKind.NO_EXCLUDING_HAND
    assert v.tuple == (1,) and v.replay(ann)


def test_symmetry_spot_check(p862):
    base = check_protocol(p862)
    rng = random.Random(2024)
    for _ in range(20):
        perm = tuple(rng.sample(range(16), 16))
        ann = ImplicitAnnouncement(CardMap(p862, perm), 2)
        assert (check_informative(ann, p862) is True) == base.informative
        assert (check_k_safe(ann, p862, 2) is True) == base.safe


@pytest.mark.parametrize("params", SMALL, ids=str)
def test_safety_is_monotone_in_k(params):
    ann = enumerate_announcement(canonical_announcement(params))
    verdicts = [check_k_safe(ann, params, k) is True for k in range(1, 4)]
    for j in range(len(verdicts)):
        if verdicts[j]:
            assert all(verdicts[:j])
