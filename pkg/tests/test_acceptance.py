"""Exit criteria.  Each test prints one PASS/FAIL line with its runtime."""

import contextlib
import itertools
import random
import time
from math import comb

import pytest

from geocards.field import make_field
from geocards.geometry import (
    Hyperplane,
    find_avoiding_subspace,
    hyperplane_points,
    iter_slicings,
    slicing_points,
    space,
)
from geocards.params import ProtocolParams, check_conditions, derive_params, enumerate_sizes, slicing_gap_lower_bound
from geocards.protocol import (
    CardMap,
    ImplicitAnnouncement,
    canonical_announcement,
    construct_containing_hand,
    construct_excluding_hand,
    enumerate_announcement,
)
from geocards.verifier import ViolationKind, check_informative, check_k_safe, check_protocol, min_pairwise_union


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        status = "FAIL"
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                print(f"\n[{status}] criterion {number}: {title} ({elapsed:.2f}s / {limit}s)")

    return run


def test_c1_862_reproduction(criterion):
    with criterion(1, "(8,6,2): 30 hands, informative, 2-safe", 5):
        p = ProtocolParams(8, 6, 2, 4, 1, 2)
        ann = enumerate_announcement(canonical_announcement(p))
        assert len(ann) == 30
        assert check_informative(ann, p) is True
        assert min_pairwise_union(ann) == slicing_gap_lower_bound(4, 1, 2) == 12 > p.a + p.c
        assert comb(16, 2) == 120
        assert check_k_safe(ann, p, 2) is True


def test_c2_10_12_3_boundary(criterion):
    with criterion(2, "(10,12,3): second condition fails, protocol still informative and 2-safe", 60):
        p = ProtocolParams(10, 12, 3, 5, 1, 2)
        rec = check_conditions(p)
        assert rec.cond1 and not rec.cond2
        report = check_protocol(p, 2)
        assert report.hands == 60
        assert report.informative and report.safe


def test_c3_853_failure_witness(criterion):
    with criterion(3, "(8,5,3): 1-safety fails on three collinear Cath cards", 5):
        p = ProtocolParams(8, 5, 3, 4, 1, 2)
        ann = canonical_announcement(p)
        v = check_k_safe(ann, p, 1)
        assert v is not True and v.kind is ViolationKind.NO_CONTAINING_HAND
        assert v.replay(ann)
        cmap, sp = ann.cardmap, ann.cardmap.space
        C, X = cmap.image(v.cath_hand), cmap.image(v.tuple)
        assert len(C) == 3 and len(X) == 1
        lines = [hyperplane_points(sp, Hyperplane(d, t)) for d in sp.directions for t in range(sp.q)]
        assert any(C | X <= line for line in lines)


def test_c4_main_theorem_empirical(criterion):
    with criterion(4, "every size meeting both conditions with deck <= 32 verifies", 120):
        records = [r for r in enumerate_sizes(32) if r.theorem_applies]
        sizes = {r.params for r in records}
        assert ProtocolParams(8, 6, 2, 4, 1, 2) in sizes
        assert any(p.q == 4 and p.d == 1 for p in sizes) and any(p.q == 5 and p.d == 1 for p in sizes)
        for r in records:
            report = check_protocol(r.params, r.params.k)
            assert report.ok, r.params


def test_c5_parameter_theorem(criterion):
    with criterion(5, "derived parameters meet a <= 2k(kc+1) and b < 2a(c+1)", 1):
        for k, c in itertools.product(range(1, 4), repeat=2):
            r = derive_params(k, c, 1)
            p = r.params
            assert r.theorem_applies
            assert p.a <= 2 * k * (k * c + 1)
            assert p.b < 2 * p.a * (c + 1)


def _check_constructions(params, trials, rng):
    ann = ImplicitAnnouncement(CardMap(params, tuple(rng.sample(range(params.deck_size), params.deck_size))), params.k)
    listed = set(enumerate_announcement(ann).hands)
    deck = range(1, params.deck_size + 1)
    for _ in range(trials):
        C = set(rng.sample(deck, params.c))
        X = set(rng.sample([x for x in deck if x not in C], rng.randint(1, params.k)))
        yes = construct_containing_hand(X, C, ann)
        no = construct_excluding_hand(X, C, ann)
        assert yes in listed and X <= set(yes) and not C & set(yes)
        assert no in listed and not X <= set(no) and not C & set(no)


def test_c6_constructive_lemmas(criterion):
    with criterion(6, "avoiding subspaces and witness hands verify by enumeration", 30):
        rng = random.Random(6)
        configs = list(itertools.product((4, 5, 7, 8), (1, 2)))
        for trial in range(500):
            q, d = configs[trial % len(configs)]
            sp = space(q, d + 1)
            k = rng.randint(1, q - 1)
            e_size = rng.randint(0, q // k)
            pts = rng.sample(sp.points, e_size + k)
            E, X = set(pts[:e_size]), set(pts[e_size:e_size + rng.randint(1, k)])
            direction = find_avoiding_subspace(sp, E, X, k)
            for x in X:
                plane = hyperplane_points(sp, Hyperplane(direction, sp.dot(direction.normal, x)))
                assert x in plane and not plane & E
        _check_constructions(ProtocolParams(8, 6, 2, 4, 1, 2), 200, rng)
        _check_constructions(ProtocolParams(14, 33, 2, 7, 1, 2), 200, rng)


def test_c7_slicing_union_lemma(criterion):
    with criterion(7, "distinct 2-slicings of GF(4)^2 and GF(5)^2 have large unions", 5):
        for q, pairs in ((4, 435), (5, 1770)):
            sp = space(q, 2)
            slicings = list({slicing_points(sp, s) for s in iter_slicings(sp, 2)})
            combos = list(itertools.combinations(slicings, 2))
            assert len(combos) == pairs
            bound = slicing_gap_lower_bound(q, 1, 2)
            assert all(len(X | Y) >= bound for X, Y in combos)


def _reduce_x2_x_1(a, b):
    """Multiply a0 + a1 x by b0 + b1 x over Z_2 and substitute x^2 = x + 1."""
    c0, c1, c2 = a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[1] * b[1]
    return ((c0 + c2) % 2, (c1 + c2) % 2)


def test_c8_field_core(criterion):
    with criterion(8, "field axioms for small orders; GF(4) reduces by x^2+x+1", 1):
        for q in (2, 3, 4, 5, 7, 8, 9):
            F = make_field(q)
            add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
            for x in range(q):
                assert add[x][0] == x and mul[x][1] == x and add[x][neg[x]] == 0
                if x:
                    assert mul[x][inv[x]] == 1
            for x, y, z in itertools.product(range(q), repeat=3):
                assert add[x][y] == add[y][x] and mul[x][y] == mul[y][x]
                assert add[add[x][y]][z] == add[x][add[y][z]]
                assert mul[mul[x][y]][z] == mul[x][mul[y][z]]
                assert mul[x][add[y][z]] == add[mul[x][y]][mul[x][z]]
        F = make_field(4)
        assert F.modulus == (1, 1, 1)
        for x, y in itertools.product(F.elements(), repeat=2):
            assert (x * y).coeffs == _reduce_x2_x_1(x.coeffs, y.coeffs)
