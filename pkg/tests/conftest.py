import pytest

from geocards.params import ProtocolParams
from geocards.protocol import CardMap, ImplicitAnnouncement

# element indices in GF(4) under the modulus x^2 + x + 1
ZERO, ONE, ALPHA, ALPHA2 = 0, 1, 2, 3


def card(i, j, q=4):
    """Card of the point <i, j> under the identity card map."""
    return 1 + i + q * j


@pytest.fixture
def p862():
    return ProtocolParams(8, 6, 2, 4, 1, 2)


@pytest.fixture
def ann862(p862):
    return ImplicitAnnouncement(CardMap.identity(p862), 2)


@pytest.fixture
def deal862():
    """Alice holds the lines y = 0 and y = 1; Cath holds <0, a> and <1, a>."""
    A = [card(i, j) for j in (ZERO, ONE) for i in range(4)]
    C = [card(ZERO, ALPHA), card(ONE, ALPHA)]
    B = sorted(set(range(1, 17)) - set(A) - set(C))
    return A, B, C
