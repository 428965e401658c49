"""Points, hyperplanes and k-slicings of the affine space F_q^n.

A point is a tuple of field-element *indices* (see :mod:`geocards.field`),
so points hash cheaply and sort canonically.  Hyperplanes are described
dually, by a canonical normal vector and an offset: ``{x : normal . x = t}``.
Two hyperplanes with the same normal and different offsets are parallel,
and the q offsets of one normal partition the space.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .errors import IndexOutOfRange, PreconditionViolated, SizeGuard
from .field import FiniteField, make_field

#: Largest number of points any operation will materialize.
POINT_BUDGET = 65536

Point = tuple


@dataclass(frozen=True)
class Direction:
    """Canonical normal of a parallel class: first nonzero coordinate is one."""

    normal: tuple

    def __post_init__(self):
        lead = next((c for c in self.normal if c), None)
        if lead is None:
            raise ValueError("direction normal must be nonzero")
        if lead != 1:
            raise ValueError(f"normal {self.normal} is not in canonical form")


@dataclass(frozen=True)
class Hyperplane:
    direction: Direction
    offset: int


@dataclass(frozen=True)
class Slicing:
    """Union of ``len(offsets)`` parallel hyperplanes sharing ``direction``."""

    direction: Direction
    offsets: frozenset

    @property
    def k(self):
        return len(self.offsets)

    def hyperplanes(self):
        return [Hyperplane(self.direction, t) for t in sorted(self.offsets)]


@dataclass(frozen=True)
class AffineSpace:
    """The space F_q^n together with its canonical point codec.

    Point index ``i`` has base-q digits ``i_0, i_1, ...`` (least significant
    first) and maps to the point whose coordinate ``j`` is element ``i_j``.
    """

    field: FiniteField
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be positive")

    @property
    def q(self):
        return self.field.order

    @property
    def size(self):
        return self.q**self.n

    def __repr__(self):
        return f"AffineSpace(GF({self.q})^{self.n})"

    def require_budget(self, budget=POINT_BUDGET):
        if self.size > budget:
            raise SizeGuard(f"{self!r} has {self.size} points, over the budget of {budget}")

    # codec

    def encode(self, index):
        """Point with the given codec index."""
        if not 0 <= index < self.size:
            raise IndexOutOfRange(f"point index {index} outside [0, {self.size})")
        coords = []
        for _ in range(self.n):
            index, r = divmod(index, self.q)
            coords.append(r)
        return tuple(coords)

    def decode(self, point):
        if len(point) != self.n or not all(0 <= c < self.q for c in point):
            raise IndexOutOfRange(f"{point!r} is not a point of {self!r}")
        index = 0
        for c in reversed(point):
            index = index * self.q + c
        return index

    @functools.cached_property
    def points(self):
        self.require_budget()
        return tuple(self.encode(i) for i in range(self.size))

    def elements(self, point):
        """Coordinates of ``point`` as :class:`FieldElement` objects."""
        return [self.field.element(c) for c in point]

    # vector arithmetic on index tuples

    def add(self, x, y):
        t = self.field.add_table
        return tuple(t[a][b] for a, b in zip(x, y))

    def sub(self, x, y):
        t, neg = self.field.add_table, self.field.neg_table
        return tuple(t[a][neg[b]] for a, b in zip(x, y))

    def scale(self, s, x):
        t = self.field.mul_table[s]
        return tuple(t[a] for a in x)

    def dot(self, u, v):
        add, mul = self.field.add_table, self.field.mul_table
        acc = 0
        for a, b in zip(u, v):
            acc = add[acc][mul[a][b]]
        return acc

    @property
    def zero(self):
        return (0,) * self.n

    @functools.lru_cache(maxsize=4096)
    def offsets(self, direction):
        """``offsets(dir)[i]`` is the offset of the hyperplane of ``dir`` through point ``i``."""
        normal = direction.normal
        return tuple(self.dot(normal, x) for x in self.points)

    @functools.lru_cache(maxsize=4096)
    def cosets(self, direction):
        """Point indices of each of the q hyperplanes of ``direction``, indexed by offset."""
        out = [[] for _ in range(self.q)]
        for i, t in enumerate(self.offsets(direction)):
            out[t].append(i)
        return tuple(tuple(c) for c in out)

    def canonical_direction(self, vector):
        lead = next((c for c in vector if c), None)
        if lead is None:
            raise ValueError("zero vector has no direction")
        return Direction(self.scale(self.field.inv_table[lead], vector))

    @functools.cached_property
    def directions(self):
        return tuple(enumerate_directions(self.field, self.n))


def point_codec(field, n):
    """The canonical bijection between ``range(q**n)`` and points of F_q^n."""
    return AffineSpace(field, n)


def space(q, n):
    return AffineSpace(make_field(q), n)


def direction_count(q, n):
    return (q**n - 1) // (q - 1)


def enumerate_directions(field, n):
    """All canonical normals of F_q^n in codec order, one per parallel class."""
    if n < 2:
        raise ValueError("need dimension n >= 2")
    q = field.order
    if direction_count(q, n) > POINT_BUDGET:
        raise SizeGuard(f"GF({q})^{n} has too many directions to enumerate")
    sp = AffineSpace(field, n)
    out = []
    for i in range(1, q**n):
        v = sp.encode(i)
        lead = next(c for c in v if c)
        if lead == 1:
            out.append(Direction(v))
    return out


def hyperplane_points(sp, h):
    offs = sp.offsets(h.direction)
    pts = sp.points
    return frozenset(pts[i] for i, t in enumerate(offs) if t == h.offset)


def slicing_points(sp, s):
    offs = sp.offsets(s.direction)
    pts = sp.points
    return frozenset(pts[i] for i, t in enumerate(offs) if t in s.offsets)


def iter_slicings(sp, k):
    """Every k-slicing of ``sp``, grouped by direction, offsets in lexicographic order."""
    for direction in sp.directions:
        for offs in itertools.combinations(range(sp.q), k):
            yield Slicing(direction, frozenset(offs))


def is_slicing(sp, points, k):
    """The slicing whose point set is exactly ``points``, or None.

    A set of the right size whose dot products against some normal take only
    k values is contained in k cosets of that normal, and so equals their union.
    """
    points = set(points)
    if not 1 <= k <= sp.q or len(points) != k * sp.q ** (sp.n - 1):
        return None
    for direction in sp.directions:
        values = {sp.dot(direction.normal, x) for x in points}
        if len(values) == k:
            return Slicing(direction, frozenset(values))
    return None


def span(sp, basis):
    """All linear combinations of ``basis``."""
    pts = {sp.zero}
    for b in basis:
        multiples = [sp.scale(t, b) for t in range(sp.q)]
        pts = {sp.add(v, m) for v in pts for m in multiples}
    return pts


def normal_of(sp, basis):
    """Canonical normal of the (n-1)-dimensional subspace spanned by ``basis``."""
    for direction in sp.directions:
        if all(sp.dot(direction.normal, b) == 0 for b in basis):
            return direction
    raise ValueError("basis does not span a hyperplane")  # pragma: no cover


def find_avoiding_subspace(sp, avoid, through, k):
    """Direction whose hyperplanes through each point of ``through`` miss ``avoid``.

    Grows a chain of subspaces {0} = V_0 < V_1 < ... < V_{n-1}, each time
    adjoining the first vector u (in codec order) for which no translate
    ``x + <u, V>`` with x in ``through`` meets ``avoid``.  The counting
    argument guarantees such a u exists whenever ``k * |avoid| <= q``.
    """
    avoid, through = set(avoid), set(through)
    if len(through) > k:
        raise PreconditionViolated(f"{len(through)} points given but k = {k}")
    if avoid & through:
        raise PreconditionViolated("points to pass through meet the avoided set")
    if k * len(avoid) > sp.q:
        raise PreconditionViolated(f"k*|E| = {k * len(avoid)} exceeds q = {sp.q}")
    sp.require_budget()
    if not avoid or not through:
        return sp.directions[0]

    # x + U meets E iff some e - x lies in U
    diffs = {sp.sub(e, x) for e in avoid for x in through}
    basis, current = [], {sp.zero}
    for _ in range(sp.n - 1):
        for u in sp.points[1:]:
            if u in current:
                continue
            multiples = [sp.scale(t, u) for t in range(1, sp.q)]
            if any(sp.sub(d, m) in current for d in diffs for m in multiples):
                continue
            basis.append(u)
            current = {sp.add(v, sp.scale(t, u)) for v in current for t in range(sp.q)}
            break
        else:  # pragma: no cover - excluded by the counting bound
            raise AssertionError("no admissible extension found")
    return normal_of(sp, basis)
