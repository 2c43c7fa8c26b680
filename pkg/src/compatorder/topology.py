"""Finite topological spaces stored extensionally as their family of open sets.

Point sets are bit vectors over ``range(n)``.  Every finite space is an
Alexandrov space, so each point ``x`` has a smallest open neighbourhood
``U_x`` (the intersection of all opens containing it); interior and closure
are computed from those.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import TopologyError, WidthMismatch


def _popcount(bits: int) -> int:
    return bin(bits).count("1")


def _iter_bits(bits: int):
    i = 0
    while bits:
        if bits & 1:
            yield i
        bits >>= 1
        i += 1


@dataclass(frozen=True, slots=True)
class PointSet:
    """A subset of ``range(n)`` as an immutable bit vector."""

    n: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n:
            raise WidthMismatch(f"bits {self.bits:#b} exceed width {self.n}")

    @classmethod
    def of(cls, n: int, points) -> PointSet:
        bits = 0
        for p in points:
            if not 0 <= p < n:
                raise WidthMismatch(f"point {p} outside range({n})")
            bits |= 1 << p
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> PointSet:
        return cls(n, (1 << n) - 1)

    @classmethod
    def empty(cls, n: int) -> PointSet:
        return cls(n, 0)

    def _check(self, other: PointSet) -> None:
        if not isinstance(other, PointSet):
            raise TypeError(f"expected PointSet, got {type(other).__name__}")
        if other.n != self.n:
            raise WidthMismatch(f"width {self.n} vs {other.n}")

    def __or__(self, other):
        self._check(other)
        return PointSet(self.n, self.bits | other.bits)

    def __and__(self, other):
        self._check(other)
        return PointSet(self.n, self.bits & other.bits)

    def __sub__(self, other):
        self._check(other)
        return PointSet(self.n, self.bits & ~other.bits)

    def __xor__(self, other):
        self._check(other)
        return PointSet(self.n, self.bits ^ other.bits)

    def __invert__(self):
        return PointSet(self.n, ((1 << self.n) - 1) & ~self.bits)

    complement = __invert__

    def __le__(self, other):
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other):
        return self <= other and self.bits != other.bits

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def isdisjoint(self, other) -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    def __contains__(self, point: int) -> bool:
        return 0 <= point < self.n and bool(self.bits >> point & 1)

    def __iter__(self):
        return _iter_bits(self.bits)

    def __len__(self):
        return _popcount(self.bits)

    def __bool__(self):
        return self.bits != 0

    def to_list(self) -> list[int]:
        return list(self)

    def __repr__(self):
        return "{" + ",".join(map(str, self)) + "}"


def _mask(n: int, s) -> int:
    if isinstance(s, PointSet):
        if s.n != n:
            raise WidthMismatch(f"width {s.n} vs {n}")
        return s.bits
    if isinstance(s, int):
        if s < 0 or s >> n:
            raise WidthMismatch(f"mask {s:#b} exceeds width {n}")
        return s
    return PointSet.of(n, s).bits


def _union_closure(generators, start=(0,)) -> set[int]:
    family = set(start)
    for g in generators:
        family |= {o | g for o in family}
    return family


class FiniteSpace:
    """A finite set ``range(n)`` with an explicit topology.

    ``opens`` must contain the empty and the full set and be closed under
    pairwise union and intersection; this is checked on construction.
    """

    def __init__(self, n: int, opens):
        if n < 0:
            raise TopologyError("negative point count")
        masks = [_mask(n, o) for o in opens]
        unique = frozenset(masks)
        if len(unique) != len(masks):
            raise TopologyError("duplicate open sets")
        full = (1 << n) - 1
        if 0 not in unique:
            raise TopologyError("empty set missing from opens")
        if full not in unique:
            raise TopologyError("full set missing from opens")
        min_nbhd = []
        for x in range(n):
            u = full
            for o in unique:
                if o >> x & 1:
                    u &= o
            min_nbhd.append(u)
        # closed under unions and intersections iff every member is a union of
        # minimal neighbourhoods, every such union is a member, and each U_x is one
        if any(u not in unique for u in min_nbhd):
            raise TopologyError("opens not closed under intersection")
        if _union_closure(min_nbhd) != unique:
            raise TopologyError("opens not closed under union")
        self.n = n
        self._masks = unique
        self._min_nbhd = tuple(min_nbhd)
        self._interior_cache = {}

    # construction helpers

    @classmethod
    def generated(cls, n: int, subbase) -> FiniteSpace:
        """Coarsest topology containing every set in ``subbase``."""
        full = (1 << n) - 1
        gens = [_mask(n, s) for s in subbase]
        min_nbhd = []
        for x in range(n):
            u = full
            for g in gens:
                if g >> x & 1:
                    u &= g
            min_nbhd.append(u)
        return cls(n, _union_closure(min_nbhd) | {full})

    @classmethod
    def discrete(cls, n: int) -> FiniteSpace:
        return cls.generated(n, [1 << x for x in range(n)])

    @classmethod
    def indiscrete(cls, n: int) -> FiniteSpace:
        return cls(n, {0, (1 << n) - 1})

    @classmethod
    def sierpinski(cls) -> FiniteSpace:
        """Points ``a=0`` (open) and ``b=1`` (closed)."""
        return cls(2, [0, 0b01, 0b11])

    @classmethod
    def from_preorder(cls, n: int, leq) -> FiniteSpace:
        """Opens are the up-sets of ``leq`` (``x <= y`` means ``x`` is in the closure of ``{y}``)."""
        ups = [PointSet.of(n, [y for y in range(n) if leq(x, y)]) for x in range(n)]
        return cls.generated(n, ups)

    def disjoint_union(self, other: FiniteSpace) -> FiniteSpace:
        n = self.n + other.n
        opens = {a | (b << self.n) for a in self._masks for b in other._masks}
        return FiniteSpace(n, opens)

    # basic queries

    def __eq__(self, other):
        return (
            isinstance(other, FiniteSpace)
            and self.n == other.n
            and self._masks == other._masks
        )

    def __hash__(self):
        return hash((self.n, self._masks))

    def __repr__(self):
        return f"FiniteSpace(n={self.n}, opens={[list(o) for o in self.opens]})"

    @cached_property
    def opens(self) -> tuple[PointSet, ...]:
        order = sorted(self._masks, key=lambda m: (_popcount(m), m))
        return tuple(PointSet(self.n, m) for m in order)

    @property
    def open_masks(self) -> frozenset[int]:
        return self._masks

    @property
    def points(self) -> range:
        return range(self.n)

    def full(self) -> PointSet:
        return PointSet.full(self.n)

    def empty(self) -> PointSet:
        return PointSet.empty(self.n)

    def pointset(self, points) -> PointSet:
        return PointSet.of(self.n, points)

    def minimal_neighbourhood(self, x: int) -> PointSet:
        return PointSet(self.n, self._min_nbhd[x])

    def _check(self, s: PointSet) -> None:
        if not isinstance(s, PointSet):
            raise TypeError(f"expected PointSet, got {type(s).__name__}")
        if s.n != self.n:
            raise WidthMismatch(f"set of width {s.n} in a {self.n}-point space")

    def is_open(self, s: PointSet) -> bool:
        self._check(s)
        return s.bits in self._masks

    def is_closed(self, s: PointSet) -> bool:
        return self.is_open(~s)

    def is_clopen(self, s: PointSet) -> bool:
        return self.is_open(s) and self.is_open(~s)

    @cached_property
    def clopens(self) -> tuple[PointSet, ...]:
        full = (1 << self.n) - 1
        return tuple(o for o in self.opens if full & ~o.bits in self._masks)

    def is_discrete(self) -> bool:
        return len(self._masks) == 1 << self.n

    # Hausdorff finite spaces are exactly the discrete ones
    is_hausdorff = is_discrete

    def specializes(self, x: int, y: int) -> bool:
        """True iff ``x`` lies in the closure of ``{y}``."""
        return bool(self._min_nbhd[x] >> y & 1)

    def _interior_bits(self, bits: int) -> int:
        cached = self._interior_cache.get(bits)
        if cached is None:
            cached = 0
            for x in range(self.n):
                if self._min_nbhd[x] & ~bits == 0:
                    cached |= 1 << x
            self._interior_cache[bits] = cached
        return cached

    def _closure_bits(self, bits: int) -> int:
        full = (1 << self.n) - 1
        return full & ~self._interior_bits(full & ~bits)


def interior(space: FiniteSpace, s: PointSet) -> PointSet:
    """Largest open subset of ``s``."""
    space._check(s)
    return PointSet(space.n, space._interior_bits(s.bits))


def closure(space: FiniteSpace, s: PointSet) -> PointSet:
    space._check(s)
    return PointSet(space.n, space._closure_bits(s.bits))


def boundary(space: FiniteSpace, s: PointSet) -> PointSet:
    return closure(space, s) - interior(space, s)


def is_regular_open(space: FiniteSpace, s: PointSet) -> bool:
    space._check(s)
    return space._interior_bits(space._closure_bits(s.bits)) == s.bits


def is_regular_closed(space: FiniteSpace, s: PointSet) -> bool:
    space._check(s)
    return space._closure_bits(space._interior_bits(s.bits)) == s.bits


def _require(pred, space, *sets, what):
    from .errors import NotRegularError

    for s in sets:
        if not pred(space, s):
            raise NotRegularError(f"{s!r} is not regularly {what}")


def ro_join(space: FiniteSpace, u: PointSet, v: PointSet) -> PointSet:
    _require(is_regular_open, space, u, v, what="open")
    return PointSet(space.n, space._interior_bits(space._closure_bits(u.bits | v.bits)))


def ro_meet(space: FiniteSpace, u: PointSet, v: PointSet) -> PointSet:
    _require(is_regular_open, space, u, v, what="open")
    return u & v


def rc_join(space: FiniteSpace, f: PointSet, g: PointSet) -> PointSet:
    _require(is_regular_closed, space, f, g, what="closed")
    return f | g


def rc_meet(space: FiniteSpace, f: PointSet, g: PointSet) -> PointSet:
    _require(is_regular_closed, space, f, g, what="closed")
    return PointSet(space.n, space._closure_bits(space._interior_bits(f.bits & g.bits)))


def regular_open_sets(space: FiniteSpace) -> list[PointSet]:
    return [
        PointSet(space.n, b)
        for b in range(1 << space.n)
        if space._interior_bits(space._closure_bits(b)) == b
    ]


def regular_closed_sets(space: FiniteSpace) -> list[PointSet]:
    return [
        PointSet(space.n, b)
        for b in range(1 << space.n)
        if space._closure_bits(space._interior_bits(b)) == b
    ]


# connectedness


def is_connected(space: FiniteSpace, s: PointSet) -> bool:
    """Whether the subspace ``s`` is nonempty and admits no separation."""
    space._check(s)
    if not s:
        return False
    rel = {o & s.bits for o in space.open_masks}
    return not any(r and r != s.bits and (s.bits ^ r) in rel for r in rel)


def _partition(labels) -> tuple[PointSet, ...]:
    n = len(labels)
    groups = {}
    for x, lab in enumerate(labels):
        groups.setdefault(lab, []).append(x)
    blocks = sorted(groups.values(), key=lambda pts: pts[0])
    return tuple(PointSet.of(n, pts) for pts in blocks)


def connected_components(space: FiniteSpace) -> tuple[PointSet, ...]:
    """Components, ordered by least point.

    ``U_x`` is connected and contains ``x``, so linking ``x`` with every point
    of ``U_x`` and taking the transitive closure yields the components.
    """
    parent = list(range(space.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in range(space.n):
        for y in _iter_bits(space._min_nbhd[x]):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    return _partition([find(x) for x in range(space.n)])


def quasicomponents(space: FiniteSpace) -> tuple[PointSet, ...]:
    """Classes of points lying in exactly the same clopen sets."""
    clopen = space.clopens
    return _partition([tuple(x in c for c in clopen) for x in range(space.n)])


# maps


@dataclass(frozen=True)
class SpaceMap:
    source: FiniteSpace
    target: FiniteSpace
    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        if len(self.assignment) != self.source.n:
            raise WidthMismatch("assignment is not total on the source")
        if any(not 0 <= y < self.target.n for y in self.assignment):
            raise WidthMismatch("assignment leaves the target")

    def __call__(self, x: int) -> int:
        return self.assignment[x]

    def image(self, s: PointSet) -> PointSet:
        self.source._check(s)
        return PointSet.of(self.target.n, (self.assignment[x] for x in s))

    def preimage(self, s: PointSet) -> PointSet:
        self.target._check(s)
        return PointSet.of(self.source.n, (x for x, y in enumerate(self.assignment) if y in s))

    def is_injective(self) -> bool:
        return len(set(self.assignment)) == len(self.assignment)

    def is_surjective(self) -> bool:
        return set(self.assignment) == set(range(self.target.n))

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def is_continuous(self) -> bool:
        return all(self.source.is_open(self.preimage(o)) for o in self.target.opens)

    def is_open_map(self) -> bool:
        return all(self.target.is_open(self.image(o)) for o in self.source.opens)

    def is_homeomorphism(self) -> bool:
        return self.is_bijective() and self.is_continuous() and self.is_open_map()

    def inverse(self) -> SpaceMap:
        if not self.is_bijective():
            raise ValueError("map is not bijective")
        inv = [0] * self.target.n
        for x, y in enumerate(self.assignment):
            inv[y] = x
        return SpaceMap(self.target, self.source, tuple(inv))

    def then(self, other: SpaceMap) -> SpaceMap:
        """``other ∘ self``."""
        if other.source != self.target:
            raise ValueError("maps are not composable")
        return SpaceMap(self.source, other.target, tuple(other.assignment[y] for y in self.assignment))

    @classmethod
    def identity(cls, space: FiniteSpace) -> SpaceMap:
        return cls(space, space, tuple(range(space.n)))


def component_quotient(space: FiniteSpace) -> tuple[FiniteSpace, SpaceMap]:
    """Quotient by connected components with the quotient topology."""
    classes = connected_components(space)
    k = len(classes)
    opens = []
    for sel in range(1 << k):
        pre = 0
        for i in _iter_bits(sel):
            pre |= classes[i].bits
        if pre in space.open_masks:
            opens.append(sel)
    quotient = FiniteSpace(k, opens)
    label = [0] * space.n
    for i, c in enumerate(classes):
        for x in c:
            label[x] = i
    return quotient, SpaceMap(space, quotient, tuple(label))


# homeomorphism search


def _point_signature(space: FiniteSpace, x: int) -> tuple[int, int, int]:
    containing = sum(1 for o in space.open_masks if o >> x & 1)
    below = sum(1 for y in range(space.n) if space.specializes(y, x))
    return containing, _popcount(space._min_nbhd[x]), below


def find_homeomorphism(a: FiniteSpace, b: FiniteSpace) -> SpaceMap | None:
    """Search for a homeomorphism ``a -> b``; ``None`` if none exists.

    Exhaustive backtracking over bijections, pruned by open-set counts and
    per-point signatures and by preservation of the specialization preorder.
    """
    if a.n != b.n or len(a.open_masks) != len(b.open_masks):
        return None
    sig_a = [_point_signature(a, x) for x in range(a.n)]
    sig_b = [_point_signature(b, y) for y in range(b.n)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    # most constrained points first
    counts = {}
    for s in sig_a:
        counts[s] = counts.get(s, 0) + 1
    order = sorted(range(a.n), key=lambda x: (counts[sig_a[x]], x))
    assign = [-1] * a.n
    used = [False] * b.n

    def consistent(x, y):
        for x2 in order:
            y2 = assign[x2]
            if y2 < 0:
                continue
            if a.specializes(x, x2) != b.specializes(y, y2):
                return False
            if a.specializes(x2, x) != b.specializes(y2, y):
                return False
        return True

    def search(i):
        if i == len(order):
            return True
        x = order[i]
        for y in range(b.n):
            if used[y] or sig_b[y] != sig_a[x] or not consistent(x, y):
                continue
            assign[x], used[y] = y, True
            if search(i + 1):
                return True
            assign[x], used[y] = -1, False
        return False

    if not search(0):
        return None
    found = SpaceMap(a, b, tuple(assign))
    if not found.is_homeomorphism():
        raise AssertionError("preorder-preserving bijection failed open-set check")
    return found


# enumeration of small topologies


@lru_cache(maxsize=None)
def all_topologies(n: int) -> tuple[FiniteSpace, ...]:
    """Every topology on ``range(n)``, via reflexive transitive relations."""
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    spaces = []
    for choice in range(1 << len(pairs)):
        rel = [[x == y for y in range(n)] for x in range(n)]
        for i, (x, y) in enumerate(pairs):
            if choice >> i & 1:
                rel[x][y] = True
        transitive = all(
            rel[x][z] or not (rel[x][y] and rel[y][z])
            for x in range(n)
            for y in range(n)
            for z in range(n)
        )
        if transitive:
            spaces.append(FiniteSpace.from_preorder(n, lambda x, y, r=rel: r[x][y]))
    return tuple(spaces)


def canonical_form(space: FiniteSpace) -> tuple[int, ...]:
    """Lexicographically least sorted open-mask tuple over all relabelings."""
    best = None
    for perm in itertools.permutations(range(space.n)):
        relabeled = []
        for o in space.open_masks:
            m = 0
            for x in _iter_bits(o):
                m |= 1 << perm[x]
            relabeled.append(m)
        key = tuple(sorted(relabeled))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def topologies_up_to_homeomorphism(n: int) -> tuple[FiniteSpace, ...]:
    reps = {}
    for space in all_topologies(n):
        reps.setdefault(canonical_form(space), space)
    return tuple(reps[k] for k in sorted(reps))


def small_spaces(max_points: int = 4) -> list[FiniteSpace]:
    """One representative per homeomorphism class on 1..max_points points."""
    out = []
    for n in range(1, max_points + 1):
        out.extend(topologies_up_to_homeomorphism(n))
    return out
