"""Finite bounded distributive lattices, their filters, and spectrum spaces."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import LatticeError
from .functions import FnFamily, ValueGrid, enumerate_family
from .topology import (
    FiniteSpace,
    PointSet,
    _popcount,
    rc_join,
    rc_meet,
    regular_closed_sets,
    regular_open_sets,
    ro_join,
    ro_meet,
)


class Provenance(str, enum.Enum):
    RO = "RO"
    RC = "RC"
    THETA = "THETA"
    SIGMA = "SIGMA"
    ABSTRACT = "ABSTRACT"


SET_BASED = {Provenance.RO, Provenance.RC, Provenance.THETA, Provenance.SIGMA}


def _set_key(s: PointSet):
    return (_popcount(s.bits), s.bits)


class FiniteLattice:
    """A finite lattice given by join and meet tables over element indices.

    Elements are point sets for set-based provenance and arbitrary hashable
    labels for ``ABSTRACT`` lattices.  With ``validate=True`` the tables are
    checked for closure, absorption, both distributive laws, bounds, and
    (for set lattices) agreement of the induced order with inclusion.
    """

    def __init__(self, elements, join, meet, provenance=Provenance.ABSTRACT, *, validate=True):
        self.elements = tuple(elements)
        self.join = tuple(tuple(row) for row in join)
        self.meet = tuple(tuple(row) for row in meet)
        self.provenance = Provenance(provenance)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise LatticeError("duplicate lattice elements")
        m = len(self.elements)
        if m == 0:
            raise LatticeError("empty lattice")
        for table in (self.join, self.meet):
            if len(table) != m or any(len(row) != m for row in table):
                raise LatticeError("operation table has the wrong shape")
            if any(not 0 <= v < m for row in table for v in row):
                raise LatticeError("operation table leaves the element set")
        bottoms = [b for b in range(m) if all(self.join[b][x] == x for x in range(m))]
        tops = [t for t in range(m) if all(self.meet[t][x] == x for x in range(m))]
        if not bottoms or not tops:
            raise LatticeError("lattice is not bounded")
        self.bottom, self.top = bottoms[0], tops[0]
        if validate:
            self.validate()

    @classmethod
    def from_sets(cls, sets, join_fn, meet_fn, provenance, *, validate=True):
        elements = sorted(set(sets), key=_set_key)
        index = {e: i for i, e in enumerate(elements)}

        def table(fn, name):
            rows = []
            for a in elements:
                row = []
                for b in elements:
                    r = fn(a, b)
                    if r not in index:
                        raise LatticeError(f"{name}({a!r}, {b!r}) = {r!r} is not an element")
                    row.append(index[r])
                rows.append(row)
            return rows

        return cls(elements, table(join_fn, "join"), table(meet_fn, "meet"), provenance, validate=validate)

    def validate(self) -> None:
        J, M, m = self.join, self.meet, len(self)
        for a in range(m):
            if J[a][a] != a or M[a][a] != a:
                raise LatticeError(f"operations are not idempotent at {a}")
            for b in range(m):
                if J[a][b] != J[b][a] or M[a][b] != M[b][a]:
                    raise LatticeError(f"operations not commutative at ({a}, {b})")
                if J[a][M[a][b]] != a or M[a][J[a][b]] != a:
                    raise LatticeError(f"absorption fails at ({a}, {b})")
                if (M[a][b] == a) != (J[a][b] == b):
                    raise LatticeError(f"meet and join orders disagree at ({a}, {b})")
        for a, b, c in itertools.product(range(m), repeat=3):
            if J[a][J[b][c]] != J[J[a][b]][c] or M[a][M[b][c]] != M[M[a][b]][c]:
                raise LatticeError(f"associativity fails at ({a}, {b}, {c})")
            if M[a][J[b][c]] != J[M[a][b]][M[a][c]]:
                raise LatticeError(f"meet does not distribute over join at ({a}, {b}, {c})")
            if J[a][M[b][c]] != M[J[a][b]][J[a][c]]:
                raise LatticeError(f"join does not distribute over meet at ({a}, {b}, {c})")
        if self.provenance in SET_BASED:
            for a in range(m):
                for b in range(m):
                    if self.leq(a, b) != (self.elements[a] <= self.elements[b]):
                        raise LatticeError(f"lattice order is not inclusion at ({a}, {b})")

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteLattice({self.provenance.value}, {len(self)} elements)"

    def index(self, element) -> int:
        return self._index[element]

    def __contains__(self, element) -> bool:
        return element in self._index

    def leq(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    @cached_property
    def up_sets(self) -> tuple[int, ...]:
        """Bitmask of ``{b : a <= b}`` for each element index ``a``."""
        return tuple(
            sum(1 << b for b in range(len(self)) if self.leq(a, b)) for a in range(len(self))
        )

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(a, b)`` with ``a < b`` and nothing between."""
        m = len(self)
        edges = []
        for a in range(m):
            for b in range(m):
                if a == b or not self.leq(a, b):
                    continue
                if not any(c not in (a, b) and self.leq(a, c) and self.leq(c, b) for c in range(m)):
                    edges.append((a, b))
        return edges

    @classmethod
    def chain(cls, k: int) -> FiniteLattice:
        """The chain ``0 < 1 < ... < k-1``."""
        r = range(k)
        return cls(list(r), [[max(a, b) for b in r] for a in r], [[min(a, b) for b in r] for a in r])

    @classmethod
    def powerset(cls, n: int) -> FiniteLattice:
        sets = [PointSet(n, b) for b in range(1 << n)]
        return cls.from_sets(sets, lambda a, b: a | b, lambda a, b: a & b, Provenance.ABSTRACT)


# filters


@dataclass(frozen=True)
class Filter:
    """A subset of lattice elements, stored as a bitmask over element indices."""

    lattice: FiniteLattice
    bits: int

    @property
    def members(self) -> frozenset[int]:
        return frozenset(i for i in range(len(self.lattice)) if self.bits >> i & 1)

    def __contains__(self, index: int) -> bool:
        return bool(self.bits >> index & 1)

    def elements(self) -> list:
        return [self.lattice.elements[i] for i in sorted(self.members)]

    def __len__(self):
        return _popcount(self.bits)

    def __repr__(self):
        return f"Filter({sorted(self.members)})"


def is_filter(lattice: FiniteLattice, bits: int) -> bool:
    """Nonempty, upward closed and closed under meets."""
    if bits == 0:
        return False
    members = [i for i in range(len(lattice)) if bits >> i & 1]
    for a in members:
        if lattice.up_sets[a] & ~bits:
            return False
        for b in members:
            if not bits >> lattice.meet[a][b] & 1:
                return False
    return True


def is_proper(f: Filter) -> bool:
    return f.bits != (1 << len(f.lattice)) - 1


def is_prime_filter(f: Filter) -> bool:
    lat = f.lattice
    if not is_filter(lat, f.bits) or not is_proper(f):
        return False
    m = len(lat)
    for a in range(m):
        for b in range(a, m):
            if lat.join[a][b] in f and a not in f and b not in f:
                return False
    return True


def principal_filter(lattice: FiniteLattice, a: int) -> Filter:
    return Filter(lattice, lattice.up_sets[a])


def generated_filter(lattice: FiniteLattice, seeds) -> Filter:
    """Smallest filter containing ``seeds``: the up-set of their meet."""
    seeds = list(seeds)
    if not seeds:
        raise LatticeError("cannot generate a filter from no elements")
    m = seeds[0]
    for s in seeds[1:]:
        m = lattice.meet[m][s]
    return principal_filter(lattice, m)


def all_filters(lattice: FiniteLattice) -> list[Filter]:
    """Every nonempty filter; in a finite lattice these are all principal."""
    return sorted({principal_filter(lattice, a) for a in range(len(lattice))}, key=lambda f: f.bits)


def all_prime_filters(lattice: FiniteLattice) -> list[Filter]:
    return [f for f in all_filters(lattice) if is_proper(f) and is_prime_filter(f)]


def is_ultrafilter(f: Filter) -> bool:
    """Proper filter that no one-element extension keeps proper."""
    lat = f.lattice
    if not is_filter(lat, f.bits) or not is_proper(f):
        return False
    for e in range(len(lat)):
        if e in f:
            continue
        if is_proper(generated_filter(lat, list(f.members) + [e])):
            return False
    return True


def all_ultrafilters(lattice: FiniteLattice) -> list[Filter]:
    return [f for f in all_filters(lattice) if is_ultrafilter(f)]


# spectra


@dataclass(frozen=True)
class SpectrumSpace:
    """Filters of a lattice topologized by the base ``U_a = {P : a not in P}``.

    With ``zariski=True`` the base is ``{P : a in P}`` instead; that variant
    exists only to show the two topologies differ.
    """

    lattice: FiniteLattice
    carrier: tuple[Filter, ...]
    topology: FiniteSpace
    base: tuple[PointSet, ...]
    zariski: bool = False

    def __len__(self):
        return len(self.carrier)

    def index(self, f: Filter) -> int:
        return self.carrier.index(f)


def _topologize(lattice: FiniteLattice, carrier, zariski: bool) -> SpectrumSpace:
    carrier = tuple(carrier)
    k = len(carrier)
    base = []
    for a in range(len(lattice)):
        pts = [i for i, p in enumerate(carrier) if (a in p) == zariski]
        base.append(PointSet.of(k, pts))
    topology = FiniteSpace.generated(k, base)
    if any(not topology.is_open(u) for u in base):
        raise LatticeError("a base set is not open in the generated topology")
    return SpectrumSpace(lattice, carrier, topology, tuple(base), zariski)


def spectrum(lattice: FiniteLattice, *, zariski: bool = False) -> SpectrumSpace:
    """Prime filters with the topology generated by ``U_a``."""
    return _topologize(lattice, all_prime_filters(lattice), zariski)


def ult_space(lattice: FiniteLattice, *, zariski: bool = False) -> SpectrumSpace:
    """Ultrafilters with the subspace topology from the spectrum."""
    return _topologize(lattice, all_ultrafilters(lattice), zariski)


def base_identity_violations(spc: SpectrumSpace) -> list[tuple[int, int]]:
    """Pairs ``(a, b)`` with ``U_a ∩ U_b != U_{a∨b}``."""
    lat = spc.lattice
    out = []
    for a in range(len(lat)):
        for b in range(len(lat)):
            if spc.base[a] & spc.base[b] != spc.base[lat.join[a][b]]:
                out.append((a, b))
    return out


# isomorphisms


def _check_bijection(mapping, a: FiniteLattice, b: FiniteLattice) -> tuple[int, ...]:
    mapping = tuple(mapping)
    if len(mapping) != len(a) or sorted(mapping) != list(range(len(b))):
        raise LatticeError("map is not a bijection between the element sets")
    return mapping


def is_lattice_isomorphism(mapping, a: FiniteLattice, b: FiniteLattice) -> bool:
    """Whether the bijection ``mapping`` preserves joins and meets."""
    t = _check_bijection(mapping, a, b)
    r = range(len(a))
    return all(
        t[a.join[x][y]] == b.join[t[x]][t[y]] and t[a.meet[x][y]] == b.meet[t[x]][t[y]]
        for x in r
        for y in r
    )


def is_order_isomorphism(mapping, a: FiniteLattice, b: FiniteLattice) -> bool:
    t = _check_bijection(mapping, a, b)
    r = range(len(a))
    return all(a.leq(x, y) == b.leq(t[x], t[y]) for x in r for y in r)


def order_iso_is_lattice_iso(mapping, a: FiniteLattice, b: FiniteLattice) -> bool:
    """Decide lattice isomorphism from the order alone, cross-checked against the tables.

    Order preservation is required in both directions; a bijection that is
    merely monotone can fail to be a lattice map (the four-element Boolean
    lattice onto a four-element chain).
    """
    by_order = is_order_isomorphism(mapping, a, b)
    by_tables = is_lattice_isomorphism(mapping, a, b)
    if by_order != by_tables:
        raise AssertionError(
            f"order test says {by_order} but join/meet test says {by_tables} for {tuple(mapping)}"
        )
    return by_order


# concrete set lattices


def lattice_from_ro(space: FiniteSpace) -> FiniteLattice:
    return FiniteLattice.from_sets(
        regular_open_sets(space),
        lambda u, v: ro_join(space, u, v),
        lambda u, v: ro_meet(space, u, v),
        Provenance.RO,
    )


def lattice_from_rc(space: FiniteSpace) -> FiniteLattice:
    return FiniteLattice.from_sets(
        regular_closed_sets(space),
        lambda f, g: rc_join(space, f, g),
        lambda f, g: rc_meet(space, f, g),
        Provenance.RC,
    )


def family_theta_lattice(family: FnFamily) -> FiniteLattice:
    """Lattice of ``rho(f)`` over a family, with regular-closed operations.

    Closure of the set family under the operations is asserted by the
    builder, not assumed.
    """
    space = family.space
    return FiniteLattice.from_sets(
        {f.rho for f in family},
        lambda f, g: rc_join(space, f, g),
        lambda f, g: rc_meet(space, f, g),
        Provenance.THETA,
    )


def family_sigma_lattice(family: FnFamily) -> FiniteLattice:
    space = family.space
    return FiniteLattice.from_sets(
        {f.sigma for f in family},
        lambda u, v: ro_join(space, u, v),
        lambda u, v: ro_meet(space, u, v),
        Provenance.SIGMA,
    )


def _grid_family(space: FiniteSpace, grid) -> FnFamily:
    if isinstance(grid, str):
        grid = ValueGrid.parse(grid)
    elif not isinstance(grid, ValueGrid):
        grid = ValueGrid(tuple(grid))
    if len(grid) < 2:
        raise LatticeError("grid needs a nonzero value besides 0")
    return enumerate_family(space, grid)


def theta_lattice(space: FiniteSpace, grid) -> FiniteLattice:
    return family_theta_lattice(_grid_family(space, grid))


def sigma_lattice(space: FiniteSpace, grid) -> FiniteLattice:
    return family_sigma_lattice(_grid_family(space, grid))
