"""Compatibility morphisms between finite function families.

A :class:`CompatMap` is an index assignment between two :class:`FnFamily`
objects.  It is a compatibility morphism when ``f ⪯ g`` implies
``Tf ⪯ Tg`` and a compatibility isomorphism when it is bijective and the
inverse is a morphism too.  Checks are exhaustive over all pairs and report
the lexicographically first failing pair as a witness.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import GridError, MapError, PreconditionError
from .functions import (
    FnFamily,
    ScalarFn,
    ValueGrid,
    compat_le,
    enumerate_family,
    is_orthogonal,
)
from .topology import (
    FiniteSpace,
    PointSet,
    SpaceMap,
    boundary,
    connected_components,
    interior,
    is_connected,
)


class CompatMap:
    """A total map ``source -> target`` between function families, by index."""

    def __init__(self, source: FnFamily, target: FnFamily, assignment):
        assignment = tuple(int(a) for a in assignment)
        if len(assignment) != len(source):
            raise MapError(f"assignment has {len(assignment)} entries for {len(source)} functions")
        if any(not 0 <= a < len(target) for a in assignment):
            raise MapError("assignment leaves the target family")
        self.source = source
        self.target = target
        self.assignment = assignment

    def __repr__(self):
        return f"CompatMap({self.source!r} -> {self.target!r})"

    def __call__(self, f: ScalarFn) -> ScalarFn:
        i = self.source.index_of(f)
        if i is None:
            raise MapError(f"{f!r} is not in the source family")
        return self.target[self.assignment[i]]

    def __eq__(self, other):
        return (
            isinstance(other, CompatMap)
            and self.assignment == other.assignment
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash(self.assignment)

    @classmethod
    def identity(cls, family: FnFamily) -> CompatMap:
        return cls(family, family, range(len(family)))

    @classmethod
    def from_function(cls, source: FnFamily, target: FnFamily, fn) -> CompatMap:
        """Tabulate ``fn: ScalarFn -> values`` over ``source``; images must lie in ``target``."""
        out = []
        for f in source:
            img = fn(f)
            j = target.index_of(img)
            if j is None:
                raise MapError(f"image of {f!r} leaves the target family")
            out.append(j)
        return cls(source, target, out)

    @cached_property
    def is_bijective(self) -> bool:
        return len(self.source) == len(self.target) and len(set(self.assignment)) == len(self.target)

    @cached_property
    def forward_preserving(self) -> bool:
        return _first_violation(self.source.compat_matrix, self._pulled_back()) is None

    @cached_property
    def inverse_preserving(self) -> bool:
        if not self.is_bijective:
            return False
        return _first_violation(self._pulled_back(), self.source.compat_matrix) is None

    @property
    def flags(self) -> dict[str, bool]:
        return {
            "bijective": self.is_bijective,
            "forward_preserving": self.forward_preserving,
            "inverse_preserving": self.inverse_preserving,
        }

    def _pulled_back(self) -> np.ndarray:
        a = np.asarray(self.assignment, dtype=np.intp)
        return self.target.compat_matrix[np.ix_(a, a)]

    def inverse(self) -> CompatMap:
        if not self.is_bijective:
            raise MapError("map is not bijective")
        inv = [0] * len(self.target)
        for i, j in enumerate(self.assignment):
            inv[j] = i
        return CompatMap(self.target, self.source, inv)

    def then(self, other: CompatMap) -> CompatMap:
        """``other ∘ self``."""
        if other.source != self.target:
            raise MapError("maps are not composable")
        return CompatMap(self.source, other.target, [other.assignment[j] for j in self.assignment])


def _first_violation(premise: np.ndarray, conclusion: np.ndarray):
    bad = np.argwhere(premise & ~conclusion)
    if len(bad) == 0:
        return None
    i, j = bad[0]
    return int(i), int(j)


def compat_morphism_violation(T: CompatMap) -> tuple[ScalarFn, ScalarFn] | None:
    """A pair ``f ⪯ g`` with ``Tf ⋠ Tg``, or ``None``."""
    hit = _first_violation(T.source.compat_matrix, T._pulled_back())
    return None if hit is None else (T.source[hit[0]], T.source[hit[1]])


def is_compat_morphism(T: CompatMap) -> bool:
    return T.forward_preserving


def compat_iso_violation(T: CompatMap) -> tuple[str, tuple | None] | None:
    """Why ``T`` is not a compatibility isomorphism, or ``None`` if it is."""
    if not T.is_bijective:
        return "not bijective", None
    hit = compat_morphism_violation(T)
    if hit is not None:
        return "not a morphism", hit
    back = _first_violation(T._pulled_back(), T.source.compat_matrix)
    if back is not None:
        i, j = back
        return "inverse not a morphism", (T.target[T.assignment[i]], T.target[T.assignment[j]])
    return None


def is_compat_iso(T: CompatMap) -> bool:
    return T.is_bijective and T.forward_preserving and T.inverse_preserving


def _require_iso(T: CompatMap, what: str) -> CompatMap:
    why = compat_iso_violation(T)
    if why is not None:
        raise MapError(f"{what} is not a compatibility isomorphism: {why[0]} {why[1] or ''}")
    return T


# generators


def from_homeomorphism(phi: SpaceMap, family_x: FnFamily, family_y: FnFamily) -> CompatMap:
    """``f ↦ f ∘ φ⁻¹``."""
    if not phi.is_homeomorphism():
        raise MapError("phi is not a homeomorphism")
    if phi.source != family_x.space or phi.target != family_y.space:
        raise MapError("phi does not connect the families' spaces")
    inv = phi.inverse().assignment
    T = CompatMap.from_function(
        family_x, family_y, lambda f: tuple(f.values[inv[y]] for y in range(phi.target.n))
    )
    return _require_iso(T, "homeomorphism-induced map")


def value_relabel(alpha: dict, family: FnFamily) -> CompatMap:
    """``f ↦ α ∘ f`` for a bijection ``α`` of the grid fixing 0."""
    alpha = {Fraction(k): Fraction(v) for k, v in alpha.items()}
    grid = set(family.grid.values)
    if set(alpha) != grid or set(alpha.values()) != grid:
        raise GridError("alpha is not a bijection of the family grid")
    if alpha[Fraction(0)] != 0:
        raise GridError("alpha must fix 0")
    T = CompatMap.from_function(family, family, lambda f: tuple(alpha[v] for v in f.values))
    return _require_iso(T, "value relabeling")


def _shuffled(family: FnFamily, phi: dict) -> CompatMap:
    gl = set(family.gl_indices())
    if set(phi) != gl or set(phi.values()) != gl:
        raise PreconditionError("Phi is not a bijection of the nowhere-zero functions")
    return CompatMap(family, family, [phi.get(i, i) for i in range(len(family))])


def gl_shuffle_witness(family: FnFamily, phi: dict | None = None):
    """Show why shuffling nowhere-zero functions breaks ``⪯``.

    Returns ``(phi, (h, f))`` where ``h ⪯ f`` but the shuffled images are not
    comparable, or ``None`` if no transposition (or the given ``phi``) breaks
    the order.
    """
    if phi is not None:
        hit = compat_morphism_violation(_shuffled(family, phi))
        return None if hit is None else (phi, hit)
    gl = family.gl_indices()
    for a, b in itertools.combinations(gl, 2):
        trial = {i: i for i in gl}
        trial[a], trial[b] = b, a
        hit = compat_morphism_violation(_shuffled(family, trial))
        if hit is not None:
            return trial, hit
    return None


def gl_shuffle(phi: dict, family: FnFamily) -> CompatMap:
    """Fix every function with a zero; permute the nowhere-zero ones by ``phi``.

    ``phi`` maps family indices of nowhere-zero functions to the same set.
    The space must be connected.
    """
    if not is_connected(family.space, family.space.full()):
        raise PreconditionError(
            "space is not connected", witness=gl_shuffle_witness(family, None)
        )
    return _require_iso(_shuffled(family, phi), "GL shuffle")


def discont_construction(family: FnFamily, component: PointSet, f1, f2) -> CompatMap:
    """Swap two restrictions ``f1``, ``f2`` to a component ``F``; identity elsewhere.

    ``f1`` and ``f2`` are value tuples over the points of ``F`` in ascending
    order.  Functions that vanish somewhere on ``F``, or whose restriction is
    neither ``f1`` nor ``f2``, are fixed.
    """
    space = family.space
    F = component
    if not interior(space, F):
        raise PreconditionError(f"{F!r} has empty interior")
    if F not in connected_components(space):
        raise PreconditionError(f"{F!r} is not a connected component")
    f1 = tuple(Fraction(v) for v in f1)
    f2 = tuple(Fraction(v) for v in f2)
    pts = list(F)
    for name, r in (("f1", f1), ("f2", f2)):
        if len(r) != len(pts):
            raise PreconditionError(f"{name} has {len(r)} values for {len(pts)} points of F")
        if any(v == 0 for v in r):
            raise PreconditionError(f"{name} vanishes on F")
        if not any(f.restrict(F) == r for f in family):
            raise PreconditionError(f"{name} is not a restriction of a family member")
    for x in boundary(space, F):
        if x in F and f1[pts.index(x)] != f2[pts.index(x)]:
            raise PreconditionError(f"f1 and f2 disagree on the boundary point {x}")

    def swap(f: ScalarFn):
        r = f.restrict(F)
        if r == f1:
            new = f2
        elif r == f2:
            new = f1
        else:
            return f.values
        vals = list(f.values)
        for x, v in zip(pts, new):
            vals[x] = v
        return tuple(vals)

    return _require_iso(CompatMap.from_function(family, family, swap), "swap construction")


def discont_case_trace(T: CompatMap, component: PointSet) -> dict:
    """Re-verify a swap construction pair by pair along the three cases.

    For ``f ⪯ g``: (1) ``g`` vanishes somewhere on ``F``, so ``f`` does too and
    both are fixed; (2) both are nowhere zero on ``F``, so they agree there;
    (3) only ``g`` is nowhere zero on ``F``, so ``f`` is 0 on ``F``.
    """
    F = component
    fam = T.source
    M = fam.compat_matrix
    nz = [all(v != 0 for v in f.restrict(F)) for f in fam]
    counts = {"g_outside": 0, "both_inside": 0, "only_g_inside": 0}
    violations = []
    for i, j in zip(*np.nonzero(M)):
        f, g = fam[i], fam[j]
        if not nz[j]:
            case = "g_outside"
            ok = not nz[i] and T(f) == f and T(g) == g
        elif nz[i]:
            case = "both_inside"
            ok = f.restrict(F) == g.restrict(F) and T(f).restrict(F) == T(g).restrict(F)
        else:
            case = "only_g_inside"
            ok = all(v == 0 for v in f.restrict(F)) and T(f) == f
        ok = ok and compat_le(T(f), T(g))
        counts[case] += 1
        if not ok:
            violations.append((case, f, g))
    changed = [f for f, n in zip(fam, nz) if T(f) != f]
    outside_fixed = all(T(f) == f for f, n in zip(fam, nz) if not n)
    return {"cases": counts, "violations": violations, "changed": changed, "outside_fixed": outside_fixed}


def pointwise_order_violation(S: CompatMap):
    """A pair breaking ``f <= g  ⟺  Sf <= Sg``, or ``None``."""
    a = np.asarray(S.assignment, dtype=np.intp)
    src = S.source.pointwise_matrix
    tgt = S.target.pointwise_matrix[np.ix_(a, a)]
    hit = np.argwhere(src != tgt)
    if len(hit) == 0:
        return None
    i, j = hit[0]
    return S.source[int(i)], S.source[int(j)]


def is_pointwise_order_iso(S: CompatMap) -> bool:
    return S.is_bijective and pointwise_order_violation(S) is None


def pointwise_order_map(family: FnFamily, point_maps, perm=None) -> CompatMap:
    """``(Sf)(y) = s_y(f(π⁻¹ y))`` with strictly increasing value maps ``s_y``.

    The target family is the image of ``family``.
    """
    space = family.space
    n = space.n
    perm = tuple(range(n)) if perm is None else tuple(perm)
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    maps = [{Fraction(k): Fraction(v) for k, v in m.items()} for m in point_maps]
    images = [ScalarFn(space, [maps[y][f.values[inv[y]]] for y in range(n)]) for f in family]
    target = FnFamily(space, images, require_zero=False)
    return CompatMap(family, target, range(len(images)))


def kaplansky_shift(S: CompatMap) -> CompatMap:
    """``Tf = Sf − S0`` for a pointwise-order isomorphism ``S``."""
    if not S.is_bijective:
        raise MapError("S is not bijective")
    if not is_pointwise_order_iso(S):
        raise MapError(f"S does not preserve the pointwise order both ways: {pointwise_order_violation(S)}")
    space = S.target.space
    s0 = S(S.source.zero)
    shifted = []
    for i in range(len(S.source)):
        img = S.target[S.assignment[i]]
        shifted.append(ScalarFn(space, [a - b for a, b in zip(img.values, s0.values)]))
    target = FnFamily(space, shifted)
    return _require_iso(CompatMap(S.source, target, range(len(shifted))), "Kaplansky shift")


# structural checks


@dataclass
class AdditiveReport:
    pairs_checked: int = 0
    sums_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations


def _nonzero_masks(family: FnFamily) -> list[int]:
    return [f.nonzero_set.bits for f in family]


def check_additive_lemma(T: CompatMap) -> AdditiveReport:
    """Orthogonality is preserved both ways, and ``T(f+g) = Tf + Tg`` for orthogonal pairs."""
    src, tgt = T.source, T.target
    nz_s, nz_t = _nonzero_masks(src), _nonzero_masks(tgt)
    a = T.assignment
    report = AdditiveReport()
    for i in range(len(src)):
        for j in range(len(src)):
            report.pairs_checked += 1
            orth = nz_s[i] & nz_s[j] == 0
            orth_img = nz_t[a[i]] & nz_t[a[j]] == 0
            if orth != orth_img:
                report.violations.append(("orthogonality", src[i], src[j]))
                continue
            if not orth:
                continue
            k = src.index_of(tuple(x + y for x, y in zip(src[i].values, src[j].values)))
            if k is None:
                continue
            report.sums_checked += 1
            want = tuple(x + y for x, y in zip(tgt[a[i]].values, tgt[a[j]].values))
            if tgt[a[k]].values != want:
                report.violations.append(("additivity", src[i], src[j]))
    return report


@dataclass
class ClopenReport:
    clopens_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations


def set_image_map(T: CompatMap, attr: str) -> dict[PointSet, PointSet]:
    """``key(f) ↦ key(Tf)`` for ``attr`` in {"sigma", "rho"}; raises if ill-defined."""
    out = {}
    for i, f in enumerate(T.source):
        key = getattr(f, attr)
        img = getattr(T.target[T.assignment[i]], attr)
        prev = out.setdefault(key, img)
        if prev != img:
            raise MapError(f"{attr} map ill-defined at {key!r}: {prev!r} vs {img!r}")
    return out


def check_clopen_props(T: CompatMap) -> ClopenReport:
    """Clopens go to clopens with complements preserved; agreement on ``U`` transfers to ``τ(U)``."""
    X, Y = T.source.space, T.target.space
    report = ClopenReport()
    try:
        tau = set_image_map(T, "sigma")
    except MapError as exc:
        report.violations.append(("tau ill-defined", str(exc)))
        return report
    for U in X.clopens:
        report.clopens_checked += 1
        if U not in tau or ~U not in tau:
            report.violations.append(("clopen not a sigma set", U))
            continue
        tU = tau[U]
        if not Y.is_clopen(tU):
            report.violations.append(("image not clopen", U))
        if tau[~U] != ~tU:
            report.violations.append(("complement", U))
        groups = {}
        for i, f in enumerate(T.source):
            img = T.target[T.assignment[i]].restrict(tU)
            prev = groups.setdefault(f.restrict(U), (f, img))
            if prev[1] != img:
                report.violations.append(("agreement", U, prev[0], f))
                break
    return report


def check_connected_dichotomy(family: FnFamily) -> tuple[int, list]:
    """For connected ``F``, ``f`` nowhere zero on ``F`` and ``g ⪯ f``: ``g = f`` on ``F`` or ``g = 0`` on ``F``.

    Returns the number of triples checked and the violations.
    """
    space = family.space
    M = family.compat_matrix
    checked, bad = 0, []
    for bits in range(1, 1 << space.n):
        F = PointSet(space.n, bits)
        if not is_connected(space, F):
            continue
        for j, f in enumerate(family):
            rf = f.restrict(F)
            if any(v == 0 for v in rf):
                continue
            for i in np.nonzero(M[:, j])[0]:
                rg = family[int(i)].restrict(F)
                checked += 1
                if rg != rf and any(v != 0 for v in rg):
                    bad.append((F, family[int(i)], f))
    return checked, bad


# nonexistence certificates and search


def down_set_profile(family: FnFamily) -> tuple[int, ...]:
    """Sorted sizes of the principal down-sets ``{g : g ⪯ f}``."""
    return tuple(sorted(int(c) for c in family.compat_matrix.sum(axis=0)))


def certify_no_isomorphism(family_x: FnFamily, family_y: FnFamily) -> list[str]:
    """Order invariants that already rule out a compatibility isomorphism.

    An empty list means the invariants agree (no certificate).
    """
    reasons = []
    if len(family_x) != len(family_y):
        reasons.append(f"family sizes differ: {len(family_x)} != {len(family_y)}")
    px, py = down_set_profile(family_x), down_set_profile(family_y)
    if px != py:
        reasons.append(f"down-set profiles differ: {list(px)} != {list(py)}")
    return reasons


def find_compat_isomorphism(family_x: FnFamily, family_y: FnFamily) -> CompatMap | None:
    """Backtracking search for an isomorphism of the ``⪯`` posets."""
    if certify_no_isomorphism(family_x, family_y):
        return None
    A, B = family_x.compat_matrix, family_y.compat_matrix
    sig = lambda M, i: (int(M[:, i].sum()), int(M[i, :].sum()))  # noqa: E731
    sa = [sig(A, i) for i in range(len(family_x))]
    sb = [sig(B, j) for j in range(len(family_y))]
    order = sorted(range(len(sa)), key=lambda i: (sa[i][0], i))
    assign, used = {}, set()

    def search(k):
        if k == len(order):
            return True
        i = order[k]
        for j in range(len(sb)):
            if j in used or sb[j] != sa[i]:
                continue
            if all(A[i, i2] == B[j, j2] and A[i2, i] == B[j2, j] for i2, j2 in assign.items()):
                assign[i] = j
                used.add(j)
                if search(k + 1):
                    return True
                del assign[i]
                used.discard(j)
        return False

    if not search(0):
        return None
    return _require_iso(
        CompatMap(family_x, family_y, [assign[i] for i in range(len(family_x))]), "search result"
    )


# seeded generation of isomorphisms between discrete models


@dataclass
class GeneratedIso:
    kind: str
    T: CompatMap
    # homeomorphism the pipeline should recover, when known
    expected: SpaceMap | None


def _random_increasing_maps(rng: random.Random, grid: ValueGrid, n: int) -> list[dict]:
    maps = []
    for _ in range(n):
        cuts = sorted(rng.sample(range(-20, 21), len(grid)))
        denom = rng.randint(1, 4)
        maps.append({v: Fraction(c, denom) for v, c in zip(grid.values, cuts)})
    return maps


def _random_perm(rng: random.Random, n: int) -> tuple[int, ...]:
    p = list(range(n))
    rng.shuffle(p)
    return tuple(p)


def generate_isomorphisms(
    seed: int = 0,
    count: int = 200,
    max_points: int = 4,
    grids=("0,1", "-1,0,1", "0,1,2"),
) -> list[GeneratedIso]:
    """Seeded mix of homeomorphism-induced maps, value relabelings, GL shuffles,
    Kaplansky shifts and compositions, all between discrete spaces.
    """
    rng = random.Random(seed)
    grids = [g if isinstance(g, ValueGrid) else ValueGrid.parse(g) for g in grids]
    kinds = ["homeomorphism", "relabel", "gl_shuffle", "kaplansky", "composition"]
    out: list[GeneratedIso] = []
    endo: list[GeneratedIso] = []
    for k in range(count):
        kind = kinds[k % len(kinds)]
        grid = rng.choice(grids)
        n = 1 if kind == "gl_shuffle" else rng.randint(1, max_points)
        space = FiniteSpace.discrete(n)
        fam = enumerate_family(space, grid)
        ident = SpaceMap.identity(space)
        if kind == "homeomorphism":
            phi = SpaceMap(space, space, _random_perm(rng, n))
            item = GeneratedIso(kind, from_homeomorphism(phi, fam, fam), phi)
        elif kind == "relabel":
            nz = list(grid.nonzero())
            img = nz[:]
            rng.shuffle(img)
            alpha = {Fraction(0): Fraction(0), **dict(zip(nz, img))}
            item = GeneratedIso(kind, value_relabel(alpha, fam), ident)
        elif kind == "gl_shuffle":
            gl = fam.gl_indices()
            img = gl[:]
            rng.shuffle(img)
            item = GeneratedIso(kind, gl_shuffle(dict(zip(gl, img)), fam), ident)
        elif kind == "kaplansky":
            perm = _random_perm(rng, n)
            S = pointwise_order_map(fam, _random_increasing_maps(rng, grid, n), perm)
            item = GeneratedIso(kind, kaplansky_shift(S), SpaceMap(space, space, perm))
        else:
            pool = [g for g in endo if g.T.source.space.n == n and g.T.source.grid == grid]
            if len(pool) < 1:
                phi = SpaceMap(space, space, _random_perm(rng, n))
                pool = [GeneratedIso("homeomorphism", from_homeomorphism(phi, fam, fam), phi)]
            first = rng.choice(pool)
            if rng.random() < 0.5:
                perm = _random_perm(rng, n)
                S = pointwise_order_map(fam, _random_increasing_maps(rng, grid, n), perm)
                second = GeneratedIso("kaplansky", kaplansky_shift(S), SpaceMap(space, space, perm))
            else:
                second = rng.choice(pool)
            T = first.T.then(second.T)
            item = GeneratedIso(kind, T, first.expected.then(second.expected))
        out.append(item)
        if item.T.source == item.T.target:
            endo.append(item)
    return out


# corollary suites on discrete models


@dataclass
class SuiteResult:
    """Outcome of one corollary suite.

    A configuration whose generator produced only the identity map is
    recorded with status ``"vacuous"``, never folded into the pass count.
    """

    name: str
    checked: int = 0
    violations: list = field(default_factory=list)
    configs: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def vacuous_configs(self) -> list:
        return [c for c in self.configs if c["status"] == "vacuous"]

    def summary(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "violations": len(self.violations),
            "configs": self.configs,
        }


def multiplicative_grid_bijections(grid: ValueGrid) -> list[dict]:
    """Bijections ``α`` of the grid with ``α(ab) = α(a)α(b)`` whenever ``a, b, ab`` are grid values."""
    vals = grid.values
    present = set(vals)
    out = []
    for perm in itertools.permutations(vals):
        alpha = dict(zip(vals, perm))
        if all(
            alpha[a * b] == alpha[a] * alpha[b]
            for a in vals
            for b in vals
            if a * b in present
        ):
            out.append(alpha)
    return out


def _pointwise_value_map(family: FnFamily, perm, alphas) -> CompatMap:
    n = family.space.n
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    return CompatMap.from_function(
        family, family, lambda f: tuple(alphas[y][f.values[inv[y]]] for y in range(n))
    )


def _preserves_table(T: CompatMap, table: str) -> bool:
    """Whether ``T(f ∘ g) = Tf ∘ Tg`` whenever ``f ∘ g`` lies in the source."""
    a = np.asarray(T.assignment, dtype=np.intp)
    src = getattr(T.source, table)
    tgt = getattr(T.target, table)
    defined = src >= 0
    return bool(np.all(a[src[defined]] == tgt[np.ix_(a, a)][defined]))


def _is_multiplicative(T: CompatMap) -> bool:
    return _preserves_table(T, "product_table")


def _is_additive(T: CompatMap) -> bool:
    return _preserves_table(T, "sum_table")


def _sampled(rng, items, limit):
    items = list(items)
    if len(items) <= limit:
        return items
    return rng.sample(items, limit)


def _multiplicative_route(T: CompatMap) -> list:
    """Through ``f ⪯ g ⟺ fg = f²``: where both products are family members, check the images agree."""
    fam = T.source
    P = fam.product_table
    bad = []
    for i, j in zip(*np.nonzero(fam.compat_matrix)):
        fg, ff = P[i, j], P[i, i]
        if fg < 0 or ff < 0:
            continue
        if T.assignment[fg] != T.assignment[ff]:
            bad.append(("product route", fam[int(i)], fam[int(j)]))
    return bad


def monomial_apply(f: ScalarFn, perm, scales) -> ScalarFn:
    """``(Mf)(y) = c_y · f(π⁻¹ y)`` on a discrete space."""
    return ScalarFn(f.space, _monomial_values(f.values, perm, scales), check=False)


def _monomial_values(values, perm, scales) -> tuple:
    n = len(perm)
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    return tuple(Fraction(scales[y]) * values[inv[y]] for y in range(n))


def _orth(u, v) -> bool:
    return all(a * b == 0 for a, b in zip(u, v))


def _jarosz_probe(family: FnFamily, perm, scales) -> tuple[int, list]:
    if not family.space.is_discrete():
        raise PreconditionError("monomial probes need a discrete space")
    images = [monomial_apply(f, perm, scales) for f in family]
    M = family.compat_matrix
    checked, bad = 0, []
    for i, f in enumerate(family):
        for j, g in enumerate(family):
            checked += 1
            Mf, Mg = images[i], images[j]
            diff = tuple(b - a for a, b in zip(f.values, g.values))
            Mdiff = _monomial_values(diff, perm, scales)
            if Mdiff != tuple(b - a for a, b in zip(Mf.values, Mg.values)):
                bad.append(("linearity", f, g))
            if _orth(f.values, g.values) and not _orth(Mf.values, Mg.values):
                bad.append(("disjointness", f, g))
            if M[i, j]:
                if not _orth(diff, f.values):
                    bad.append(("(g-f)f != 0", f, g))
                if not _orth(Mdiff, Mf.values):
                    bad.append(("M(g-f)Mf != 0", f, g))
                if Mg.values != tuple(a + b for a, b in zip(Mdiff, Mf.values)):
                    bad.append(("Mg != M(g-f) + Mf", f, g))
                if not compat_le(Mf, Mg):
                    bad.append(("Mf not below Mg", f, g))
            elif compat_le(Mf, Mg):
                bad.append(("inverse", f, g))
    return checked, bad


def check_corollary_suites(
    sizes=(1, 2, 3),
    grids=("0,1", "-1,0,1", "-2,-1,0,1,2"),
    trials: int = 6,
    seed: int = 0,
) -> dict[str, SuiteResult]:
    """Ring, multiplicative, pointwise-order and monomial maps on discrete models.

    * ring / multiplicative bijections are compatibility isomorphisms;
    * ``Sf - S0`` is a compatibility isomorphism for pointwise-order isomorphisms ``S``;
    * monomial maps satisfy ``f ⪯ g ⟹ M(g-f)·Mf = 0`` and ``Mg = M(g-f) + Mf ⪰ Mf``.
    """
    rng = random.Random(seed)
    grids = [g if isinstance(g, ValueGrid) else ValueGrid.parse(g) for g in grids]
    ring = SuiteResult("gelfand_kolmogorov")
    mult = SuiteResult("milgram")
    kap = SuiteResult("kaplansky")
    jar = SuiteResult("jarosz")
    for n in sizes:
        space = FiniteSpace.discrete(n)
        for grid in grids:
            fam = enumerate_family(space, grid)
            ident = CompatMap.identity(fam)
            cfg = {"points": n, "grid": str(grid)}

            alphas = multiplicative_grid_bijections(grid)
            combos = itertools.product(
                itertools.permutations(range(n)), itertools.product(range(len(alphas)), repeat=n)
            )
            maps = []
            for perm, choice in _sampled(rng, combos, trials * 4):
                T = _pointwise_value_map(fam, perm, [alphas[c] for c in choice])
                if not _is_multiplicative(T):
                    mult.violations.append(("generator not multiplicative", perm, choice))
                    continue
                maps.append(T)
            ring_maps = [T for T in maps if _is_additive(T)]
            for suite, found in ((mult, maps), (ring, ring_maps)):
                distinct = {T.assignment for T in found}
                status = "vacuous" if distinct <= {ident.assignment} else "checked"
                suite.configs.append({**cfg, "maps": len(distinct), "status": status})
                for T in found:
                    suite.checked += 1
                    why = compat_iso_violation(T)
                    if why is not None:
                        suite.violations.append((why[0], why[1]))
                    suite.violations.extend(_multiplicative_route(T))

            count = 0
            for _ in range(trials):
                perm = _random_perm(rng, n)
                S = pointwise_order_map(fam, _random_increasing_maps(rng, grid, n), perm)
                kap.checked += 1
                try:
                    T = kaplansky_shift(S)
                except MapError as exc:
                    kap.violations.append(("shift", str(exc)))
                    continue
                if pointwise_order_violation(T) is not None:
                    kap.violations.append(("shift not a pointwise-order isomorphism", perm))
                count += 1
            kap.configs.append({**cfg, "maps": count, "status": "checked" if count else "vacuous"})

            nontrivial = 0
            for _ in range(trials):
                perm = _random_perm(rng, n)
                scales = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)) for _ in range(n)]
                if perm != tuple(range(n)) or any(c != 1 for c in scales):
                    nontrivial += 1
                checked, bad = _jarosz_probe(fam, perm, scales)
                jar.checked += checked
                jar.violations.extend(bad)
            jar.configs.append({**cfg, "maps": trials, "status": "checked" if nontrivial else "vacuous"})
    return {s.name: s for s in (ring, mult, kap, jar)}
