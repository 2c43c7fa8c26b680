"""Point recovery from the lattice of zero-set closures, and the induced homeomorphism.

For a finite space, ``Θ(X) = {rho(f)}`` is the Boolean algebra of clopen
sets, its ultrafilters are the principal filters on the quasicomponents, and
``Υ(x) = {F in Θ(X) : x in F}`` identifies points up to quasicomponent.  On
discrete spaces ``Υ`` is a homeomorphism onto the ultrafilter space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import MapError, PipelineError
from .functions import FnFamily, ValueGrid, enumerate_family
from .lattice import (
    Filter,
    FiniteLattice,
    SpectrumSpace,
    family_theta_lattice,
    is_lattice_isomorphism,
    is_ultrafilter,
    order_iso_is_lattice_iso,
    ult_space,
)
from .morphisms import CompatMap, compat_iso_violation, set_image_map
from .topology import (
    FiniteSpace,
    PointSet,
    SpaceMap,
    component_quotient,
    find_homeomorphism,
    quasicomponents,
)


def _grid(grid) -> ValueGrid:
    if isinstance(grid, str):
        return ValueGrid.parse(grid)
    return grid if isinstance(grid, ValueGrid) else ValueGrid(tuple(grid))


@lru_cache(maxsize=128)
def _theta(space: FiniteSpace, grid: ValueGrid) -> FiniteLattice:
    return family_theta_lattice(enumerate_family(space, grid))


def point_filter(lattice: FiniteLattice, x: int) -> Filter:
    """``{F : x in F}`` as a filter of a set lattice."""
    return Filter(lattice, sum(1 << i for i, F in enumerate(lattice.elements) if x in F))


def upsilon(space: FiniteSpace, grid, x: int) -> Filter:
    if not 0 <= x < space.n:
        raise ValueError(f"{x} is not a point of the space")
    theta = _theta(space, _grid(grid))
    u = point_filter(theta, x)
    if space.is_discrete() and not is_ultrafilter(u):
        raise PipelineError("upsilon", f"filter of point {x} is not an ultrafilter")
    return u


def upsilon_map(space: FiniteSpace, theta: FiniteLattice, ult: SpectrumSpace) -> SpaceMap:
    """``x ↦ U_x`` as a map into the ultrafilter space."""
    lookup = {u.bits: i for i, u in enumerate(ult.carrier)}
    assignment = []
    for x in range(space.n):
        u = point_filter(theta, x)
        if u.bits not in lookup:
            raise PipelineError("upsilon", f"filter of point {x} is not an ultrafilter")
        assignment.append(lookup[u.bits])
    return SpaceMap(space, ult.topology, tuple(assignment))


@dataclass
class ReconstructionReport:
    """Outcome of recovering a finite space from ``Θ(X)``.

    ``verified`` means ``Υ`` is a continuous open surjection whose
    factorization through the component quotient is a homeomorphism onto the
    ultrafilter space; on discrete spaces ``Υ`` itself is a homeomorphism.
    """

    space: FiniteSpace
    grid: ValueGrid
    theta: FiniteLattice
    ult: SpectrumSpace
    upsilon: SpaceMap
    quotient: FiniteSpace
    quotient_map: SpaceMap
    factored: SpaceMap | None
    checks: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "points": self.space.n,
            "grid": [str(v) for v in self.grid],
            "theta_size": len(self.theta),
            "ultrafilters": len(self.ult),
            "quasicomponents": len(quasicomponents(self.space)),
            "upsilon": list(self.upsilon.assignment),
            "checks": dict(self.checks),
            "verified": self.verified,
        }


def reconstruct(space: FiniteSpace, grid) -> ReconstructionReport:
    grid = _grid(grid)
    if len(grid) < 2:
        raise ValueError("grid needs a nonzero value besides 0")
    theta = _theta(space, grid)
    ult = ult_space(theta)
    ups = upsilon_map(space, theta, ult)
    quotient, q = component_quotient(space)
    checks = {
        "upsilon_continuous": ups.is_continuous(),
        "upsilon_open": ups.is_open_map(),
        "upsilon_surjective": ups.is_surjective(),
    }
    if space.is_discrete():
        checks["upsilon_bijective"] = ups.is_bijective()
    factored = None
    classes = {}
    for x in range(space.n):
        classes.setdefault(q(x), set()).add(ups(x))
    if all(len(v) == 1 for v in classes.values()):
        factored = SpaceMap(quotient, ult.topology, tuple(classes[c].pop() for c in range(quotient.n)))
        checks["factored_homeomorphism"] = factored.is_homeomorphism()
    else:
        checks["factored_homeomorphism"] = False
    checks["ult_discrete"] = ult.topology.is_discrete()
    checks["matches_quotient"] = find_homeomorphism(ult.topology, quotient) is not None
    return ReconstructionReport(space, grid, theta, ult, ups, quotient, q, factored, checks)


# maps induced by a compatibility isomorphism


def _element_map(T: CompatMap, attr: str) -> dict[PointSet, PointSet]:
    why = compat_iso_violation(T)
    if why is not None:
        raise PipelineError("iso", f"T is not a compatibility isomorphism: {why[0]}", why[1])
    try:
        forward = set_image_map(T, attr)
        backward = set_image_map(T.inverse(), attr)
    except MapError as exc:
        raise PipelineError("well-defined", str(exc)) from exc
    for a, b in forward.items():
        if backward.get(b) != a:
            raise PipelineError("bijection", f"{attr} map is not invertible at {a!r}")
    keys = list(forward)
    for a in keys:
        for b in keys:
            if (a <= b) != (forward[a] <= forward[b]):
                raise PipelineError("inclusion", f"inclusion not preserved for {a!r}, {b!r}", (a, b))
    return forward


def tau_map(T: CompatMap) -> dict[PointSet, PointSet]:
    """``σ(f) ↦ σ(Tf)``: an inclusion-preserving bijection, checked well defined."""
    return _element_map(T, "sigma")


def vartheta_map(T: CompatMap) -> dict[PointSet, PointSet]:
    """``ρ(f) ↦ ρ(Tf)``."""
    return _element_map(T, "rho")


@dataclass
class InducedTrace:
    stages: dict
    theta_sizes: tuple[int, int]
    ultrafilters: tuple[int, int]
    homeomorphism: SpaceMap

    def to_json(self) -> dict:
        return {
            "stages": dict(self.stages),
            "theta_sizes": list(self.theta_sizes),
            "ultrafilters": list(self.ultrafilters),
            "homeomorphism": list(self.homeomorphism.assignment),
        }


def _stage(ok: bool, stage: str, message: str, witness=None):
    if not ok:
        raise PipelineError(stage, message, witness)


def induce(T: CompatMap) -> InducedTrace:
    """Run the full pipeline from a compatibility isomorphism to a homeomorphism.

    The stages: precondition, vartheta (well-defined inclusion-preserving
    bijection of Θ lattices), lattice isomorphism, direct image of
    ultrafilters, point recovery on both sides, composition.
    """
    X, Y = T.source.space, T.target.space
    stages = {}
    _stage(
        len(T.source) == len(T.target),
        "precondition",
        f"family sizes differ: {len(T.source)} != {len(T.target)}",
    )
    _stage(X.is_discrete() and Y.is_discrete(), "precondition", "both spaces must be discrete")
    stages["precondition"] = True

    theta_map = vartheta_map(T)
    stages["iso"] = stages["vartheta"] = True

    LX, LY = family_theta_lattice(T.source), family_theta_lattice(T.target)
    mapping = [LY.index(theta_map[e]) for e in LX.elements]
    _stage(
        order_iso_is_lattice_iso(mapping, LX, LY) and is_lattice_isomorphism(mapping, LX, LY),
        "lattice",
        "vartheta is not a lattice isomorphism",
    )
    stages["lattice"] = True

    UX, UY = ult_space(LX), ult_space(LY)
    lookup = {u.bits: i for i, u in enumerate(UY.carrier)}
    ult_assign = []
    for u in UX.carrier:
        image = Filter(LY, sum(1 << mapping[i] for i in u.members))
        _stage(image.bits in lookup and is_ultrafilter(image), "ultrafilter", f"image of {u!r} is not an ultrafilter")
        ult_assign.append(lookup[image.bits])
    ult_map = SpaceMap(UX.topology, UY.topology, tuple(ult_assign))
    _stage(ult_map.is_homeomorphism(), "ultrafilter", "ultrafilter spaces are not homeomorphic via the image map")
    stages["ultrafilter"] = True

    ups_x = upsilon_map(X, LX, UX)
    ups_y = upsilon_map(Y, LY, UY)
    _stage(ups_x.is_homeomorphism() and ups_y.is_homeomorphism(), "upsilon", "point recovery is not a homeomorphism")
    stages["upsilon"] = True

    phi = ups_x.then(ult_map).then(ups_y.inverse())
    _stage(phi.is_homeomorphism(), "compose", "composite is not a homeomorphism")
    stages["compose"] = True
    return InducedTrace(stages, (len(LX), len(LY)), (len(UX), len(UY)), phi)


def induced_homeomorphism(T: CompatMap) -> SpaceMap:
    return induce(T).homeomorphism
