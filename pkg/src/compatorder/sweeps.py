"""Desk-scale acceptance sweeps, one function per criterion.

Each sweep returns a :class:`CriterionResult`; :func:`run_suite` runs them
all under one :class:`SweepConfig`.  Everything is exhaustive or seeded, so
two runs with the same config produce the same lines.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import serialize
from .errors import PipelineError
from .functions import (
    ScalarFn,
    ValueGrid,
    compat_le,
    compat_le_alg,
    enumerate_family,
    neg_part,
    pmax,
    pmin,
    pointwise_le,
    pos_part,
    sub,
)
from .lattice import (
    FiniteLattice,
    base_identity_violations,
    family_theta_lattice,
    lattice_from_rc,
    lattice_from_ro,
    spectrum,
    ult_space,
)
from .morphisms import (
    CompatMap,
    check_additive_lemma,
    check_clopen_props,
    check_connected_dichotomy,
    check_corollary_suites,
    certify_no_isomorphism,
    discont_case_trace,
    discont_construction,
    find_compat_isomorphism,
    generate_isomorphisms,
    is_compat_iso,
)
from .reconstruction import induced_homeomorphism, reconstruct, tau_map, vartheta_map
from .topology import (
    FiniteSpace,
    PointSet,
    quasicomponents,
    rc_join,
    rc_meet,
    ro_join,
    ro_meet,
    small_spaces,
)


@dataclass
class SweepConfig:
    max_points: int = 4
    seed: int = 0
    oracle_grid: str = "-1,0,1,2"
    lemma_grid: str = "-2,-1,0,1,2"
    lemma_points: int = 3
    discrete_points: int = 6
    iso_count: int = 200
    iso_points: int = 4
    iso_grids: tuple = ("0,1", "-1,0,1", "0,1,2")
    functoriality_pairs: int = 50
    corollary_sizes: tuple = (1, 2, 3)
    corollary_grids: tuple = ("0,1", "-1,0,1", "-2,-1,0,1,2")
    corollary_trials: int = 6
    discont_instances: tuple = ("discont_d3", "discont_sierpinski_point", "discont_d2_sign")


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    checked: int = 0
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"; {'; '.join(self.notes)}" if self.notes else ""
        return (
            f"[{status}] criterion {self.number:>2} {self.name}: "
            f"checked={self.checked} violations={len(self.violations)} "
            f"({self.seconds:.1f}s){extra}"
        )

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "violations": [repr(v) for v in self.violations[:20]],
            "notes": list(self.notes),
        }


def _timed(fn):
    def wrapper(cfg: SweepConfig | None = None) -> CriterionResult:
        t = time.perf_counter()
        res = fn(cfg or SweepConfig())
        res.seconds = time.perf_counter() - t
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _spaces(cfg: SweepConfig) -> list[FiniteSpace]:
    return small_spaces(cfg.max_points)


# 1


@_timed
def criterion_oracle_equivalence(cfg: SweepConfig) -> CriterionResult:
    """Support-based and algebraic ``⪯`` agree on every pair of every family."""
    grid = ValueGrid.parse(cfg.oracle_grid)
    checked, bad = 0, []
    for space in _spaces(cfg):
        fam = enumerate_family(space, grid)
        for f in fam:
            for g in fam:
                checked += 1
                if compat_le(f, g) != compat_le_alg(f, g):
                    bad.append((space, f, g))
    return CriterionResult(1, "compat_le equals fg = f^2 route", not bad, checked, bad)


# 2


def _triples_ok(lattice: FiniteLattice) -> list:
    J, M = lattice.join, lattice.meet
    bad = []
    m = len(lattice)
    for a in range(m):
        for b in range(m):
            if J[a][M[a][b]] != a or M[a][J[a][b]] != a:
                bad.append(("absorption", a, b))
            for c in range(m):
                if M[a][J[b][c]] != J[M[a][b]][M[a][c]]:
                    bad.append(("meet over join", a, b, c))
                if J[a][M[b][c]] != M[J[a][b]][J[a][c]]:
                    bad.append(("join over meet", a, b, c))
    return bad


def built_set_lattices(cfg: SweepConfig) -> list[FiniteLattice]:
    """RO and RC lattices of every space in the sweep."""
    out = []
    for space in _spaces(cfg):
        out.append(lattice_from_ro(space))
        out.append(lattice_from_rc(space))
    return out


@_timed
def criterion_lattice_identities(cfg: SweepConfig) -> CriterionResult:
    """σ/ρ join and meet identities on all pairs; RO/RC lattice laws on all triples."""
    grid = ValueGrid.parse(cfg.oracle_grid)
    checked, bad = 0, []
    for space in _spaces(cfg):
        fam = enumerate_family(space, grid)
        for f in fam:
            for g in fam:
                checked += 1
                s = abs(f) + abs(g)
                p = f * g
                if ro_join(space, f.sigma, g.sigma) != s.sigma:
                    bad.append(("sigma join", f, g))
                if ro_meet(space, f.sigma, g.sigma) != p.sigma:
                    bad.append(("sigma meet", f, g))
                if rc_meet(space, f.rho, g.rho) != s.rho:
                    bad.append(("rho meet", f, g))
                if rc_join(space, f.rho, g.rho) != p.rho:
                    bad.append(("rho join", f, g))
                if f.rho != ~f.sigma:
                    bad.append(("rho complement", f, g))
    for lattice in built_set_lattices(cfg):
        checked += len(lattice) ** 3
        bad.extend(_triples_ok(lattice))
    return CriterionResult(2, "sigma/rho identities and RO/RC laws", not bad, checked, bad)


# 3


def lemma_violations(f: ScalarFn, g: ScalarFn) -> list[str]:
    """Sign-splitting and the pointwise characterizations of ``⪯`` for one pair."""
    bad = []
    le = compat_le(f, g)
    if le != (compat_le(pos_part(f), pos_part(g)) and compat_le(neg_part(f), neg_part(g))):
        bad.append("sign split")
    nonneg = lambda h: all(v >= 0 for v in h.values)  # noqa: E731
    nonpos = lambda h: all(v <= 0 for v in h.values)  # noqa: E731
    if nonneg(f) and nonneg(g):
        rhs = pointwise_le(f, g) and pointwise_le(g, pmax(sub(g, f), f))
        if le != rhs:
            bad.append("nonnegative pair")
    if nonpos(f) and nonpos(g):
        rhs = pointwise_le(g, f) and pointwise_le(pmin(sub(g, f), f), g)
        if le != rhs:
            bad.append("nonpositive pair")
    return bad


@_timed
def criterion_sign_lemma(cfg: SweepConfig) -> CriterionResult:
    """Sign splitting and pointwise characterizations on discrete spaces."""
    grid = ValueGrid.parse(cfg.lemma_grid)
    checked, bad = 0, []
    for n in range(1, cfg.lemma_points + 1):
        fam = enumerate_family(FiniteSpace.discrete(n), grid)
        for f in fam:
            for g in fam:
                checked += 1
                for part in lemma_violations(f, g):
                    bad.append((part, f, g))
    return CriterionResult(3, "sign splitting and pointwise forms", not bad, checked, bad)


# 4


def theta_lattices(cfg: SweepConfig) -> list[FiniteLattice]:
    out = [family_theta_lattice(enumerate_family(FiniteSpace.discrete(n), ValueGrid.parse("0,1")))
           for n in range(1, cfg.discrete_points + 1)]
    out += [family_theta_lattice(enumerate_family(s, ValueGrid.parse("0,1"))) for s in _spaces(cfg)]
    return out


@_timed
def criterion_point_recovery(cfg: SweepConfig) -> CriterionResult:
    """Υ is a homeomorphism on discrete spaces; Ult Θ matches the component quotient in general."""
    grid = ValueGrid.parse("0,1")
    checked, bad = 0, []
    for n in range(1, cfg.discrete_points + 1):
        rep = reconstruct(FiniteSpace.discrete(n), grid)
        checked += 1
        ups = rep.upsilon
        if not (ups.is_bijective() and ups.is_continuous() and ups.is_open_map() and rep.verified):
            bad.append(("discrete", n, rep.checks))
        if len(rep.ult) != n:
            bad.append(("ultrafilter count", n, len(rep.ult)))
    for space in _spaces(cfg):
        rep = reconstruct(space, grid)
        checked += 1
        if len(rep.ult) != len(quasicomponents(space)):
            bad.append(("quasicomponent count", space))
        if not rep.ult.topology.is_discrete():
            bad.append(("ultrafilter space not discrete", space))
        if not rep.checks["matches_quotient"] or not rep.checks["factored_homeomorphism"]:
            bad.append(("quotient", space, rep.checks))
    return CriterionResult(4, "point recovery through ultrafilters", not bad, checked, bad)


# 5


@_timed
def criterion_base_identity(cfg: SweepConfig) -> CriterionResult:
    """``U_a ∩ U_b = U_{a∨b}`` on prime and ultrafilter spectra of every built lattice."""
    checked, bad = 0, []
    for lattice in built_set_lattices(cfg) + theta_lattices(cfg):
        for spc in (spectrum(lattice), ult_space(lattice)):
            checked += len(lattice) ** 2
            for v in base_identity_violations(spc):
                bad.append((lattice, v))
    return CriterionResult(5, "spectrum base identity", not bad, checked, bad)


# 6


def generated_isos(cfg: SweepConfig):
    return generate_isomorphisms(cfg.seed, cfg.iso_count, cfg.iso_points, cfg.iso_grids)


def _composable_pairs(isos, count: int, seed: int):
    rng = random.Random(seed)
    groups = {}
    for g in isos:
        if g.T.source == g.T.target:
            groups.setdefault((g.T.source.space, g.T.source.grid), []).append(g.T)
    keys = sorted(groups, key=lambda k: (k[0].n, str(k[1])))
    keys = [k for k in keys if len(groups[k]) >= 1]
    pairs = []
    while len(pairs) < count and keys:
        k = rng.choice(keys)
        pairs.append((rng.choice(groups[k]), rng.choice(groups[k])))
    return pairs


@_timed
def criterion_pipeline(cfg: SweepConfig) -> CriterionResult:
    """Induced homeomorphisms exist, recover the generating φ, and compose functorially."""
    isos = generated_isos(cfg)
    checked, bad = 0, []
    kinds = {}
    for g in isos:
        checked += 1
        kinds[g.kind] = kinds.get(g.kind, 0) + 1
        try:
            phi = induced_homeomorphism(g.T)
        except PipelineError as exc:
            bad.append((g.kind, str(exc)))
            continue
        if g.expected is not None and phi != g.expected:
            bad.append((g.kind, "wrong homeomorphism", phi.assignment, g.expected.assignment))
    pairs = _composable_pairs(isos, cfg.functoriality_pairs, cfg.seed)
    for T1, T2 in pairs:
        checked += 1
        lhs = induced_homeomorphism(T1.then(T2))
        rhs = induced_homeomorphism(T1).then(induced_homeomorphism(T2))
        if lhs != rhs:
            bad.append(("functoriality", lhs.assignment, rhs.assignment))
    notes = [", ".join(f"{k}={v}" for k, v in sorted(kinds.items())), f"pairs={len(pairs)}"]
    ok = not bad and len(isos) >= 200 and len(pairs) >= 50
    return CriterionResult(6, "induced homeomorphism pipeline", ok, checked, bad, notes)


# 7


@_timed
def criterion_negative(cfg: SweepConfig) -> CriterionResult:
    """No compatibility isomorphism between the two- and three-point discrete families."""
    grid = ValueGrid.parse("0,1")
    fx = enumerate_family(FiniteSpace.discrete(2), grid)
    fy = enumerate_family(FiniteSpace.discrete(3), grid)
    reasons = certify_no_isomorphism(fx, fy)
    bad = []
    if (len(fx), len(fy)) != (4, 8):
        bad.append(("sizes", len(fx), len(fy)))
    if not any("sizes" in r for r in reasons):
        bad.append("size certificate missing")
    if not any("profiles" in r for r in reasons):
        bad.append("profile certificate missing")
    if find_compat_isomorphism(fx, fy) is not None:
        bad.append("search found an isomorphism")
    return CriterionResult(7, "no isomorphism across sizes", not bad, 1, bad, reasons)


# 8


@_timed
def criterion_structural(cfg: SweepConfig) -> CriterionResult:
    """Additivity, clopen transfer and inclusion-preservation for every generated iso; connected dichotomy."""
    checked, bad = 0, []
    for g in generated_isos(cfg):
        checked += 1
        add = check_additive_lemma(g.T)
        clo = check_clopen_props(g.T)
        bad.extend(("additive", g.kind, v) for v in add.violations)
        bad.extend(("clopen", g.kind, v) for v in clo.violations)
        try:
            tau_map(g.T)
            vartheta_map(g.T)
        except PipelineError as exc:
            bad.append(("set maps", g.kind, str(exc)))
    grid = ValueGrid.parse(cfg.oracle_grid)
    triples = 0
    for space in _spaces(cfg):
        n, v = check_connected_dichotomy(enumerate_family(space, grid))
        triples += n
        bad.extend(("dichotomy", space, w) for w in v)
    return CriterionResult(8, "structural lemmas", not bad, checked + triples, bad, [f"dichotomy triples={triples}"])


# 9


def load_discont_instance(name: str):
    """Read a swap-construction instance from the bundled data."""
    if not (name.startswith(serialize.BUNDLED_PREFIX) or name.endswith(".json")):
        name = serialize.BUNDLED_PREFIX + name
    obj = serialize.read_json(name)
    space = serialize.space_from_json(obj["space"])
    grid = ValueGrid.parse(obj["grid"])
    component = PointSet.of(space.n, obj["component"])
    f1 = [Fraction(v) for v in obj["f1"]]
    f2 = [Fraction(v) for v in obj["f2"]]
    return space, grid, component, f1, f2


@_timed
def criterion_discont(cfg: SweepConfig) -> CriterionResult:
    """The component swap is a compatibility isomorphism other than the identity."""
    checked, bad, notes = 0, [], []
    for name in cfg.discont_instances:
        space, grid, F, f1, f2 = load_discont_instance(name)
        fam = enumerate_family(space, grid)
        T = discont_construction(fam, F, f1, f2)
        checked += len(fam) ** 2
        trace = discont_case_trace(T, F)
        if not is_compat_iso(T):
            bad.append((name, "not an isomorphism"))
        if T == CompatMap.identity(fam):
            bad.append((name, "identity"))
        if trace["violations"] or not trace["outside_fixed"]:
            bad.append((name, "case trace", trace["violations"][:3]))
        notes.append(f"{name}: moved {len(trace['changed'])}/{len(fam)}")
    ok = not bad and len(cfg.discont_instances) >= 3
    return CriterionResult(9, "component swap construction", ok, checked, bad, notes)


# 10


@_timed
def criterion_corollaries(cfg: SweepConfig) -> CriterionResult:
    """Ring, multiplicative, Kaplansky and monomial suites; vacuous configurations are listed."""
    suites = check_corollary_suites(
        cfg.corollary_sizes, cfg.corollary_grids, cfg.corollary_trials, cfg.seed
    )
    checked, bad, notes = 0, [], []
    for name, res in suites.items():
        checked += res.checked
        bad.extend((name, v) for v in res.violations)
        vac = res.vacuous_configs
        tag = f"{name} checked={res.checked}"
        if vac:
            tag += " vacuous=" + ",".join(f"n{c['points']}/{{{c['grid']}}}" for c in vac)
        notes.append(tag)
        if any("status" not in c for c in res.configs):
            bad.append((name, "config without status"))
    return CriterionResult(10, "corollary suites", not bad, checked, bad, notes)


CRITERIA = (
    criterion_oracle_equivalence,
    criterion_lattice_identities,
    criterion_sign_lemma,
    criterion_point_recovery,
    criterion_base_identity,
    criterion_pipeline,
    criterion_negative,
    criterion_structural,
    criterion_discont,
    criterion_corollaries,
)


def run_suite(cfg: SweepConfig | None = None, only=None) -> list[CriterionResult]:
    cfg = cfg or SweepConfig()
    chosen = CRITERIA if only is None else [CRITERIA[i - 1] for i in only]
    return [c(cfg) for c in chosen]
