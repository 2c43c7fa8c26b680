import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from compatorder.errors import GridError, MapError, PreconditionError
from compatorder.functions import FnFamily, ScalarFn, ValueGrid, compat_le, enumerate_family
from compatorder.morphisms import (
    CompatMap,
    check_additive_lemma,
    check_clopen_props,
    check_connected_dichotomy,
    check_corollary_suites,
    certify_no_isomorphism,
    compat_iso_violation,
    compat_morphism_violation,
    discont_case_trace,
    discont_construction,
    down_set_profile,
    find_compat_isomorphism,
    from_homeomorphism,
    generate_isomorphisms,
    gl_shuffle,
    gl_shuffle_witness,
    is_compat_iso,
    is_compat_morphism,
    kaplansky_shift,
    monomial_apply,
    multiplicative_grid_bijections,
    pointwise_order_map,
    set_image_map,
    value_relabel,
)
from compatorder.topology import FiniteSpace, PointSet, SpaceMap, small_spaces

SIER = FiniteSpace.sierpinski()
D1, D2, D3 = (FiniteSpace.discrete(n) for n in (1, 2, 3))


def fam(space, grid):
    return enumerate_family(space, ValueGrid.parse(grid))


# oracle: compatibility isomorphism by direct pair evaluation


def iso_oracle(T):
    if sorted(T.assignment) != list(range(len(T.target))) or len(T.source) != len(T.target):
        return False
    for f, g in itertools.product(T.source, repeat=2):
        if compat_le(f, g) != compat_le(T(f), T(g)):
            return False
    return True


# basic checks


def test_identity_is_iso():
    for space in small_spaces(3):
        F = fam(space, "-1,0,1")
        T = CompatMap.identity(F)
        assert is_compat_iso(T) and is_compat_morphism(T)
        assert T.flags == {"bijective": True, "forward_preserving": True, "inverse_preserving": True}


def test_one_point_into_larger_family_is_morphism_without_inverse():
    small = fam(D1, "-1,0,1")
    big = fam(D1, "-1,0,1,2")
    T = CompatMap.from_function(small, big, lambda f: f.values)
    assert is_compat_morphism(T)
    assert not T.is_bijective
    # a 0-fixing bijection between equal-size one-point families where the target has an extra level
    nested = FnFamily(D2, [ScalarFn(D2, v) for v in [(0, 0), (1, 0), (1, 1)]])
    chain = fam(D1, "0,1,2")
    U = CompatMap(chain, nested, [0, 1, 2])
    assert is_compat_morphism(U)
    assert compat_iso_violation(U)[0] == "inverse not a morphism"


def test_collapse_to_zero_is_not_a_morphism():
    F = fam(D2, "0,1")
    one = F.index_of((1, 1))
    assignment = list(range(len(F)))
    assignment[one] = F.zero_index
    T = CompatMap(F, F, assignment)
    hit = compat_morphism_violation(T)
    assert hit is not None
    f, g = hit
    assert compat_le(f, g) and not compat_le(T(f), T(g))


def test_map_validation():
    F = fam(D1, "0,1")
    with pytest.raises(MapError):
        CompatMap(F, F, [0])
    with pytest.raises(MapError):
        CompatMap(F, F, [0, 5])
    with pytest.raises(MapError):
        CompatMap.identity(F).then(CompatMap.identity(fam(D2, "0,1")))


# generators


def test_from_homeomorphism_examples():
    F = fam(D2, "0,1,2")
    ident = SpaceMap.identity(D2)
    assert from_homeomorphism(ident, F, F) == CompatMap.identity(F)
    swap = SpaceMap(D2, D2, (1, 0))
    T = from_homeomorphism(swap, F, F)
    for f in F:
        assert T(f).values == (f.values[1], f.values[0])
    S = fam(SIER, "0,1")
    assert from_homeomorphism(SpaceMap.identity(SIER), S, S) == CompatMap.identity(S)
    with pytest.raises(MapError):
        from_homeomorphism(SpaceMap(SIER, SIER, (1, 0)), S, S)


def test_value_relabel_examples():
    F = fam(D2, "0,1,2")
    one, two = Fraction(1), Fraction(2)
    assert value_relabel({0: 0, 1: 1, 2: 2}, F) == CompatMap.identity(F)
    T = value_relabel({0: 0, 1: 2, 2: 1}, F)
    assert iso_oracle(T)
    assert T(ScalarFn(D2, [one, 0])).values == (two, 0)
    N = fam(D3, "-1,0,1")
    assert iso_oracle(value_relabel({-1: 1, 0: 0, 1: -1}, N))
    with pytest.raises(GridError):
        value_relabel({0: 1, 1: 0}, fam(D1, "0,1"))
    with pytest.raises(GridError):
        value_relabel({0: 0, 1: 3}, fam(D1, "0,1"))


def test_gl_shuffle_on_connected_spaces():
    F = fam(D1, "-1,0,1,2")
    gl = F.gl_indices()
    for perm in itertools.permutations(gl):
        T = gl_shuffle(dict(zip(gl, perm)), F)
        assert iso_oracle(T)
    assert gl_shuffle({i: i for i in gl}, F) == CompatMap.identity(F)
    S = fam(SIER, "0,1,2")
    gl = S.gl_indices()
    assert iso_oracle(gl_shuffle(dict(zip(gl, reversed(gl))), S))


def test_gl_shuffle_refused_on_disconnected_space():
    # with a single nowhere-zero function there is nothing to shuffle, so no witness
    with pytest.raises(PreconditionError) as info:
        gl_shuffle({}, fam(D2, "0,1"))
    assert info.value.witness is None
    F = fam(D2, "0,1,2")
    gl = F.gl_indices()
    with pytest.raises(PreconditionError) as info:
        gl_shuffle({i: i for i in gl}, F)
    phi, (h, f) = info.value.witness
    T = CompatMap(F, F, [phi.get(i, i) for i in range(len(F))])
    assert compat_le(h, f) and not compat_le(T(h), T(f))
    assert gl_shuffle_witness(fam(D1, "0,1,2")) is None


def test_discont_examples():
    F = fam(D3, "0,1,2")
    comp = PointSet.of(3, [0])
    T = discont_construction(F, comp, [1], [2])
    assert iso_oracle(T) and T != CompatMap.identity(F)
    assert discont_construction(F, comp, [1], [1]) == CompatMap.identity(F)
    # the open point of the Sierpinski space is not a component; its closed point has empty interior
    S = fam(SIER, "0,1,2")
    with pytest.raises(PreconditionError):
        discont_construction(S, PointSet.of(2, [1]), [1], [2])
    with pytest.raises(PreconditionError):
        discont_construction(S, PointSet.of(2, [0]), [1], [2])
    with pytest.raises(PreconditionError):
        discont_construction(F, comp, [0], [2])
    with pytest.raises(PreconditionError):
        discont_construction(F, comp, [1], [3])


def test_discont_trace_and_fixed_part():
    space = SIER.disjoint_union(D1)
    F = fam(space, "-1,0,1,2")
    comp = PointSet.of(3, [0, 1])
    T = discont_construction(F, comp, [-1, -1], [2, 2])
    trace = discont_case_trace(T, comp)
    assert trace["violations"] == [] and trace["outside_fixed"]
    assert all(c > 0 for c in trace["cases"].values())
    moved = {f.values for f in trace["changed"]}
    nonvanishing = {f.values for f in F if all(v != 0 for v in f.restrict(comp))}
    assert moved and moved <= nonvanishing
    report = check_clopen_props(T)
    assert report.clean
    tau = set_image_map(T, "sigma")
    assert all(tau[U] == U for U in space.clopens)


def test_kaplansky_examples():
    F = fam(D2, "0,1,2")
    assert kaplansky_shift(pointwise_order_map(F, [{0: 0, 1: 1, 2: 2}] * 2)) == CompatMap.identity(F)
    S = pointwise_order_map(F, [{0: 1, 1: 2, 2: 3}] * 2)
    T = kaplansky_shift(S)
    assert all(T(f) == f for f in F)
    S = pointwise_order_map(F, [{0: -5, 1: Fraction(1, 3), 2: 7}, {0: 0, 1: 4, 2: 9}], (1, 0))
    assert iso_oracle(kaplansky_shift(S))
    with pytest.raises(MapError):
        kaplansky_shift(pointwise_order_map(F, [{0: 2, 1: 1, 2: 0}] * 2))


# structural reports


def test_additive_report():
    F = fam(D2, "-1,0,1")
    assert check_additive_lemma(CompatMap.identity(F)).clean
    assert check_additive_lemma(value_relabel({-1: 1, 0: 0, 1: -1}, F)).clean
    # swap two functions with different supports
    a, b = F.index_of((1, 0)), F.index_of((1, 1))
    assignment = list(range(len(F)))
    assignment[a], assignment[b] = b, a
    assert not check_additive_lemma(CompatMap(F, F, assignment)).clean


def test_clopen_report_on_homeomorphism():
    F = fam(D3, "0,1")
    phi = SpaceMap(D3, D3, (2, 0, 1))
    T = from_homeomorphism(phi, F, F)
    assert check_clopen_props(T).clean
    tau = set_image_map(T, "sigma")
    for U in D3.clopens:
        assert tau[U] == phi.image(U)
    assert check_clopen_props(CompatMap.identity(F)).clean


def test_connected_dichotomy():
    for space in small_spaces(3):
        n, bad = check_connected_dichotomy(fam(space, "-1,0,1,2"))
        assert bad == [] and n > 0


# negative direction and search


def test_no_isomorphism_between_sizes():
    fx, fy = fam(D2, "0,1"), fam(D3, "0,1")
    reasons = certify_no_isomorphism(fx, fy)
    assert len(fx) == 4 and len(fy) == 8
    assert any("sizes" in r for r in reasons) and any("profiles" in r for r in reasons)
    assert find_compat_isomorphism(fx, fy) is None


def test_search_finds_isomorphism_between_copies():
    F = fam(D2, "0,1,2")
    T = find_compat_isomorphism(F, F)
    assert T is not None and iso_oracle(T)
    assert down_set_profile(fam(SIER, "0,1")) == down_set_profile(fam(D1, "0,1"))


# seeded generation


def test_generated_isomorphisms_are_isomorphisms():
    items = generate_isomorphisms(seed=3, count=40)
    assert {g.kind for g in items} == {"homeomorphism", "relabel", "gl_shuffle", "kaplansky", "composition"}
    for g in items:
        assert is_compat_iso(g.T)
        assert is_compat_iso(g.T.inverse())


def test_generation_is_deterministic():
    a = [g.T.assignment for g in generate_isomorphisms(seed=7, count=25)]
    b = [g.T.assignment for g in generate_isomorphisms(seed=7, count=25)]
    assert a == b


@given(st.integers(0, 10_000))
def test_composition_and_inverse_stay_isomorphisms(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    F = fam(FiniteSpace.discrete(n), "-1,0,1")
    phi = SpaceMap(F.space, F.space, tuple(rng.sample(range(n), n)))
    A = from_homeomorphism(phi, F, F)
    B = value_relabel({-1: 1, 0: 0, 1: -1}, F)
    assert is_compat_iso(A.then(B)) and is_compat_iso(B.then(A).inverse())


# corollary suites


def test_multiplicative_grid_bijections():
    assert multiplicative_grid_bijections(ValueGrid.parse("0,1")) == [{0: 0, 1: 1}]
    found = multiplicative_grid_bijections(ValueGrid.parse("-2,-1,0,1,2"))
    assert len(found) == 2
    assert any(a[Fraction(2)] == -2 for a in found)


def test_monomial_example_on_two_points():
    F = fam(D2, "-1,0,1,2")
    perm, scales = (1, 0), [Fraction(2), Fraction(-3)]
    images = {f.values: monomial_apply(f, perm, scales) for f in F}
    f = ScalarFn(D2, [Fraction(1), Fraction(2)])
    assert images[f.values].values == (Fraction(4), Fraction(-3))
    for f, g in itertools.product(F, repeat=2):
        Mf, Mg = images[f.values], images[g.values]
        if compat_le(f, g):
            d = [b - a for a, b in zip(f.values, g.values)]
            Md = monomial_apply(ScalarFn(D2, d, check=False), perm, scales)
            assert all(x * y == 0 for x, y in zip(Md.values, Mf.values))
            assert Mg.values == tuple(x + y for x, y in zip(Md.values, Mf.values))
            assert compat_le(Mf, Mg)


def test_corollary_suites_report_vacuous_configs():
    res = check_corollary_suites(sizes=(1, 2), grids=("0,1", "-1,0,1"), trials=3, seed=1)
    assert all(r.passed for r in res.values())
    ring = res["gelfand_kolmogorov"]
    assert {c["status"] for c in ring.configs} <= {"vacuous", "checked"}
    assert any(c["status"] == "vacuous" for c in ring.configs)
    assert ring.vacuous_configs == [c for c in ring.configs if c["status"] == "vacuous"]
    assert res["jarosz"].checked > 0 and res["kaplansky"].checked > 0
