import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from compatorder.errors import PipelineError
from compatorder.functions import ValueGrid, enumerate_family
from compatorder.lattice import is_ultrafilter
from compatorder.morphisms import (
    CompatMap,
    from_homeomorphism,
    gl_shuffle,
    value_relabel,
)
from compatorder.reconstruction import (
    induce,
    induced_homeomorphism,
    reconstruct,
    tau_map,
    upsilon,
    vartheta_map,
)
from compatorder.topology import FiniteSpace, PointSet, SpaceMap, quasicomponents, small_spaces

from conftest import spaces

SIER = FiniteSpace.sierpinski()


def fam(space, grid):
    return enumerate_family(space, ValueGrid.parse(grid))


def principal_on(theta, x):
    """Oracle: the members of Θ containing x, listed directly."""
    return {F for F in theta.elements if x in F}


# point recovery


def test_upsilon_examples():
    d2 = FiniteSpace.discrete(2)
    u0 = upsilon(d2, "0,1", 0)
    assert set(u0.elements()) == {PointSet.of(2, [0]), PointSet.of(2, [0, 1])}
    assert is_ultrafilter(u0)
    assert set(upsilon(SIER, "0,1", 0).elements()) == set(upsilon(SIER, "0,1", 1).elements())
    with pytest.raises(ValueError):
        upsilon(d2, "0,1", 2)


@pytest.mark.parametrize("n", range(1, 7))
def test_discrete_spaces_are_recovered(n):
    report = reconstruct(FiniteSpace.discrete(n), "0,1")
    assert report.verified
    assert report.checks["upsilon_bijective"]
    assert len(report.ult) == n
    assert report.upsilon.is_homeomorphism()


def test_non_discrete_examples_recover_the_quotient():
    report = reconstruct(SIER, "0,1")
    assert report.verified and len(report.ult) == 1
    assert "upsilon_bijective" not in report.checks
    two = SIER.disjoint_union(SIER)
    report = reconstruct(two, "-1,0,1")
    assert report.verified and len(report.ult) == 2
    assert report.upsilon(0) == report.upsilon(1) != report.upsilon(2)


@given(spaces(4), st.sampled_from(["0,1", "-1,0,1", "0,1/2,3"]))
def test_reconstruction_on_all_small_spaces(space, grid):
    if space.n == 0:
        return
    report = reconstruct(space, grid)
    assert report.verified
    assert len(report.ult) == len(quasicomponents(space))
    for x in range(space.n):
        u = report.ult.carrier[report.upsilon(x)]
        assert set(u.elements()) == principal_on(report.theta, x)


def test_report_json():
    data = reconstruct(FiniteSpace.discrete(2), "0,1").to_json()
    assert data["points"] == 2 and data["ultrafilters"] == 2
    assert data["verified"] is True and data["grid"] == ["0", "1"]


# induced set maps


def test_tau_for_homeomorphism_is_direct_image():
    d3 = FiniteSpace.discrete(3)
    F = fam(d3, "-1,0,1")
    phi = SpaceMap(d3, d3, (1, 2, 0))
    tau = tau_map(from_homeomorphism(phi, F, F))
    assert all(tau[S] == phi.image(S) for S in tau)
    theta = vartheta_map(from_homeomorphism(phi, F, F))
    assert all(theta[S] == phi.image(S) for S in theta)


def test_tau_for_relabel_is_identity():
    F = fam(FiniteSpace.discrete(2), "-1,0,1")
    tau = tau_map(value_relabel({-1: 1, 0: 0, 1: -1}, F))
    assert all(k == v for k, v in tau.items())


def test_tau_rejects_non_isomorphism():
    F = fam(FiniteSpace.discrete(2), "0,1")
    assignment = [F.zero_index] * len(F)
    with pytest.raises(PipelineError) as info:
        tau_map(CompatMap(F, F, assignment))
    assert info.value.stage == "iso"


# the full pipeline


def test_induce_identity():
    F = fam(FiniteSpace.discrete(3), "0,1")
    trace = induce(CompatMap.identity(F))
    assert trace.homeomorphism == SpaceMap.identity(F.space)
    assert all(trace.stages.values())
    assert trace.ultrafilters == (3, 3) and trace.theta_sizes == (8, 8)


@pytest.mark.parametrize("perm", list(itertools.permutations(range(3))))
def test_induce_recovers_known_homeomorphism(perm):
    d3 = FiniteSpace.discrete(3)
    F = fam(d3, "0,1,2")
    phi = SpaceMap(d3, d3, perm)
    assert induced_homeomorphism(from_homeomorphism(phi, F, F)) == phi


def test_relabel_induces_identity():
    F = fam(FiniteSpace.discrete(3), "-1,0,1,2")
    T = value_relabel({-1: 2, 0: 0, 1: -1, 2: 1}, F)
    assert induced_homeomorphism(T) == SpaceMap.identity(F.space)


def test_shuffle_then_homeomorphism_on_one_point():
    d1 = FiniteSpace.discrete(1)
    F = fam(d1, "-1,0,1,2")
    gl = F.gl_indices()
    T = gl_shuffle(dict(zip(gl, reversed(gl))), F)
    phi = SpaceMap.identity(d1)
    assert induced_homeomorphism(T.then(from_homeomorphism(phi, F, F))) == phi


def test_induce_requires_discrete_spaces():
    F = fam(SIER, "0,1")
    with pytest.raises(PipelineError) as info:
        induce(CompatMap.identity(F))
    assert info.value.stage == "precondition"
    G = fam(FiniteSpace.discrete(2), "0,1")
    H = fam(FiniteSpace.discrete(1), "0,1")
    with pytest.raises(PipelineError) as info:
        induce(CompatMap(G, H, [0, 1, 1, 1]))
    assert info.value.stage == "precondition"


def test_trace_json():
    F = fam(FiniteSpace.discrete(2), "0,1")
    data = induce(CompatMap.identity(F)).to_json()
    assert data["homeomorphism"] == [0, 1] and data["stages"]["compose"] is True


@given(st.integers(0, 10_000))
def test_functoriality(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    d = FiniteSpace.discrete(n)
    F = fam(d, "-1,0,1")
    phi = SpaceMap(d, d, tuple(rng.sample(range(n), n)))
    psi = SpaceMap(d, d, tuple(rng.sample(range(n), n)))
    S = from_homeomorphism(phi, F, F)
    T = from_homeomorphism(psi, F, F)
    composite = induced_homeomorphism(S.then(T))
    assert composite == induced_homeomorphism(S).then(induced_homeomorphism(T))
    assert induced_homeomorphism(S.inverse()) == induced_homeomorphism(S).inverse()


def test_small_space_census_reconstructs():
    for space in small_spaces(3):
        if space.n:
            assert reconstruct(space, "0,1").verified
