from __future__ import annotations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from compatorder.functions import ValueGrid
from compatorder.topology import FiniteSpace, PointSet, all_topologies

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def spaces(draw, max_points: int = 4) -> FiniteSpace:
    n = draw(st.integers(0, max_points))
    return draw(st.sampled_from(all_topologies(n)))


@st.composite
def space_and_set(draw, max_points: int = 4):
    space = draw(spaces(max_points))
    bits = draw(st.integers(0, (1 << space.n) - 1))
    return space, PointSet(space.n, bits)


GRIDS = [ValueGrid.parse(g) for g in ("0,1", "-1,0,1", "0,1,2", "-1,0,1,2", "-1/2,0,3")]
