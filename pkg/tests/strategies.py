"""Hypothesis strategies for rational descriptors and metrics."""

from fractions import Fraction as F

from hypothesis import strategies as st

from einstab.space import SpaceDescriptor, StructureConstants

positive_rationals = st.builds(F, st.integers(1, 30), st.integers(1, 30))


@st.composite
def descriptors(draw, max_r: int = 5, min_r: int = 1):
    r = draw(st.integers(min_r, max_r))
    dims = tuple(draw(st.lists(st.integers(1, 12), min_size=r, max_size=r)))
    if sum(dims) < 2:
        dims = (2,) + dims[1:]
    triples = draw(st.lists(
        st.tuples(*(st.integers(1, r),) * 3).map(lambda t: tuple(sorted(t))),
        max_size=6, unique=True,
    ))
    entries = {t: draw(positive_rationals) for t in triples}
    killing = tuple(draw(st.lists(positive_rationals, min_size=r, max_size=r)))
    return SpaceDescriptor("drawn", dims, killing, StructureConstants(r, entries))


@st.composite
def space_and_metric(draw, max_r: int = 5, min_r: int = 1):
    space = draw(descriptors(max_r, min_r))
    x = tuple(draw(st.lists(positive_rationals, min_size=space.r, max_size=space.r)))
    return space, x
