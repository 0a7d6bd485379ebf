"""Hypothesis strategies shared by the property tests."""

from __future__ import annotations

from hypothesis import strategies as st

from birough import BinaryRelation, Side, Subset
from birough.lab import canonical_universes


@st.composite
def relations(draw, max_u: int = 5, max_v: int = 5):
    u = draw(st.integers(1, max_u))
    v = draw(st.integers(1, max_v))
    rows = tuple(draw(st.integers(0, (1 << v) - 1)) for _ in range(u))
    return BinaryRelation(canonical_universes(u, v), rows)


@st.composite
def relation_and_subsets(draw, count: int = 1, max_u: int = 5, max_v: int = 5):
    rel = draw(relations(max_u=max_u, max_v=max_v))
    subsets = tuple(
        Subset(rel.universes, Side.V, draw(st.integers(0, rel.vmask)))
        for _ in range(count)
    )
    return rel, subsets
