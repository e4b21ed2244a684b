"""hypothesis strategies drawing small catalog groups and their subgroups."""

from hypothesis import strategies as st

from src.lib.catalog import all_subgroups, build_group
from src.lib.group_core import FiniteGroup

# small enough to enumerate every subgroup inside one example
PROPERTY_GROUPS = ["C4", "C2xC2", "S3", "D4", "Q8", "C6", "D5", "A4", "C2xS3"]


@st.composite
def groups(draw) -> FiniteGroup:
    return build_group(draw(st.sampled_from(PROPERTY_GROUPS)))


@st.composite
def group_pairs(draw):
    """(G, H) with H drawn from every subgroup of G."""
    G = draw(groups())
    H = draw(st.sampled_from(all_subgroups(G)))
    return G, H


@st.composite
def instances(draw):
    """(G, H, g) with g any element of G."""
    G, H = draw(group_pairs())
    g = draw(st.sampled_from(list(G.elements)))
    return G, H, g
