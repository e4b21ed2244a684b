import pytest

from src.lib.catalog import build_group, parse_subgroup
from src.lib.group_core import FiniteGroup, Subgroup


@pytest.fixture
def S3() -> FiniteGroup:
    return build_group("S3")


@pytest.fixture
def D8() -> FiniteGroup:
    """Dihedral group of order 8; the catalog calls it D4."""
    return build_group("D4")


@pytest.fixture
def Q8() -> FiniteGroup:
    return build_group("Q8")


@pytest.fixture
def A3(S3) -> Subgroup:
    return parse_subgroup(S3, "(123)")


@pytest.fixture
def transposition(S3) -> Subgroup:
    return parse_subgroup(S3, "(12)")


@pytest.fixture
def rotations(D8) -> Subgroup:
    return parse_subgroup(D8, "r")
