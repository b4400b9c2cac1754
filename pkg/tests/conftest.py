import pytest

from gbt import Field, build_algebra, build_quiver, parse_tree, random_tree, root_tree
from gbt.data import tree_text

RANDOM_SEEDS = list(range(1, 21))


def rooted(name, root=None):
    return root_tree(parse_tree(tree_text(name)), root)


def algebra_of(rt, field=None):
    return build_algebra(build_quiver(rt), field or Field())


def random_rooted(seed, max_edges=8, max_mult=3):
    return root_tree(random_tree(seed, max_edges, max_mult))


@pytest.fixture(scope="session")
def tex():
    return rooted("T_ex")


@pytest.fixture(scope="session")
def A(tex):
    return algebra_of(tex)


@pytest.fixture(scope="session")
def single():
    return rooted("single_edge")


@pytest.fixture(scope="session")
def A1(single):
    return algebra_of(single)


@pytest.fixture(scope="session")
def td(A, tex):
    from gbt.tilting import TiltingData
    return TiltingData(A, tex)


@pytest.fixture(scope="session")
def sd(A, tex):
    from gbt.twosided import SliceData
    return SliceData(A, tex)
