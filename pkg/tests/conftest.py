import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sawlab.cayley import (
    amalgam_standard_generators,
    cayley_oracle,
    hnn_standard_generators,
)
from sawlab.freeprod import build_free_product, complete_factor, cycle_factor
from sawlab.groups import AmalgamPresentation, FiniteGroup, HnnPresentation
from sawlab.lattices import build_cylinder, build_hexagonal_lattice, build_square_lattice


@pytest.fixture(scope="session")
def square():
    return build_square_lattice()


@pytest.fixture(scope="session")
def hexagonal():
    return build_hexagonal_lattice()


@pytest.fixture(scope="session")
def cyl3():
    return build_cylinder(3)


@pytest.fixture(scope="session")
def cyl4():
    return build_cylinder(4)


@pytest.fixture(scope="session")
def k2k2():
    return build_free_product(complete_factor(2), complete_factor(2))


@pytest.fixture(scope="session")
def c3c3():
    return build_free_product(cycle_factor(3), cycle_factor(3))


@pytest.fixture(scope="session")
def amalgam_pres():
    return AmalgamPresentation(
        FiniteGroup.cyclic(4), FiniteGroup.cyclic(6), FiniteGroup.cyclic(2),
        embed_h=(0, 2), embed_k=(0, 3),
    )


@pytest.fixture(scope="session")
def amalgam_cayley(amalgam_pres):
    return cayley_oracle(amalgam_pres, amalgam_standard_generators(amalgam_pres))


@pytest.fixture(scope="session")
def z2z3_pres():
    return AmalgamPresentation(
        FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.cyclic(1),
        embed_h=(0,), embed_k=(0,),
    )


@pytest.fixture(scope="session")
def hnn_pres():
    return HnnPresentation(FiniteGroup.cyclic(4), (0, 2), (0, 2), {0: 0, 2: 2})


@pytest.fixture(scope="session")
def hnn_cayley(hnn_pres):
    return cayley_oracle(hnn_pres, hnn_standard_generators(hnn_pres))
