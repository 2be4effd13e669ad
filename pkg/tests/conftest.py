import pytest
from hypothesis import settings

from specs import build_group

settings.register_profile("ci", max_examples=40, deadline=None)
settings.load_profile("ci")

SMALL = ["cyclic(6)", "sym(3)", "sym(4)", "alt(4)", "dihedral(4)", "dihedral(6)", "frob(3,2)", "sl2(3)"]


@pytest.fixture(scope="session")
def s3():
    return build_group("sym(3)")


@pytest.fixture(scope="session")
def s4():
    return build_group("sym(4)")


@pytest.fixture(scope="session")
def a4():
    return build_group("alt(4)")


@pytest.fixture(scope="session")
def a5():
    return build_group("alt(5)")


@pytest.fixture(scope="session")
def d8():
    return build_group("dihedral(4)")


@pytest.fixture(scope="session")
def y1():
    return build_group("wreathY(2,3,1)")


@pytest.fixture(scope="session", params=SMALL)
def small_group(request):
    return build_group(request.param)
