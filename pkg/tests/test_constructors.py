import pytest
from sympy.combinatorics.named_groups import DihedralGroup

import constructors as C
from errors import CapExceeded, InvalidAction, InvalidParams, NoSuchAction
from groups import center, generated_subgroup
from structure import is_nilpotent, is_solvable, o_p


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 9])
def test_dihedral_order_matches_sympy(n):
    assert C.dihedral(n).order == DihedralGroup(n).order() == 2 * n


@pytest.mark.parametrize(
    "build,order",
    [
        (lambda: C.cyclic(12), 12),
        (lambda: C.sym(1), 1),
        (lambda: C.alt(3), 3),
        (lambda: C.sl2(2), 6),
        (lambda: C.sl2(3), 24),
        (lambda: C.sl2(4), 60),
        (lambda: C.frobenius(2, 3), 6),
        (lambda: C.frobenius(3, 2), 12),
        (lambda: C.frobenius(3, 7), 21),
        (lambda: C.frob_cyclic(7, 1, 3), 21),
        (lambda: C.frob_cyclic(7, 2, 3), 147),
        (lambda: C.baer_group(2, 1, 3, 2)[0], 72),
    ],
)
def test_orders(build, order):
    assert build().order == order


def test_cap_is_checked_before_enumeration():
    with pytest.raises(CapExceeded) as info:
        C.sym(10)
    assert info.value.order == 3628800


def test_invalid_parameters():
    with pytest.raises(InvalidParams):
        C.sl2(6)
    with pytest.raises(InvalidParams):
        C.wreath_Y(2, 2, 1)
    with pytest.raises(InvalidParams):
        C.baer_group(2, 2, 3, 2)
    with pytest.raises(InvalidParams):
        C.frobenius(4, 3)
    with pytest.raises(NoSuchAction):
        C.frob_cyclic(7, 1, 5)


def test_direct_product_coordinates():
    A, B = C.sym(3), C.cyclic(4)
    G = C.direct_product([A, B])
    assert G.order == 24
    x = C.combine(G, [4, 3])
    assert C.project(G, x, 0) == 4 and C.project(G, x, 1) == 3
    assert C.embed(G, 1, 2) == C.combine(G, [0, 2])


def test_semidirect_product_by_inversion():
    N, H = C.cyclic(3), C.cyclic(2)
    G = C.semidirect_product(N, H, lambda n, h: n * (-1) ** h % 3)
    assert G.order == 6
    assert center(G).is_trivial()
    assert generated_subgroup(G, G.marks["N"]).card == 3


def test_semidirect_product_rejects_non_automorphisms():
    with pytest.raises(InvalidAction):
        C.semidirect_product(C.cyclic(3), C.cyclic(2), lambda n, h: (n + h) % 3)


def test_wreath_product():
    G = C.wreath_product(C.cyclic(2), C.cyclic(2))
    assert G.order == 8
    assert is_nilpotent(G.full())


def test_frobenius_kernel_and_complement():
    G = C.frobenius(3, 7)
    assert G.orders[G.distinguished] == 3
    assert generated_subgroup(G, G.marks["Q"]).card == 7
    assert center(G).is_trivial()


def test_wreath_y():
    G, g = C.wreath_Y(2, 3, 1)
    assert (G.order, G.orders[g]) == (36, 4)
    assert generated_subgroup(G, G.marks["Q"]).card == 9
    assert is_solvable(G.full())


def test_wreath_y_second_level():
    G, g = C.wreath_Y(2, 3, 2)
    assert (G.order, G.orders[g]) == (648, 8)


def test_baer_group_has_no_normal_p_subgroup():
    G, x = C.baer_group(2, 1, 3, 3)
    assert G.order == 648
    assert o_p(G, 2).is_trivial()
    assert G.orders[x] == 2


def test_sl2_center():
    assert center(C.sl2(3)).card == 2
    assert center(C.sl2(4)).is_trivial()


@pytest.mark.slow
def test_group_x_first_level():
    G, w = C.group_X(2, 3, 1)
    assert G.order == 9216
    assert center(G).is_trivial()
    assert generated_subgroup(G, G.marks["W"]).card == 256
