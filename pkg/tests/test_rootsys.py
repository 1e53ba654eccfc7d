from fractions import Fraction as Q

import pytest

from cyclic_higgs.rootsys import CartanError, Root, build_root_system, cyclic_sets
from conftest import all_pass

# |roots| and the degree of the longest root, from the classical tables
SIZES = {"A2": (6, 2), "C2": (8, 3), "G2": (12, 5), "A3": (12, 3)}
# dual Coxeter numbers; Kill(h_a, h_a) = 4 h_dual for a long simple root
DUAL_COXETER = {"A2": 3, "C2": 3, "G2": 4, "A3": 4}


@pytest.mark.parametrize("name", sorted(SIZES))
def test_root_counts(name):
    rs = build_root_system(name)
    n, deg = SIZES[name]
    assert len(rs.roots) == n
    assert rs.longest.degree == deg
    assert rs.dim == n + rs.rank


def test_simple_roots_are_unit_vectors_in_order():
    rs = build_root_system("G2")
    assert rs.simple == (Root((1, 0)), Root((0, 1)))


def test_g2_longest_root():
    assert build_root_system("G2").longest == Root((3, 2))
    assert build_root_system("C2").longest == Root((2, 1))


@pytest.mark.parametrize("name", sorted(SIZES))
def test_killing_on_long_coroot(name):
    rs = build_root_system(name)
    sym = rs.symmetrizer
    long_i = max(range(rs.rank), key=lambda i: sym[i])
    assert rs.killing_h[long_i][long_i] == 4 * DUAL_COXETER[name]


def test_a2_killing_matches_trace_form():
    # sl3: Kill = 6 tr(XY); h1 = diag(1,-1,0), h2 = diag(0,1,-1)
    assert build_root_system("A2").killing_h == ((12, -6), (-6, 12))


@pytest.mark.parametrize("name", sorted(SIZES))
def test_coroots_pair_to_two(name):
    rs = build_root_system(name)
    for a in rs.roots:
        assert rs.pairing(a, rs.coroot_coords[a]) == 2


def test_cyclic_sets_g2():
    rs = build_root_system("G2")
    Z, Zdag, g1 = cyclic_sets(rs)
    assert set(Zdag) == {Root((1, 0)), Root((0, 1)), Root((-3, -2))}
    assert set(Z) == {-r for r in Zdag}
    assert len(g1) == 6


@pytest.mark.parametrize("name", sorted(SIZES))
def test_root_facts(name):
    from cyclic_higgs.rootsys import verify_cyclic_sum_property, verify_root_facts
    rs = build_root_system(name)
    assert all_pass(verify_root_facts(rs) + verify_cyclic_sum_property(rs))


@pytest.mark.parametrize("bad", [
    [[2, -1], [-1]],
    [[2, 1], [1, 2]],
    [[3, -1], [-1, 2]],
    [[2, 0], [0, 2]],
    [[2, -2], [-2, 2]],  # affine A1
    [[2, -3], [-3, 2]],  # indefinite
    [[2, -1], [0, 2]],
    "B7",
    "not json",
])
def test_invalid_cartan_rejected(bad):
    with pytest.raises(CartanError):
        build_root_system(bad)


def test_json_matrix_accepted():
    rs = build_root_system("[[2,-3],[-1,2]]")
    assert len(rs.roots) == 12 and rs.name == "custom"


def test_alias():
    assert build_root_system("A3-smoke").name == "A3"


def test_symmetrizer_c2():
    assert build_root_system("C2").symmetrizer == (Q(1), Q(2))
