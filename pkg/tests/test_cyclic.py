import random

import pytest
from hypothesis import given, strategies as st

from cyclic_higgs import load
from cyclic_higgs.cyclic import (BRACKET_TABLE, CyclicFrame, cyclic_dec_sides, killing_wedge, one_form,
                                 random_element, sample_frames, verify_bracket_table,
                                 verify_cyclic_dec_identities, verify_form_calculus, verify_rigidity_kernels,
                                 wedge, wedge_eval, zero_form)
from conftest import ALL_GROUPS, all_pass


def test_nine_inclusions():
    assert len(BRACKET_TABLE) == 9


@pytest.mark.parametrize("name", ALL_GROUPS)
def test_bracket_table(name):
    entries = verify_bracket_table(load(name).alg)
    assert len(entries) == 9 and all_pass(entries)


def test_bracket_table_g2_pairs():
    counts = {e["proposition_id"]: e["pairs_checked"] for e in verify_bracket_table(load("G2").alg)}
    assert counts["brackets.Z_g1"] == 3 * 6
    assert counts["brackets.h_h"] == 4


@pytest.mark.parametrize("name", ["A2", "C2", "G2"])
def test_cyclic_dec_on_basis_and_random_frames(name):
    g = load(name).alg
    frames = sample_frames(g, n_random=100, seed=0)
    assert len(frames) == g.dim ** 2 + 100
    assert all_pass(verify_cyclic_dec_identities(frames))


@pytest.mark.parametrize("name", ALL_GROUPS)
def test_form_calculus(name):
    assert all_pass(verify_form_calculus(load(name).alg, n=10))


@pytest.mark.parametrize("name", ALL_GROUPS)
def test_rigidity(name):
    entries = verify_rigidity_kernels(load(name).alg)
    ids = {e["proposition_id"] for e in entries}
    assert ("rigidity.K2" in ids) == (name == "A2")
    assert ("rigidity.K4" in ids) == (name != "A2")
    assert all_pass(entries)


def test_wedge_convention():
    g = load("A2").alg
    a1, a2, b1, b2 = (g.basis(k) for k in (2, 3, 4, 5))
    assert wedge_eval((a1, a2), (b1, b2)) == g.bracket(a1, b2) - g.bracket(a2, b1)
    # (w ^ w)(e1, e2) = 2 [w(e1), w(e2)]
    assert wedge(one_form(a1, a2), one_form(a1, a2)).value == g.bracket(a1, a2) * 2
    assert wedge_eval(a1, (b1, b2)) == (g.bracket(a1, b1), g.bracket(a1, b2))


def test_killing_wedge_antisymmetric_on_one_forms():
    g = load("C2").alg
    rng = random.Random(2)
    a = one_form(random_element(g, rng), random_element(g, rng))
    b = one_form(random_element(g, rng), random_element(g, rng))
    assert killing_wedge(a, b).value == -killing_wedge(b, a).value


def test_degree_overflow_rejected():
    g = load("A2").alg
    a = one_form(g.basis(2), g.basis(3))
    with pytest.raises(ValueError):
        wedge(wedge(a, a), a)


@given(st.integers(0, 2 ** 32 - 1))
def test_cyclic_dec_random_frames_property(seed):
    g = load("G2").alg
    rng = random.Random(seed)
    fr = CyclicFrame(random_element(g, rng, -2, 2), random_element(g, rng, -2, 2))
    for lhs, rhs in cyclic_dec_sides(fr).values():
        assert lhs == rhs
