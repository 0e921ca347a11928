from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from agt.errors import RankMismatch, RankTooLarge
from agt.rootsys import (
    Root,
    Weight,
    act_root,
    act_weight,
    alpha,
    check_rank,
    dot_action,
    eps_to_weight,
    integral_root_system,
    is_regular_dominant,
    omega,
    pairing,
    positive_roots,
    rho,
    root_to_weight,
    simple_root,
    theta,
    weight_to_eps,
)
from agt.weylgrp import WbarElt, WeylElt, coxeter_w1, enumerate_weyl

from strategies import rank_and_weight, rank_weight_and_element, weights

F = Fraction


def eps_oracle(lam):
    """omega_i = e_1 + ... + e_i - i/(n+1) (e_1 + ... + e_{n+1}), summed by hand."""
    m = lam.n + 1
    out = [F(0)] * m
    for i, c in enumerate(lam.coeffs, start=1):
        for k in range(m):
            out[k] += c * ((1 if k < i else 0) - F(i, m))
    return tuple(out)


def dot_oracle(perm, lam):
    # w(lam + rho) - rho with w permuting epsilon slots: slot k goes to perm[k].
    x = eps_oracle(lam + rho(lam.n))
    y = [None] * len(x)
    for k, v in enumerate(x):
        y[perm[k]] = v
    return eps_to_weight(y) - rho(lam.n)


def test_pairing_with_highest_root():
    lam = omega(3, 1).scale(2) + omega(3, 3)
    assert pairing(lam, theta(3)) == 3


def test_pairing_of_simple_root_reads_coefficient():
    lam = Weight.of(F(1, 2), -3, 7)
    assert [pairing(lam, simple_root(3, k)) for k in (1, 2, 3)] == [F(1, 2), -3, 7]


def test_rho_pairs_to_height():
    for a in positive_roots(4):
        assert pairing(rho(4), a) == a.height


def test_dot_action_sl2():
    c = F(5, 3)
    s1 = WeylElt.simple(1, 1)
    assert dot_action(s1, omega(1, 1).scale(c)) == omega(1, 1).scale(-c - 2)


def test_epsilon_coordinates_match_oracle():
    lam = Weight.of(F(1, 2), F(-7, 3), 4)
    assert weight_to_eps(lam) == eps_oracle(lam)
    assert sum(weight_to_eps(lam)) == 0


def test_sigma_maps_first_simple_root_to_last():
    for n in range(1, 6):
        sigma = WbarElt.from_word(n, ("sigma",))
        assert act_root(sigma, simple_root(n, 1)) == simple_root(n, n)


def test_coxeter_element_rotates_simple_roots():
    assert act_root(coxeter_w1(2), simple_root(2, 1)) == simple_root(2, 2)


def test_identity_acts_trivially_on_roots():
    e = WeylElt.identity(3)
    for a in positive_roots(3):
        assert act_root(e, a) == a


def test_integral_root_system_dominant_integral_is_everything():
    roots, generated = integral_root_system(Weight.of(2, 0, 1))
    assert set(roots) == set(positive_roots(3)) and generated


def test_integral_root_system_empty_for_generic_sl3_weight():
    lam = Weight.of(F(-7, 3), F(-7, 3))
    roots, generated = integral_root_system(lam)
    assert roots == [] and generated


def test_integral_root_system_avoids_middle_node():
    lam = Weight.of(1, 0, 2) - omega(3, 2).scale(F(7, 2))
    roots, generated = integral_root_system(lam)
    assert set(roots) == {simple_root(3, 1), simple_root(3, 3)} and generated


def test_regular_dominance_examples():
    assert is_regular_dominant(Weight.zero(3))
    assert not is_regular_dominant(Weight.of(-2))
    assert is_regular_dominant(Weight.of(-1 + F(1, 2)))


def test_root_to_weight_is_the_cartan_column():
    # alpha_1 in omega coordinates is the first column of the Cartan matrix.
    assert root_to_weight(simple_root(3, 1)) == Weight.of(2, -1, 0)
    assert root_to_weight(theta(3)) == Weight.of(1, 0, 1)
    assert root_to_weight(Root(3, 3, 1)) == Weight.of(-1, -1, 1)


def test_alpha_indexing():
    assert alpha(4, 2, 4) == Root(4, 2, 5)
    assert alpha(4, 3, 3) == simple_root(4, 3)


def test_rank_errors():
    with pytest.raises(RankMismatch):
        pairing(Weight.of(1, 2), simple_root(3, 1))
    with pytest.raises(RankTooLarge):
        check_rank(50)


def test_rank_cap_from_environment(monkeypatch):
    monkeypatch.setenv("AGT_RANK_CAP", "2")
    with pytest.raises(RankTooLarge):
        check_rank(3)
    monkeypatch.setenv("AGT_RANK_CAP", "10")
    check_rank(9)


def test_json_strings():
    assert Weight.of(F(1, 2), -3).to_json() == ["1/2", "-3"]


@given(rank_and_weight(), st.data())
def test_pairing_is_linear_and_odd(nl, data):
    n, lam = nl
    mu = data.draw(weights(n))
    for a in positive_roots(n):
        assert pairing(lam + mu, a) == pairing(lam, a) + pairing(mu, a)
        assert pairing(lam, -a) == -pairing(lam, a)


@given(rank_and_weight())
def test_epsilon_round_trip(nl):
    _, lam = nl
    assert eps_to_weight(weight_to_eps(lam)) == lam


@given(rank_weight_and_element())
def test_dot_action_matches_oracle(nlw):
    _, lam, w = nlw
    assert dot_action(w, lam) == dot_oracle(w.perm, lam)


@given(rank_weight_and_element())
def test_dot_action_inverse(nlw):
    _, lam, w = nlw
    assert dot_action(w, dot_action(w.inverse(), lam)) == lam


@given(rank_weight_and_element())
def test_linear_action_transports_pairing(nlw):
    _, lam, w = nlw
    for a in positive_roots(lam.n):
        assert pairing(act_weight(w, lam), act_root(w, a)) == pairing(lam, a)


@given(rank_and_weight())
def test_sigma_transports_pairing(nl):
    n, lam = nl
    sigma = WbarElt.from_word(n, ("sigma",))
    for a in positive_roots(n):
        assert pairing(act_weight(sigma, lam), act_root(sigma, a)) == pairing(lam, a)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dot_action_is_a_group_action(n):
    lam = Weight(tuple(F(k, 3) - 1 for k in range(1, n + 1)))
    group = enumerate_weyl(n)
    seen = {}
    for w in group:
        seen[w] = dot_action(w, lam)
    for u in group[:: max(1, len(group) // 12)]:
        for w in group:
            assert dot_action(u, seen[w]) == dot_action(u * w, lam)
