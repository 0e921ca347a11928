from fractions import Fraction
from itertools import combinations, product
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from agt.admissible import (
    AdmissibleLevel,
    admissible_number,
    casimir_xi,
    classify_weight,
    enumerate_all,
    enumerate_lambda,
    enumerate_orbit_weights,
    enumerate_prkz,
    orbit_is_reachable,
    orbit_pieces,
    t_eta_condition,
)
from agt.errors import NotAdmissible, NotAdmissibleWeight
from agt.orbits import Partition, partitions_of
from agt.rootsys import Root, Weight, dot_action, integral_root_system, is_regular_dominant, omega
from agt.weylgrp import ParabolicSet, WeylElt, coxeter_wj, enumerate_weyl, min_coset_reps, rotate_sigma

import oracles

F = Fraction
P = Partition.of


def sigmas(n):
    for k in range(n + 1):
        for c in combinations(range(1, n + 1), k):
            yield ParabolicSet.of(n, *c)


def test_admissible_numbers():
    assert (admissible_number(1, F(1, 2)).p, admissible_number(1, F(1, 2)).q) == (5, 2)
    L = admissible_number(2, F(-2, 3))
    assert (L.p, L.q) == (7, 3) and L.k == F(-2, 3)
    with pytest.raises(NotAdmissible):
        admissible_number(3, -1)
    with pytest.raises(NotAdmissible):
        admissible_number(2, -5)


def test_level_validation():
    with pytest.raises(NotAdmissible):
        AdmissibleLevel(2, 6, 4)
    with pytest.raises(NotAdmissible):
        AdmissibleLevel(3, 3, 1)


@pytest.mark.parametrize("n,p,count", [(1, 5, 4), (2, 7, 15), (3, 5, 4), (3, 9, 56), (4, 6, 5)])
def test_integral_weight_counts(n, p, count):
    got = enumerate_prkz(AdmissibleLevel(n, p, 1))
    assert len(got) == count == comb(p - 1, n)
    assert {w.coeffs for w in got} == {tuple(map(F, a)) for a in oracles.integral_dominant(n, p - n - 1)}
    assert all(is_regular_dominant(w) for w in got)


def test_sl2_integral_weights():
    assert [w.coeffs[0] for w in enumerate_prkz(AdmissibleLevel(1, 5, 2))] == [0, 1, 2, 3]


def test_lambda_sl2():
    got = enumerate_lambda(AdmissibleLevel(1, 5, 2), ParabolicSet.of(1))
    assert sorted(w.coeffs[0] for w in got) == [c - F(5, 2) for c in range(4)]


def test_lambda_sl3_count_and_infeasible():
    L = AdmissibleLevel(2, 7, 3)
    assert len(enumerate_lambda(L, ParabolicSet.of(2, 2))) == 30
    assert enumerate_lambda(AdmissibleLevel(2, 5, 2), ParabolicSet.of(2)) == []


@pytest.mark.parametrize("n,p,q", [(1, 5, 2), (2, 7, 3), (2, 5, 2), (2, 7, 2), (3, 5, 2), (3, 7, 3)])
def test_lambda_sets_against_oracle(n, p, q):
    L = AdmissibleLevel(n, p, q)
    for sig in sigmas(n):
        got = {w.coeffs for w in enumerate_lambda(L, sig)}
        assert got == set(oracles.lambda_set(n, p, q, sig.sigma))


def test_orbit_counts_sl2():
    L = AdmissibleLevel(1, 5, 2)
    assert len(enumerate_orbit_weights(L, P(2))) == 4
    assert len(enumerate_orbit_weights(L, P(1, 1))) == 4


def test_orbit_counts_sl3():
    counts = {o.parts: len(ws) for o, ws in enumerate_all(AdmissibleLevel(2, 7, 3)).items()}
    assert counts == {(1, 1, 1): 15, (2, 1): 90, (3,): 30}


@pytest.mark.parametrize("n,p,q", [(1, 5, 2), (1, 3, 2), (2, 7, 3), (2, 5, 2), (2, 4, 3), (3, 5, 2),
                                   (3, 5, 3), (3, 6, 5)])
def test_enumeration_against_brute_force(n, p, q):
    expected = oracles.admissible_by_orbit(n, p, q)
    got = enumerate_all(AdmissibleLevel(n, p, q))
    for orbit, ws in got.items():
        assert {w.coeffs for w in ws} == expected.get(orbit.parts, set())


@pytest.mark.parametrize("n,p,q", [(2, 7, 3), (3, 5, 2), (3, 7, 4)])
def test_pieces_are_disjoint_and_consistent(n, p, q):
    L = AdmissibleLevel(n, p, q)
    seen = set()
    for orbit in partitions_of(n + 1):
        for piece in orbit_pieces(L, orbit):
            ws = set(piece.weights)
            assert len(ws) == len(piece.weights) and not ws & seen
            seen |= ws
            # The integral roots of every weight are the w-image of the Sigma subsystem.
            w = piece.coset_rep
            target = {w.inverse().act_root(a) for a in _sigma_roots(piece.sigma)}
            target = {a if a.is_positive else -a for a in target}
            for lam in piece.weights:
                assert is_regular_dominant(lam)
                assert set(integral_root_system(lam)[0]) == target


def _sigma_roots(sig):
    out = []
    for i in range(1, sig.n + 1):
        for j in range(i + 1, sig.n + 2):
            if all(k in sig.sigma for k in range(i, j)):
                out.append(Root(sig.n, i, j))
    return out


def test_empty_exactly_above_orbit_q():
    for n, p, q in [(2, 5, 2), (3, 5, 2), (3, 7, 3), (4, 7, 2)]:
        L = AdmissibleLevel(n, p, q)
        for orbit in partitions_of(n + 1):
            assert bool(enumerate_orbit_weights(L, orbit)) == orbit_is_reachable(L, orbit)


@pytest.mark.parametrize("n,p", [(1, 4), (2, 5), (3, 6)])
def test_q_one_collapse(n, p):
    L = AdmissibleLevel(n, p, 1)
    everything = [w for ws in enumerate_all(L).values() for w in ws]
    assert sorted(everything, key=lambda w: w.coeffs) == sorted(enumerate_prkz(L), key=lambda w: w.coeffs)


@pytest.mark.parametrize("n,p", [(1, 5), (2, 5), (3, 5), (3, 7), (4, 7)])
def test_q_two_only_two_column_orbits(n, p):
    got = enumerate_all(AdmissibleLevel(n, p, 2))
    for orbit, ws in got.items():
        if ws:
            assert set(orbit.parts) <= {1, 2}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lambda_transport(n):
    L = AdmissibleLevel(n, 2 * n + 3, n + 1)
    for sig in sigmas(n):
        for j in range(1, n + 1):
            image = rotate_sigma(sig, j)
            if image is None:
                continue
            wj = coxeter_wj(n, j)
            moved = {dot_action(wj, mu) for mu in enumerate_lambda(L, sig)}
            assert moved == set(enumerate_lambda(L, image))


def test_classify_examples():
    L = AdmissibleLevel(1, 5, 2)
    c = classify_weight(L, Weight.of(3 - F(5, 2)))
    assert c.orbit == P(2) and c.parabolic == ParabolicSet.of(1) and c.coset_rep.is_identity()
    L3 = AdmissibleLevel(2, 7, 3)
    s1 = WeylElt.simple(2, 1)
    for mu in enumerate_lambda(L3, ParabolicSet.of(2, 2))[:8]:
        c = classify_weight(L3, dot_action(s1.inverse(), mu))
        assert c.orbit == P(2, 1) and c.coset_rep == s1 and c.base == mu
    with pytest.raises(NotAdmissibleWeight):
        classify_weight(L, Weight.of(-2))
    with pytest.raises(NotAdmissibleWeight):
        classify_weight(L3, Weight.of(F(1, 7), 0))


def test_classification_round_trip_sl3():
    L = AdmissibleLevel(2, 5, 3)
    for orbit, ws in enumerate_all(L).items():
        for lam in ws:
            c = classify_weight(L, lam)
            assert c.orbit == orbit
            assert dot_action(c.coset_rep.inverse(), c.base) == lam
            assert c.coset_rep in min_coset_reps(c.parabolic)


def test_t_eta_examples():
    assert t_eta_condition(WeylElt.identity(2), (1, 0), 2)
    assert not t_eta_condition(WeylElt.identity(1), (1,), 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_t_eta_matches_coset_membership(n):
    for q in (2, 3, 4):
        for a in product(range(q), repeat=n):
            if sum(a) > q - 1:
                continue
            sig = ParabolicSet.of(n, *[i + 1 for i, x in enumerate(a) if x == 0])
            reps = set(min_coset_reps(sig))
            for y in enumerate_weyl(n):
                assert t_eta_condition(y, a, q) == (y.inverse() in reps)


def test_casimir_xi_values():
    g = Root(1, 1, 2)
    assert casimir_xi(Weight.of(0), g) == 0
    assert casimir_xi(Weight.of(-2), g) == 0
    assert casimir_xi(Weight.of(F(5, 2)), g) == F(45, 8)


@given(st.fractions(min_value=-20, max_value=20, max_denominator=9))
def test_casimir_symmetry(c):
    g = Root(1, 1, 2)
    assert casimir_xi(Weight.of(c), g) == casimir_xi(Weight.of(-c - 2), g)


def test_json():
    L = AdmissibleLevel(1, 5, 2)
    c = classify_weight(L, omega(1, 1).scale(F(1, 2)))
    assert c.to_json() == {"orbit": [2], "sigma": [], "coset_word": [], "base": ["1/2"]}
