import json
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from agt.errors import HypothesisViolated, NotInBasis
from agt.gtcore import (
    Arrow,
    GTModule,
    ModuleVector,
    RelationSet,
    Tableau,
    Window,
    build_hw_tableau,
    builtin_module,
    chain_relation_set,
    chevalley,
    finite_module,
    gt_act,
    lemma_borel_roots,
    lemma_expected_eigenvalues,
    lemma_hypotheses,
    lemma_module,
    maximal_relation_set,
    parse_operator,
    positions,
    root_vector,
    verma,
)
from agt.rootsys import Root, Weight, omega
from agt.weylgrp import WbarElt

from strategies import rationals

F = Fraction


# --- an independent transcription of the formulas, acting on plain nested lists ---------

def oracle_apply(kind, k, rows):
    """Return {rows_tuple: coeff} for one generator on one tableau (rows[k-1] = row k)."""
    row = rows[k - 1]
    if kind == "h":
        lower = sum(rows[k - 2]) if k > 1 else 0
        return {_freeze(rows): 2 * sum(row) - lower - sum(rows[k]) - 1}
    out = {}
    for i in range(k):
        den = F(1)
        for j in range(k):
            if j != i:
                den *= row[i] - row[j]
        if den == 0:
            continue
        if kind == "e":
            num = -_prod(row[i] - y for y in rows[k])
            step = 1
        else:
            num = _prod(row[i] - y for y in rows[k - 2]) if k > 1 else F(1)
            step = -1
        new = [list(r) for r in rows]
        new[k - 1][i] += step
        if num:
            out[_freeze(new)] = out.get(_freeze(new), 0) + num / den
    return out


def _prod(xs):
    out = F(1)
    for x in xs:
        out *= x
    return out


def _freeze(rows):
    return tuple(tuple(r) for r in rows)


def oracle_word(word, rows):
    """Apply generators right to left to a formal sum of tableaux."""
    vec = {_freeze(rows): F(1)}
    for kind, k in reversed(word):
        nxt = {}
        for t, c in vec.items():
            for t2, c2 in oracle_apply(kind, k, t).items():
                nxt[t2] = nxt.get(t2, 0) + c * c2
        vec = {t: c for t, c in nxt.items() if c}
    return vec


def combine(*pairs):
    out = {}
    for coeff, vec in pairs:
        for t, c in vec.items():
            out[t] = out.get(t, 0) + coeff * c
    return {t: c for t, c in out.items() if c}


@st.composite
def generic_tableaux(draw, n):
    rows = [tuple(draw(rationals) + F(1, 997 + 7 * k + i) for i in range(k)) for k in range(1, n + 2)]
    t = Tableau(tuple(rows))
    assume(not t.has_row_collision())
    return t


# --- raw formulas ------------------------------------------------------------------------


def test_sl2_highest_weight_tableau():
    c = F(7, 3)
    t = Tableau.from_top_down([[c, -1], [c]])
    assert gt_act("e", 1, t) == {}
    assert gt_act("h", 1, t) == {t: c}
    assert gt_act("f", 1, t) == {t.shifted_at(1, 1, -1): 1}


def test_sl2_raising_below_the_top():
    c = F(7, 3)
    t = Tableau.from_top_down([[c, -1], [c - 1]])
    assert gt_act("e", 1, t) == {t.shifted_at(1, 1, 1): c}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_formulas_match_transcription(n):
    @given(generic_tableaux(n))
    def run(t):
        for k in range(1, n + 1):
            for kind in "efh":
                got = {tt.rows: c for tt, c in gt_act(kind, k, t).items()}
                assert got == oracle_apply(kind, k, [list(r) for r in t.rows])

    run()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lie_relations_on_generic_tableaux(n):
    """The formulas define an sl_{n+1} action on the span of all generic tableaux."""

    @given(generic_tableaux(n))
    def run(t):
        rows = [list(r) for r in t.rows]
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                ef = combine((1, oracle_word([("e", i), ("f", j)], rows)),
                             (-1, oracle_word([("f", j), ("e", i)], rows)))
                assert ef == (oracle_word([("h", i)], rows) if i == j else {})
            if i < n:
                j = i + 1
                for x in "ef":
                    serre = combine((1, oracle_word([(x, i), (x, i), (x, j)], rows)),
                                    (-2, oracle_word([(x, i), (x, j), (x, i)], rows)),
                                    (1, oracle_word([(x, j), (x, i), (x, i)], rows)))
                    assert serre == {}

    run()


# --- relation sets and bases ----------------------------------------------------------------


def test_positions_order():
    assert positions(3) == [(3, 1), (3, 2), (3, 3), (2, 1), (2, 2), (1, 1)]


def test_generic_tableau_has_no_relations():
    t = Tableau.from_top_down([[F(1, 3), F(1, 5), F(1, 7)], [F(2, 11), F(3, 13)], [F(5, 17)]])
    assert len(maximal_relation_set(t)) == 0


def test_arrow_direction_validation():
    with pytest.raises(ValueError):
        Arrow((3, 1), (1, 1))


def test_finite_sl2_basis():
    m = finite_module(Weight.of(2))
    assert m.enumerate_basis(Window.radius(1, 5)) == [(-2,), (-1,), (0,)]
    assert m.contains(m.zero_shift())


def test_principal_table_basis_matches_inequalities():
    from agt.tables import table_sl4

    m = table_sl4("principal", "M")
    window = Window.radius(3, 2)
    expected = {z for z in product(range(-2, 3), repeat=6)
                if _principal_set(*z)}
    assert set(m.enumerate_basis(window)) == expected


def _principal_set(r, s, t, m, n, l):
    return l <= m <= r <= 0 and s <= 0 and t <= 0 and s <= n


def test_maximal_relations_of_principal_seed_equal_the_diagram():
    from agt.tables import table_base, table_diagram

    for lam in (Weight.of(F(-5, 4), F(-5, 4), F(-5, 4)), Weight.of(F(-2, 5), F(-7, 5), F(-2, 5))):
        assert maximal_relation_set(table_base("principal", lam)) == table_diagram("principal", "M")


def test_minimal_seed_has_two_implied_extra_arrows():
    from agt.tables import LETTERS, implied_by, table_base, table_diagram

    t = table_base("minimal", Weight.of(F(-7, 2), 1, 1))
    printed = table_diagram("minimal", "M")
    extra = maximal_relation_set(t).arrows - printed.arrows
    assert len(printed) == 9
    assert extra == {Arrow(LETTERS["B"], LETTERS["G"]), Arrow(LETTERS["F"], LETTERS["D"])}
    assert all(implied_by(t, printed, a) for a in extra)


def test_seed_must_satisfy_relations():
    t = Tableau.from_top_down([[F(1, 2), F(-1, 2)], [F(3, 2)]])
    with pytest.raises(HypothesisViolated):
        GTModule(t, RelationSet.of([((2, 1), (1, 1))]))


def test_row_collision_rejected():
    t = Tableau.from_top_down([[1, 1], [0]])
    with pytest.raises(HypothesisViolated):
        GTModule(t, RelationSet.empty())


# --- module actions ------------------------------------------------------------------------


def test_h_acts_diagonally_with_weight():
    lam = Weight.of(F(1, 2), F(-2, 3))
    m = verma(lam)
    for z in m.enumerate_basis(Window.radius(2, 1)):
        x = ModuleVector.basis(z)
        for k in (1, 2):
            assert m.act([f"h{k}"], x) == x.scale(m.weight_of(z).coeffs[k - 1])


def test_commutator_e_f_is_h_on_members():
    m = verma(Weight.of(F(1, 3), F(2, 5)))
    for z in m.enumerate_basis(Window.radius(2, 2)):
        x = ModuleVector.basis(z)
        for i in (1, 2):
            lhs = m.act(["e%d" % i, "f%d" % i], x) - m.act(["f%d" % i, "e%d" % i], x)
            assert lhs == m.act([f"h{i}"], x)


def test_root_vector_is_nested_bracket():
    m = verma(Weight.of(F(1, 3), F(2, 5)))
    for z in m.enumerate_basis(Window.radius(2, 1)):
        x = ModuleVector.basis(z)
        bracket = m.act(["e1", "e2"], x) - m.act(["e2", "e1"], x)
        assert m.act(["E13"], x) == bracket


def test_parse_operator_forms():
    assert parse_operator(2, "E_1_3") == parse_operator(2, "E13") == root_vector(Root(2, 1, 3))
    assert parse_operator(2, "f2") == chevalley(2, "f", 2)
    with pytest.raises(ValueError):
        parse_operator(2, "E11")


def test_identity_frame_twist_is_trivial():
    lam = Weight.of(F(1, 3), F(2, 5))
    plain = verma(lam)
    framed = GTModule(plain.base, plain.relations, WbarElt.from_word(2, ()), "framed")
    for z in plain.enumerate_basis(Window.radius(2, 1)):
        x = ModuleVector.basis(z)
        for op in ("e1", "f2", "E13", "h1"):
            assert framed.act([op], x) == plain.act([op], x, twisted=False)


def test_twist_by_s2_turns_e2_into_minus_f2():
    from agt.tables import table_sl4

    m = table_sl4("principal", "M")
    for z in m.enumerate_basis(Window.radius(3, 1))[:20]:
        x = ModuleVector.basis(z)
        assert m.act(["e2"], x) == m.act(["f2"], x, twisted=False).scale(-1)


def test_gamma_characters():
    lam = Weight.of(F(1, 3), F(2, 5))
    m = verma(lam)
    members = m.enumerate_basis(Window.radius(2, 2))
    chars = {m.gamma_character(z) for z in members}
    assert len(chars) == len(members)
    swapped = Tableau(tuple(tuple(reversed(r)) for r in m.base.rows))
    assert tuple(tuple(sorted(r)) for r in swapped.rows) == m.gamma_character(m.zero_shift()).rows
    with pytest.raises(NotInBasis):
        m.gamma_character((1, 0, 0))


@pytest.mark.parametrize("lam", [Weight.of(F(1, 2)), Weight.of(F(1, 3), -2), Weight.of(2, F(-1, 4), 1)])
def test_weight_of_highest_tableau(lam):
    assert verma(lam).weight_of(verma(lam).zero_shift()) == lam


def test_weight_additivity():
    m = verma(Weight.of(F(1, 3), F(2, 5)))
    alphas = [Weight.of(2, -1), Weight.of(-1, 2)]
    for z in m.enumerate_basis(Window.radius(2, 1)):
        for i in (1, 2):
            y = m.act([f"f{i}"], ModuleVector.basis(z))
            for zz in y.terms:
                assert m.weight_of(zz) == m.weight_of(z) - alphas[i - 1]


# --- highest weight builders -----------------------------------------------------------------


def test_standard_builder_sl2():
    c = F(5, 7)
    t, rel = build_hw_tableau(Weight.of(c))
    assert t == Tableau.from_top_down([[c, -1], [c]])
    assert rel == RelationSet.of([((2, 1), (1, 1))])


def test_principal_base_layout():
    from agt.tables import table_base, v_from_lambda

    lam = Weight.of(F(-5, 4), F(-5, 4), F(-5, 4))
    v1, v2, v3, v4 = v_from_lambda(lam)
    t = table_base("principal", lam)
    assert t.row(4) == (v1, v2, v3, v4)
    assert t.row(3) == (v1, v2, v3)
    assert t.row(2) == (v1, v2 + 1)
    assert t.row(1) == (v1,)


@pytest.mark.parametrize("r", [2, 3])
def test_lemma_tableau_first_eigenvalue(r):
    from agt.admissible import AdmissibleLevel, enumerate_lambda
    from agt.weylgrp import ParabolicSet

    L = AdmissibleLevel(3, 7, 3)
    sig = ParabolicSet.of(3, *[i for i in (1, 2, 3) if i != r])
    lam = next(w for w in enumerate_lambda(L, sig) if lemma_hypotheses(w, r))
    m = lemma_module(lam, r)
    x = ModuleVector.basis(m.zero_shift())
    (h_op, value), *_ = lemma_expected_eigenvalues(lam, r)
    assert m.apply_operator(h_op, x, twisted=False) == x.scale(value)
    assert value == lam.coeffs[r - 1]


def test_lemma_rejects_integral_pairing():
    with pytest.raises(HypothesisViolated):
        lemma_module(Weight.of(1, 1, 1), 2)


def test_lemma_borel_size():
    assert lemma_borel_roots(3, 2) == [Root(3, 1, 2), Root(3, 2, 4), Root(3, 3, 1)]
    assert lemma_borel_roots(3, 3) == [Root(3, 1, 2), Root(3, 3, 4), Root(3, 4, 1)]


# --- built-ins and serialization --------------------------------------------------------------


def test_verma_sl2_chain():
    m = verma(Weight.of(F(1, 2)), "chain")
    assert m.relations == chain_relation_set(1)
    assert m.enumerate_basis(Window.radius(1, 3)) == [(-3,), (-2,), (-1,), (0,)]


def test_builtin_dispatch():
    lam = Weight.of(F(1, 2))
    assert builtin_module("verma", lam=lam).base == verma(lam).base
    assert builtin_module("finite", lam=omega(2, 1)).label.startswith("finite")
    with pytest.raises(ValueError):
        builtin_module("nonsense")


def test_json_round_trip():
    from agt.tables import table_sl4

    m = table_sl4("minimal", "D_nu")
    data = json.loads(json.dumps(m.to_json()))
    back = GTModule.from_json(data)
    assert back.base == m.base and back.relations == m.relations
    assert back.frame.word == m.frame.word and back.label == m.label


def test_render_is_a_pyramid():
    text = Tableau.from_top_down([[F(1, 2), -1], [F(1, 2)]]).render()
    lines = text.splitlines()
    assert len(lines) == 2 and "1/2" in lines[1]
