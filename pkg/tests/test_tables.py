from fractions import Fraction
from itertools import product

import pytest
import sympy

from agt.errors import ParameterConstraintViolated
from agt.gtcore import Window
from agt.rootsys import Weight, pairing, rho, simple_root
from agt.tables import (
    ORBITS,
    ROWS,
    all_table_modules,
    compare_table,
    default_parameters,
    derive_inequalities,
    parse_printed,
    printed_inequalities,
    render_markdown,
    table_base,
    table_diagram,
    table_sl4,
    v_from_lambda,
)

F = Fraction


@pytest.mark.parametrize("orbit", ["principal", "subregular", "rectangular"])
@pytest.mark.parametrize("row", ROWS)
def test_first_three_tables_match(orbit, row):
    cmp = compare_table(orbit, row)
    assert cmp.matches and cmp.only_derived() == [] and cmp.only_printed() == []


def test_table_one_set_exactly():
    expected = parse_printed(["l <= m <= r <= 0", "s <= 0", "t <= 0", "s <= n"])
    assert derive_inequalities("principal", "M") == expected


@pytest.mark.parametrize("row", ROWS)
def test_minimal_table_diff(row):
    cmp = compare_table("minimal", row)
    assert not cmp.matches
    assert cmp.only_derived() == ["n <= lambda2 + t"]
    assert cmp.only_printed() == ["n <= -lambda2 + t"]


def _shift_of(orbit, z):
    from agt.gtcore import positions
    from agt.tables import _shift_names

    names = _shift_names(orbit)
    return {names[p].name: k for p, k in zip(positions(3), z)}


def _linear(atom):
    """``E`` as ({name: coefficient}, constant) with Fraction values."""
    coeffs, const = {}, F(0)
    for term, c in atom.as_coefficients_dict().items():
        c = F(int(sympy.numer(c)), int(sympy.denom(c)))
        if term == 1:
            const += c
        else:
            coeffs[term.name] = c
    return coeffs, const


def _satisfies(linear_atoms, values):
    return all(const + sum(c * values[k] for k, c in coeffs.items()) >= 0
               for coeffs, const in linear_atoms)


@pytest.mark.parametrize("orbit", ORBITS)
def test_derived_sets_cut_out_the_module_basis(orbit):
    lam, _ = default_parameters(orbit)[0]
    m = table_sl4(orbit, "M", lam)
    params = {sympy.Symbol(f"lambda{i}"): sympy.Rational(c.numerator, c.denominator)
              for i, c in enumerate(lam.coeffs, start=1)}
    derived = [_linear(sympy.expand(a.subs(params))) for a in derive_inequalities(orbit, "M")]
    printed = [_linear(sympy.expand(a.subs(params))) for a in printed_inequalities(orbit, "M")]
    members = set(m.enumerate_basis(Window.radius(3, 2)))
    by_derived, by_printed = set(), set()
    for z in product(range(-2, 3), repeat=6):
        vals = _shift_of(orbit, z)
        if _satisfies(derived, vals):
            by_derived.add(z)
        if _satisfies(printed, vals):
            by_printed.add(z)
    assert by_derived == members
    assert (by_printed == members) == (orbit != "minimal")


def test_v_from_lambda_pairings():
    lam = Weight.of(F(-5, 4), F(-5, 4), F(-5, 4))
    v1, v2, v3, v4 = v_from_lambda(lam)
    c = [pairing(lam + rho(3), simple_root(3, i)) for i in (1, 2, 3)]
    assert (v1 - v3, v3 - v2, v2 - v4) == tuple(c)
    assert v1 + v2 + v3 + v4 == -6


def test_default_parameters_are_admissible_shapes():
    for orbit in ORBITS:
        pairs = default_parameters(orbit)
        assert len(pairs) == 2
        for lam, nu in pairs:
            assert nu.denominator != 1
            for row in ROWS:
                table_sl4(orbit, row, lam, nu)


def test_base_layouts():
    lam = Weight.of(F(-7, 2), 1, 1)
    v1, v2, v3, v4 = v_from_lambda(lam)
    t = table_base("minimal", lam)
    assert t.row(4) == (v1, v3, v2, v4)
    assert t.row(3) == (v1, v3, v2)
    assert t.row(2) == (v1, v2 + 1)
    assert t.row(1) == (v1,)


def test_rows_of_a_diagram():
    m, d, t = (table_diagram("principal", r) for r in ("M", "D_f", "T_f"))
    assert len(m) == 6 and len(d) == 5 and len(t) == 6
    assert table_diagram("principal", "D_nu") == d


def test_a_weight_that_breaks_the_diagram():
    with pytest.raises(ParameterConstraintViolated):
        table_sl4("principal", "M", Weight.of(0, 0, 0))


def test_all_table_modules_are_sixteen():
    mods = all_table_modules(1)
    assert len(mods) == 16 and len({m.label for m in mods}) == 16


def test_markdown_minimal_has_a_diff_section():
    text = render_markdown("minimal")
    assert "## Diff against the printed sets" in text
    assert "- M: derived only: n <= λ2 + t; printed only: n <= -λ2 + t" in text
    assert text == render_markdown("minimal")


def test_markdown_principal_has_no_diff():
    text = render_markdown("principal")
    assert "No differences." in text
    assert "| M | T(v) |" in text


def test_unknown_names():
    with pytest.raises(ValueError):
        table_diagram("regular", "M")
    with pytest.raises(ValueError):
        table_diagram("principal", "X")
