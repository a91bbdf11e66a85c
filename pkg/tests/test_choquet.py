from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from valdensity.choquet import (
    LinearFunctional,
    LscFunction,
    as_lsc,
    characteristic,
    check_linear,
    constant,
    darboux_sum,
    gmul,
    gmul_extend,
    gmul_level_value,
    integrate,
    integrate_against_density,
    lsc_check,
    riesz_functional,
    riesz_valuation,
    very_simple_decompose,
    very_simple_function,
)
from valdensity.errors import NotLinear, NotLsc, SpaceMismatch
from valdensity.exreal import INF, ZERO, ExtValue, ext_sum
from valdensity.pervin import powerset_space
from valdensity.valuation import check_axioms, dirac, from_lattice_table, sht_extend, zero

from .strategies import ext_values, lsc_functions, small_fractions, space_and_valuations, spaces, valuations

E = ExtValue


def atom_sum(h, nu):
    """Independent oracle: lsc maps are constant on atoms."""
    sp = nu.space
    total = ZERO
    for a, w in zip(sp.atoms, nu.weights):
        vals = {h(p) for p in range(sp.n_points) if a.member_mask >> p & 1}
        assert len(vals) == 1
        total = total + vals.pop() * w
    return total


def test_lsc_check_examples(sierpinski):
    assert isinstance(lsc_check(sierpinski, {"s0": E(0), "s1": E(1)}), LscFunction)
    bad = lsc_check(sierpinski, {"s0": E(1), "s1": E(0)})
    assert isinstance(bad, NotLsc)
    assert bad.threshold == 0 and bad.level_set == sierpinski.mask_of(["s0"])
    assert isinstance(lsc_check(sierpinski, {"s0": INF, "s1": INF}), LscFunction)
    with pytest.raises(NotLsc):
        as_lsc(sierpinski, [E(1), E(0)])


def test_integrate_examples(sierpinski, mu_two):
    h = as_lsc(sierpinski, {"s0": E(0), "s1": E(2)})
    assert integrate(h, mu_two) == E(2)
    assert integrate(characteristic(sierpinski, sierpinski.full), mu_two) == E(2)
    assert integrate(constant(sierpinski, ZERO), mu_two) == ZERO
    assert integrate(constant(sierpinski, INF), zero(sierpinski)) == ZERO
    assert integrate(constant(sierpinski, INF), mu_two) == INF
    with pytest.raises(SpaceMismatch):
        integrate(h, dirac(powerset_space(["a", "b"]), "a"))


def test_gmul_examples(sierpinski, mu_two):
    g = as_lsc(sierpinski, {"s0": E(0), "s1": E(2)})
    gm = gmul(g, mu_two)
    assert {sierpinski.label(u): str(gm(u)) for u in sierpinski.lattice} == {"": "0", "s1": "2", "s0,s1": "2"}
    assert gmul(constant(sierpinski, E(1)), mu_two) == mu_two
    assert gmul(constant(sierpinski, ZERO), mu_two) == zero(sierpinski)
    c = sierpinski.algebra_decompose(sierpinski.mask_of(["s0"]))
    assert gmul_extend(g, mu_two, c) == ZERO
    h = as_lsc(sierpinski, {"s0": E(0), "s1": E(3)})
    assert integrate_against_density(h, g, mu_two) == (E(6), E(6))


def test_very_simple_example(sierpinski):
    h = as_lsc(sierpinski, {"s0": E(0), "s1": E("3/4")})
    eps, sets = very_simple_decompose(h, 2)
    assert eps == Fraction(1, 4)
    assert sets == [sierpinski.mask_of(["s1"])] * 3
    assert very_simple_function(h, 2) == h


def test_very_simple_characteristic(sierpinski):
    u = sierpinski.mask_of(["s1"])
    chi = characteristic(sierpinski, u)
    assert very_simple_function(chi, 0) == constant(sierpinski, ZERO)
    for n in (1, 2, 3):
        assert very_simple_function(chi, n) == chi


def test_check_linear_rejects_nonlinear(sierpinski, mu_two):
    h = characteristic(sierpinski, sierpinski.full)
    k = characteristic(sierpinski, sierpinski.mask_of(["s1"]))
    check_linear(riesz_functional(mu_two), [(h, k, E(2), E(3))])
    squared = LinearFunctional(sierpinski, lambda f: integrate(f, mu_two) * integrate(f, mu_two))
    with pytest.raises(NotLinear):
        check_linear(squared, [(h, k, E(2), E(3))])


# ---------------------------------------------------------------- properties


@given(space_and_valuations(count=1, bounded=False), st.data())
def test_integral_matches_atom_sum(case, data):
    sp, nu = case
    h = data.draw(lsc_functions(sp, allow_inf=True))
    assert integrate(h, nu) == atom_sum(h, nu)


@given(space_and_valuations(count=1, bounded=False), st.data())
def test_lsc_check_accepts_exactly_monotone_maps(case, data):
    sp, _ = case
    vals = data.draw(st.lists(ext_values, min_size=sp.n_points, max_size=sp.n_points))
    monotone = all(
        vals[p] <= vals[q] for p in range(sp.n_points) for q in range(sp.n_points) if sp.specialization_leq(p, q)
    )
    assert isinstance(lsc_check(sp, vals), LscFunction) == monotone


@given(space_and_valuations(count=1, bounded=False), st.data())
def test_integral_linear_and_monotone(case, data):
    sp, nu = case
    h = data.draw(lsc_functions(sp, allow_inf=True))
    k = data.draw(lsc_functions(sp, allow_inf=True))
    a, b = data.draw(ext_values), data.draw(ext_values)
    assert integrate(h.scale(a) + k.scale(b), nu) == a * integrate(h, nu) + b * integrate(k, nu)
    assert integrate(h, nu) <= integrate(h + k, nu)
    for u in sp.lattice:
        assert integrate(characteristic(sp, u), nu) == nu(u)


@given(space_and_valuations(count=2, bounded=False), st.data())
def test_integral_linear_in_valuation(case, data):
    from valdensity.valuation import linear_combo

    sp, mu, nu = case
    h = data.draw(lsc_functions(sp, allow_inf=True))
    a, b = data.draw(ext_values), data.draw(ext_values)
    assert integrate(h, linear_combo(a, mu, b, nu)) == a * integrate(h, mu) + b * integrate(h, nu)


@given(space_and_valuations(count=1, bounded=False), st.data())
def test_riesz_round_trip(case, data):
    sp, nu = case
    back = riesz_valuation(riesz_functional(nu))
    assert back.table == nu.table
    F = riesz_functional(back)
    for _ in range(5):
        h = data.draw(lsc_functions(sp, allow_inf=True))
        assert F(h) == integrate(h, nu)


@given(space_and_valuations(count=1), st.data())
def test_products_and_sums_stay_lsc(case, data):
    sp, _ = case
    h = data.draw(lsc_functions(sp, allow_inf=True))
    g = data.draw(lsc_functions(sp, allow_inf=True))
    assert isinstance(lsc_check(sp, (h * g).values), LscFunction)
    assert isinstance(lsc_check(sp, (h + g).values), LscFunction)


@given(space_and_valuations(count=1, bounded=False), st.data())
def test_density_valuation(case, data):
    sp, mu = case
    g = data.draw(lsc_functions(sp, allow_inf=True))
    gm = gmul(g, mu)
    assert check_axioms(sp, gm.table) is None
    for u in sp.lattice:
        assert gm(u) == gmul_level_value(g, mu, u) == integrate(characteristic(sp, u) * g, mu)
    h = data.draw(lsc_functions(sp, allow_inf=True))
    lhs, rhs = integrate_against_density(h, g, mu)
    assert lhs == rhs == atom_sum(h * g, mu)


@given(space_and_valuations(count=1), st.data())
def test_gmul_extend_matches_sht(case, data):
    sp, mu = case
    g = data.draw(lsc_functions(sp))
    gm = gmul(g, mu)
    for c in sp.crescents():
        el = sp.algebra_decompose(c.mask)
        assert gmul_extend(g, mu, el) == sht_extend(gm, el)


@given(space_and_valuations(count=1, bounded=False), st.data())
def test_darboux_sums_increase_to_integral(case, data):
    sp, nu = case
    h = data.draw(lsc_functions(sp, dyadic=True, max_terms=2))
    prev = ZERO
    exact = integrate(h, nu)
    top = max((v.fraction for v in h.values), default=Fraction(0))
    n_exact = max(2, int(top) + 1)
    for n in range(0, n_exact + 1):
        s = darboux_sum(h, nu, n)
        assert prev <= s <= exact
        prev = s
    # quarter-integer values below n_exact are all on the grid
    assert prev == exact


@given(space_and_valuations(count=1), st.data())
def test_very_simple_approximants(case, data):
    sp, _ = case
    h = data.draw(lsc_functions(sp))
    prev = constant(sp, ZERO)
    for n in range(0, 5):
        eps, sets = very_simple_decompose(h, n)
        assert all(sp.is_member(s) for s in sets)
        f = very_simple_function(h, n)
        assert prev <= f <= h
        assert isinstance(lsc_check(sp, f.values), LscFunction)
        prev = f
