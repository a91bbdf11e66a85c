import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from valdensity.errors import (
    AxiomViolation,
    NotInLattice,
    NotMorphism,
    SpaceMismatch,
    UnboundedInput,
    UnboundedValuation,
    UnknownElement,
)
from valdensity.exreal import INF, ZERO, ExtValue
from valdensity.pervin import close_lattice, powerset_space
from valdensity.valuation import (
    SigmaFinitenessWitness,
    Valuation,
    check_axioms,
    dirac,
    from_atom_weights,
    from_lattice_table,
    image,
    linear_combo,
    restrict,
    sht_extend,
    sigma_finite_witness,
    signed_extend,
    signed_from_pair,
    stochastic_leq,
    zero,
)

from .strategies import small_fractions, space_and_valuations, spaces, valuations

E = ExtValue


def table_of(sp, pairs):
    return {sp.mask_of(k): E(v) for k, v in pairs}


def by_label(v):
    return {v.space.label(u): str(x) for u, x in v.table.items()}


def test_from_atom_weights_examples(sierpinski):
    a0, a1 = sierpinski.atoms
    assert by_label(from_atom_weights(sierpinski, {a0: E(1), a1: E(1)})) == {"": "0", "s1": "1", "s0,s1": "2"}
    assert from_atom_weights(sierpinski, {a0: ZERO, a1: ZERO}) == zero(sierpinski)
    assert by_label(from_atom_weights(sierpinski, {a0: INF, a1: E(1)})) == {"": "0", "s1": "1", "s0,s1": "inf"}


def test_from_lattice_table_examples(sierpinski):
    v = from_lattice_table(sierpinski, table_of(sierpinski, [([], 0), (["s1"], 0), (["s0", "s1"], 1)]))
    assert v.weights == (E(1), E(0))
    assert from_lattice_table(sierpinski, table_of(sierpinski, [([], 0), (["s1"], 0), (["s0", "s1"], 0)])) == zero(
        sierpinski
    )
    with pytest.raises(AxiomViolation) as e:
        from_lattice_table(sierpinski, table_of(sierpinski, [([], 0), (["s1"], 2), (["s0", "s1"], 1)]))
    assert e.value.kind == "monotone"
    assert e.value.witness == (sierpinski.mask_of(["s1"]), sierpinski.full)


def test_from_lattice_table_rejects_infinite(sierpinski):
    with pytest.raises(UnboundedInput):
        from_lattice_table(sierpinski, table_of(sierpinski, [([], 0), (["s1"], 1), (["s0", "s1"], "inf")]))


def test_check_axioms_examples(sierpinski):
    assert check_axioms(sierpinski, table_of(sierpinski, [([], 0), (["s1"], 1), (["s0", "s1"], 1)])) is None
    bad = check_axioms(sierpinski, table_of(sierpinski, [([], 1), (["s1"], 1), (["s0", "s1"], 1)]))
    assert bad.kind == "strict"
    ps = powerset_space(["a", "b"])
    bad = check_axioms(ps, {0: E(0), 1: E(1), 2: E(1), 3: E(1)})
    assert bad.kind == "modular" and bad.witness == (1, 2)


def test_dirac_examples(sierpinski):
    assert by_label(dirac(sierpinski, "s1")) == {"": "0", "s1": "1", "s0,s1": "1"}
    ps = powerset_space(["a", "b"])
    assert dirac(ps, "a").weights == (E(1), E(0))
    assert dirac(sierpinski, "s0")(0) == ZERO
    with pytest.raises(UnknownElement):
        dirac(sierpinski, "zz")


def test_linear_combo_halfpow_truncation():
    sp = close_lattice([["x1"], ["x2"], ["x3"], ["z", "x3"]], ["z", "x1", "x2", "x3"])
    v = dirac(sp, "z")
    for n in (1, 2, 3):
        v = linear_combo(E(1), v, E(Fraction(1, 2**n)), dirac(sp, f"x{n}"))
    got = {sp.label(a.member_mask): w for a, w in zip(sp.atoms, v.weights)}
    assert got == {"z": E(1), "x1": E("1/2"), "x2": E("1/4"), "x3": E("1/8")}


def test_linear_combo_trivial(sierpinski, mu_two):
    other = dirac(sierpinski, "s1")
    assert linear_combo(ZERO, mu_two, ZERO, other) == zero(sierpinski)
    assert linear_combo(E(1), mu_two, ZERO, other) == mu_two
    with pytest.raises(SpaceMismatch):
        linear_combo(E(1), mu_two, E(1), dirac(powerset_space(["a"]), "a"))


def test_restrict_examples(sierpinski, mu_two):
    assert restrict(mu_two, sierpinski.full) == mu_two
    assert restrict(mu_two, 0) == zero(sierpinski)
    assert by_label(restrict(mu_two, sierpinski.mask_of(["s1"]))) == {"": "0", "s1": "1", "s0,s1": "1"}
    with pytest.raises(NotInLattice):
        restrict(mu_two, sierpinski.mask_of(["s0"]))


def test_image_examples(sierpinski, mu_two):
    assert image({"s0": "s0", "s1": "s1"}, mu_two, sierpinski) == mu_two
    point = close_lattice([], ["*"])
    assert image(lambda x: "*", mu_two, point).total == E(2)
    with pytest.raises(NotMorphism) as e:
        image({"s0": "s1", "s1": "s0"}, mu_two, sierpinski)
    assert e.value.target_set == sierpinski.mask_of(["s1"])


def test_stochastic_order_examples(sierpinski, mu_two):
    lo = from_lattice_table(sierpinski, table_of(sierpinski, [([], 0), (["s1"], 0), (["s0", "s1"], 1)]))
    hi = dirac(sierpinski, "s1")
    assert stochastic_leq(mu_two, mu_two)
    assert stochastic_leq(zero(sierpinski), mu_two)
    assert stochastic_leq(lo, hi) and not stochastic_leq(hi, lo)


def test_sht_extend_examples(sierpinski):
    nu = from_lattice_table(sierpinski, table_of(sierpinski, [([], 0), (["s1"], 0), (["s0", "s1"], 1)]))
    assert sht_extend(nu, sierpinski.algebra_decompose(sierpinski.mask_of(["s0"]))) == E(1)
    assert sht_extend(nu, sierpinski.algebra_decompose(0)) == ZERO
    assert sht_extend(nu, sierpinski.algebra_decompose(sierpinski.full)) == nu.total
    with pytest.raises(UnboundedValuation):
        sht_extend(Valuation(sierpinski, [INF, ZERO]), sierpinski.algebra_decompose(1))


def test_signed_examples(sierpinski, mu_two):
    nu = from_lattice_table(sierpinski, table_of(sierpinski, [([], 0), (["s1"], 0), (["s0", "s1"], 1)]))
    sig = signed_from_pair(nu, Fraction(1, 2), mu_two)
    assert sig(sierpinski.mask_of(["s1"])) == Fraction(-1, 2)
    assert sig(sierpinski.full) == 0
    assert sig.weights == (Fraction(1, 2), Fraction(-1, 2))
    assert signed_from_pair(nu, Fraction(0), mu_two).weights == (1, 0)
    assert signed_from_pair(mu_two, Fraction(1), mu_two).weights == (0, 0)
    s0 = sierpinski.algebra_decompose(sierpinski.mask_of(["s0"]))
    assert signed_extend(sig, s0) == Fraction(1, 2)
    assert signed_extend(sig, sierpinski.algebra_decompose(0)) == 0
    assert signed_extend(sig, sierpinski.algebra_decompose(sierpinski.full)) == sig(sierpinski.full)


def test_sigma_finiteness_examples(sierpinski, mu_two):
    assert sigma_finite_witness(mu_two, mu_two) == SigmaFinitenessWitness((sierpinski.full,))
    assert not sigma_finite_witness(Valuation(sierpinski, [INF, ZERO]), mu_two)
    z = zero(sierpinski)
    assert sigma_finite_witness(z, z).chain == (sierpinski.full,)


# ---------------------------------------------------------------- properties


@given(space_and_valuations(count=1, bounded=False))
def test_constructed_valuations_satisfy_axioms(case):
    sp, v = case
    assert check_axioms(sp, v.table) is None
    for u, w in itertools.combinations(sp.lattice, 2):
        if u & w == u:
            assert v(u) <= v(w)
        assert v(u) + v(w) == v(u | w) + v(u & w)


@given(space_and_valuations(count=1))
def test_lattice_table_round_trip(case):
    sp, v = case
    assert from_lattice_table(sp, v.table) == v


@given(space_and_valuations(count=1, bounded=False))
def test_unbounded_table_recovery_reproduces_table(case):
    sp, v = case
    back = from_lattice_table(sp, v.table, allow_unbounded=True)
    assert back.table == v.table


@given(space_and_valuations(count=1), st.data())
def test_sht_extend_additive_and_agrees_on_lattice(case, data):
    sp, v = case
    for u in sp.lattice:
        assert sht_extend(v, sp.algebra_decompose(u)) == v(u)
    atoms = [a.member_mask for a in sp.atoms]
    pick = data.draw(st.lists(st.booleans(), min_size=len(atoms), max_size=len(atoms)))
    left = sum(m for m, p in zip(atoms, pick) if p)
    right = sum(m for m, p in zip(atoms, pick) if not p)
    total = sht_extend(v, sp.algebra_decompose(left)) + sht_extend(v, sp.algebra_decompose(right))
    assert total == v.total
    # two decompositions of the same element give the same value
    assert sht_extend(v, sp.algebra_decompose(left)) == sht_extend(v, sp.atom_decompose(left))


@given(space_and_valuations(count=2), small_fractions)
def test_signed_extension_formulas(case, r):
    sp, nu, mu = case
    sig = signed_from_pair(nu, r, mu)
    for u, v in itertools.product(sp.lattice, repeat=2):
        c = u & ~v
        atom_sum = sum((w for a, w in zip(sp.atoms, sig.weights) if a.member_mask & c == a.member_mask), Fraction(0))
        assert sig(u) - sig(u & v) == atom_sum == sig(u | v) - sig(v)
        if sp.in_algebra(c):
            assert signed_extend(sig, sp.algebra_decompose(c)) == atom_sum == signed_extend(sig, sp.atom_decompose(c))


@given(space_and_valuations(count=1, bounded=False), st.data())
def test_restrict_is_valuation(case, data):
    sp, v = case
    u0 = data.draw(st.sampled_from(sp.lattice))
    r = restrict(v, u0)
    assert check_axioms(sp, r.table) is None
    assert r.total == v(u0)
    assert r.is_bounded == v(u0).is_finite
    for u in sp.lattice:
        assert r(u) == v(u & u0)


@given(space_and_valuations(count=2, bounded=False), small_fractions, small_fractions)
def test_linear_combo_pointwise(case, a, b):
    sp, mu, nu = case
    combo = linear_combo(E(a), mu, E(b), nu)
    for u in sp.lattice:
        assert combo(u) == E(a) * mu(u) + E(b) * nu(u)


@given(spaces(max_points=4), st.data())
def test_image_along_morphisms(sp, data):
    v = data.draw(valuations(sp, bounded=False))
    target = data.draw(spaces(max_points=3))
    f = {x: data.draw(st.sampled_from(target.elements)) for x in sp.elements}
    try:
        img = image(f, v, target)
    except NotMorphism as e:
        pre = sp.mask_of([x for x in sp.elements if target.mask_of([f[x]]) & e.target_set])
        assert not sp.is_member(pre)
        return
    assert check_axioms(target, img.table) is None
    for t in target.lattice:
        pre = sp.mask_of([x for x in sp.elements if target.mask_of([f[x]]) & t])
        assert img(t) == v(pre)
