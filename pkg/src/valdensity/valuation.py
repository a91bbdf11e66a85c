"""Valuations and signed valuations on a finite Pervin space.

A valuation is stored by its atom weights; the value on a lattice member is
the sum of the weights of the atoms it contains.  For bounded valuations this
representation is unique (the extension to the generated algebra is unique);
for unbounded ones it is one chosen extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import (
    AxiomViolation,
    NotInLattice,
    NotMorphism,
    SpaceMismatch,
    UnboundedInput,
    UnboundedValuation,
    UnknownElement,
)
from .exreal import INF, ZERO, ExtValue, ext_sum
from .pervin import AlgebraElement, Atom, PervinSpace


class Valuation:
    """A strict, monotone, modular map from the lattice to ``Q+ ∪ {inf}``."""

    __slots__ = ("space", "weights", "_table")

    def __init__(self, space: PervinSpace, weights: Sequence[ExtValue]) -> None:
        if len(weights) != len(space.atoms):
            raise ValueError(f"expected {len(space.atoms)} atom weights, got {len(weights)}")
        self.space = space
        self.weights = tuple(ExtValue(w) for w in weights)
        self._table: dict[int, ExtValue] | None = None

    def __call__(self, mask: int) -> ExtValue:
        """Value on a lattice member (or, by the atom extension, any algebra element)."""
        return ext_sum(w for a, w in zip(self.space.atoms, self.weights) if a.member_mask & mask == a.member_mask)

    @property
    def table(self) -> dict[int, ExtValue]:
        if self._table is None:
            self._table = {u: self(u) for u in self.space.lattice}
        return self._table

    def weight(self, atom: Atom) -> ExtValue:
        return self.weights[atom.index]

    @property
    def total(self) -> ExtValue:
        return self(self.space.full)

    @property
    def is_bounded(self) -> bool:
        return self.total.is_finite

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Valuation):
            return NotImplemented
        return self.space == other.space and self.weights == other.weights

    def __hash__(self) -> int:
        return hash((self.space, self.weights))

    def __repr__(self) -> str:
        body = ", ".join(f"{self.space.label(a.member_mask)}: {w}" for a, w in zip(self.space.atoms, self.weights))
        return f"Valuation({{{body}}})"


class SignedValuation:
    """A strict modular map from the lattice to ``Q``, stored by atom weights."""

    __slots__ = ("space", "weights")

    def __init__(self, space: PervinSpace, weights: Sequence[Fraction]) -> None:
        if len(weights) != len(space.atoms):
            raise ValueError(f"expected {len(space.atoms)} atom weights, got {len(weights)}")
        self.space = space
        self.weights = tuple(Fraction(w) for w in weights)

    def __call__(self, mask: int) -> Fraction:
        return sum(
            (w for a, w in zip(self.space.atoms, self.weights) if a.member_mask & mask == a.member_mask),
            Fraction(0),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedValuation):
            return NotImplemented
        return self.space == other.space and self.weights == other.weights

    def __repr__(self) -> str:
        body = ", ".join(f"{self.space.label(a.member_mask)}: {w}" for a, w in zip(self.space.atoms, self.weights))
        return f"SignedValuation({{{body}}})"


@dataclass(frozen=True)
class SigmaFinitenessWitness:
    chain: tuple[int, ...]


@dataclass(frozen=True)
class NotSigmaFiniteVerdict:
    reason: str

    def __bool__(self) -> bool:
        return False


# ---------------------------------------------------------------- constructors


def from_atom_weights(space: PervinSpace, weights: Mapping[Atom, ExtValue] | Sequence[ExtValue]) -> Valuation:
    if isinstance(weights, Mapping):
        missing = [a for a in space.atoms if a not in weights]
        if missing:
            raise ValueError(f"no weight given for atom {space.label(missing[0].member_mask)}")
        weights = [weights[a] for a in space.atoms]
    return Valuation(space, weights)


def zero(space: PervinSpace) -> Valuation:
    return Valuation(space, [ZERO] * len(space.atoms))


def check_axioms(space: PervinSpace, table: Mapping[int, ExtValue]) -> AxiomViolation | None:
    """Return ``None`` if ``table`` is a valuation, else the first violation.

    Pairs are scanned in canonical (ascending mask) order.
    """
    lat = space.lattice
    for u in lat:
        if u not in table:
            raise NotInLattice(f"table has no value for {space.label(u) or '{}'}")
    if table[0] != ZERO:
        return AxiomViolation("strict", (0,), f"value of the empty set is {table[0]}, not 0")
    for i, u in enumerate(lat):
        for v in lat[i + 1 :]:
            if u & v == u and not table[u] <= table[v]:
                return AxiomViolation("monotone", (u, v), f"{table[u]} > {table[v]} although U ⊆ V")
            if u & v == v and not table[v] <= table[u]:
                return AxiomViolation("monotone", (v, u), f"{table[v]} > {table[u]} although V ⊆ U")
    for i, u in enumerate(lat):
        for v in lat[i + 1 :]:
            if table[u] + table[v] != table[u | v] + table[u & v]:
                return AxiomViolation("modular", (u, v))
    return None


def from_lattice_table(
    space: PervinSpace, table: Mapping[int, ExtValue], *, allow_unbounded: bool = False
) -> Valuation:
    """Recover the atom weights of a valuation given on every lattice member.

    Each atom ``a`` is the crescent ``U_a \\ V_a`` with ``U_a`` the smallest
    member containing it, so its weight is ``table[U_a] - table[V_a]``.  Tables
    with infinite values are rejected unless ``allow_unbounded`` is set; then
    a weight that the table leaves undetermined (``table[V_a] = inf``) is 0.
    """
    table = {u: ExtValue(v) for u, v in table.items()}
    bad = check_axioms(space, table)
    if bad is not None:
        raise bad
    if any(v.is_infinite for v in table.values()) and not allow_unbounded:
        raise UnboundedInput("table has infinite values; the extension to atoms is not unique")
    weights = []
    for a in space.atoms:
        c = space.atom_crescent(a)
        hi, lo = table[c.outer], table[c.inner]
        if hi.is_finite:
            weights.append(ExtValue(hi.fraction - lo.fraction))
        elif lo.is_finite:
            weights.append(INF)
        else:
            weights.append(ZERO)
    val = Valuation(space, weights)
    for u in space.lattice:
        if val(u) != table[u]:
            raise AxiomViolation("modular", (u,), f"no atom weighting reproduces the value at {space.label(u)}")
    return val


def dirac(space: PervinSpace, x: str | int) -> Valuation:
    p = space.index(x) if isinstance(x, str) else x
    if not 0 <= p < space.n_points:
        raise UnknownElement(f"unknown point index {p}")
    target = space.atom_of(p).index
    return Valuation(space, [ExtValue(1) if a.index == target else ZERO for a in space.atoms])


def dirac_combo(space: PervinSpace, terms: Sequence[tuple[ExtValue, str]]) -> Valuation:
    out = zero(space)
    for coef, point in terms:
        out = linear_combo(ExtValue(1), out, ExtValue(coef), dirac(space, point))
    return out


def linear_combo(a: ExtValue, mu: Valuation, b: ExtValue, nu: Valuation) -> Valuation:
    _same_space(mu, nu)
    return Valuation(mu.space, [a * x + b * y for x, y in zip(mu.weights, nu.weights)])


def restrict(nu: Valuation, u0: int) -> Valuation:
    """``U ↦ nu(U ∩ u0)``."""
    sp = nu.space
    if not sp.is_member(u0):
        raise NotInLattice(f"{sp.label(u0) or '{}'} is not a lattice member")
    return Valuation(sp, [w if a.member_mask & u0 else ZERO for a, w in zip(sp.atoms, nu.weights)])


def image(f: Mapping[str, str] | Callable[[str], str], nu: Valuation, target: PervinSpace) -> Valuation:
    """Push ``nu`` forward along ``f``; ``f`` must pull lattice members back to members."""
    src = nu.space
    fn = f.__getitem__ if isinstance(f, Mapping) else f
    try:
        dest = [target.index(fn(x)) for x in src.elements]
    except KeyError as e:
        raise UnknownElement(f"map is undefined at {e.args[0]!r}") from None
    for v in target.lattice:
        pre = 0
        for p, q in enumerate(dest):
            if v >> q & 1:
                pre |= 1 << p
        if not src.is_member(pre):
            raise NotMorphism(v, f"preimage of {target.label(v) or '{}'} is {src.label(pre) or '{}'}, not a member")
    weights = [ZERO] * len(target.atoms)
    for a, w in zip(src.atoms, nu.weights):
        # a morphism sends each source atom into a single target atom
        b = target.atom_of(dest[_lowest(a.member_mask)]).index
        weights[b] = weights[b] + w
    return Valuation(target, weights)


def stochastic_leq(mu: Valuation, nu: Valuation) -> bool:
    _same_space(mu, nu)
    return all(mu(u) <= nu(u) for u in mu.space.lattice)


def sht_extend(nu: Valuation, c: AlgebraElement) -> ExtValue:
    """Value of the unique extension of a bounded valuation on an algebra element,
    computed from its crescent decomposition as ``Σ nu(U_i) - nu(V_i)``."""
    if not nu.is_bounded:
        raise UnboundedValuation("the algebra extension is only unique for bounded valuations")
    total = Fraction(0)
    for cr in c.crescents:
        total += nu(cr.outer).fraction - nu(cr.inner).fraction
    return ExtValue(total)


def signed_from_pair(nu: Valuation, r: Fraction, mu: Valuation) -> SignedValuation:
    """The signed valuation ``nu - r·mu``."""
    _same_space(mu, nu)
    r = Fraction(r)
    if r < 0:
        raise ValueError("r must be non-negative")
    if not (nu.is_bounded and mu.is_bounded):
        raise UnboundedValuation("nu - r·mu needs both valuations bounded")
    return SignedValuation(nu.space, [x.fraction - r * y.fraction for x, y in zip(nu.weights, mu.weights)])


def signed_extend(sigma: SignedValuation, c: AlgebraElement) -> Fraction:
    """``Σ sigma(U_i) - sigma(U_i ∩ V_i)`` over the crescents of ``c``."""
    return sum((sigma(cr.outer) - sigma(cr.outer & cr.inner) for cr in c.crescents), Fraction(0))


def sigma_finite_witness(nu: Valuation, mu: Valuation) -> SigmaFinitenessWitness | NotSigmaFiniteVerdict:
    """On a finite lattice a monotone chain covering the carrier ends at the
    carrier, so joint sigma-finiteness is joint boundedness."""
    _same_space(mu, nu)
    if nu.is_bounded and mu.is_bounded:
        return SigmaFinitenessWitness((nu.space.full,))
    which = "nu" if not nu.is_bounded else "mu"
    return NotSigmaFiniteVerdict(f"{which} has infinite total mass")


def _same_space(mu, nu) -> None:
    if mu.space != nu.space:
        raise SpaceMismatch("valuations live on different spaces")


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1
