"""Lower semicontinuous functions, the Choquet integral and densities ``g·mu``.

On a finite space the integrand ``t ↦ nu(h⁻¹(]t, inf]))`` is a right-continuous
step function, so the improper Riemann integral is a finite telescoping sum
over the distinct values of ``h``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import NotLinear, NotLsc, SpaceMismatch, UnboundedValuation
from .exreal import INF, ONE, ZERO, ExtValue, ext_sum
from .pervin import AlgebraElement, PervinSpace
from .valuation import Valuation, from_lattice_table


class LscFunction:
    """A map ``X → Q+ ∪ {inf}`` whose strict upper level sets are lattice members."""

    __slots__ = ("space", "values")

    def __init__(self, space: PervinSpace, values: Sequence[ExtValue]) -> None:
        self.space = space
        self.values = tuple(values)

    def __call__(self, point: int | str) -> ExtValue:
        if isinstance(point, str):
            point = self.space.index(point)
        return self.values[point]

    def level_set(self, t: Fraction | ExtValue) -> int:
        """``h⁻¹(]t, inf])`` as a bit mask."""
        t = ExtValue(t)
        m = 0
        for p, v in enumerate(self.values):
            if t < v:
                m |= 1 << p
        return m

    def closed_level_set(self, t: Fraction) -> int:
        """``h⁻¹([t, inf])``; a lattice member because the space is finite."""
        t = ExtValue(t)
        m = 0
        for p, v in enumerate(self.values):
            if t <= v:
                m |= 1 << p
        return m

    def infinite_set(self) -> int:
        return sum(1 << p for p, v in enumerate(self.values) if v.is_infinite)

    def steps(self) -> list[Fraction]:
        """Sorted distinct finite values, always starting at 0."""
        return sorted({Fraction(0)} | {v.fraction for v in self.values if v.is_finite})

    @property
    def is_bounded(self) -> bool:
        return all(v.is_finite for v in self.values)

    def on_atom(self, atom) -> ExtValue:
        return self.values[(atom.member_mask & -atom.member_mask).bit_length() - 1]

    def __mul__(self, other: "LscFunction") -> "LscFunction":
        if not isinstance(other, LscFunction):
            return NotImplemented
        _check_same(self.space, other.space)
        return LscFunction(self.space, [a * b for a, b in zip(self.values, other.values)])

    def __add__(self, other: "LscFunction") -> "LscFunction":
        if not isinstance(other, LscFunction):
            return NotImplemented
        _check_same(self.space, other.space)
        return LscFunction(self.space, [a + b for a, b in zip(self.values, other.values)])

    def scale(self, a: ExtValue) -> "LscFunction":
        a = ExtValue(a)
        return LscFunction(self.space, [a * v for v in self.values])

    def __le__(self, other: "LscFunction") -> bool:
        return all(a <= b for a, b in zip(self.values, other.values))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LscFunction):
            return NotImplemented
        return self.space == other.space and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        body = ", ".join(f"{n}: {v}" for n, v in zip(self.space.elements, self.values))
        return f"LscFunction({{{body}}})"


def lsc_check(space: PervinSpace, values: Mapping[str, ExtValue] | Sequence[ExtValue]) -> LscFunction | NotLsc:
    """Accept ``values`` as an element of the lsc function space or report the
    first threshold whose strict upper level set is not a member.

    Level sets are constant between consecutive distinct values, so only one
    threshold per gap is checked: each distinct finite value itself.
    """
    if isinstance(values, Mapping):
        missing = [e for e in space.elements if e not in values]
        if missing:
            raise ValueError(f"no value for point {missing[0]!r}")
        values = [values[e] for e in space.elements]
    h = LscFunction(space, [ExtValue(v) for v in values])
    for t in h.steps():
        ls = h.level_set(t)
        if not space.is_member(ls):
            return NotLsc(t, ls)
    return h


def as_lsc(space: PervinSpace, values) -> LscFunction:
    """Like :func:`lsc_check` but raises on failure."""
    out = lsc_check(space, values)
    if isinstance(out, NotLsc):
        raise out
    return out


def characteristic(space: PervinSpace, mask: int) -> LscFunction:
    return LscFunction(space, [ONE if mask >> p & 1 else ZERO for p in range(space.n_points)])


def constant(space: PervinSpace, c: ExtValue) -> LscFunction:
    return LscFunction(space, [ExtValue(c)] * space.n_points)


def _level_integral(h: LscFunction, measure: Callable[[int], ExtValue]) -> ExtValue:
    steps = h.steps()
    total = ZERO
    for lo, hi in zip(steps, steps[1:]):
        total = total + ExtValue(hi - lo) * measure(h.level_set(lo))
    inf_set = h.infinite_set()
    if inf_set:
        total = total + INF * measure(inf_set)
    return total


def integrate(h: LscFunction, nu: Valuation) -> ExtValue:
    """Choquet integral ``∫ h dnu``."""
    _check_same(h.space, nu.space)
    return _level_integral(h, nu)


def darboux_sum(h: LscFunction, nu: Valuation, level: int, *, closed: bool = True) -> ExtValue:
    """Lower Darboux sum of ``t ↦ nu(h⁻¹(]t, inf]))`` on the dyadic grid of
    mesh ``2**-level`` over ``[0, level]``.

    With ``closed=True`` each cell ``[(k-1)/2^N, k/2^N[`` contributes its
    infimum, the left limit ``nu(h⁻¹([k/2^N, inf]))``; this reaches the exact
    integral once the grid contains every value of a dyadic-valued bounded
    ``h``.  ``closed=False`` evaluates at the right endpoint instead.
    """
    _check_same(h.space, nu.space)
    eps = Fraction(1, 1 << level)
    total = ZERO
    for k in range(1, level * (1 << level) + 1):
        t = k * eps
        s = h.closed_level_set(t) if closed else h.level_set(t)
        total = total + ExtValue(eps) * nu(s)
    return total


def gmul(g: LscFunction, mu: Valuation) -> Valuation:
    """The density valuation ``U ↦ ∫ χ_U·g dmu``; atom weights are ``g(a)·mu(a)``."""
    _check_same(g.space, mu.space)
    return Valuation(mu.space, [g.on_atom(a) * w for a, w in zip(mu.space.atoms, mu.weights)])


def gmul_level_value(g: LscFunction, mu: Valuation, mask: int) -> ExtValue:
    """``∫₀^∞ mu(mask ∩ g⁻¹(]t, inf])) dt``; independent of :func:`gmul`'s closed form."""
    _check_same(g.space, mu.space)
    return _level_integral(g, lambda s: mu(s & mask))


def gmul_extend(g: LscFunction, mu: Valuation, c: AlgebraElement) -> ExtValue:
    """Canonical extension of ``g·mu`` to an algebra element (``mu`` bounded)."""
    if not mu.is_bounded:
        raise UnboundedValuation("the canonical extension needs a bounded mu")
    return gmul_level_value(g, mu, c.mask)


def integrate_against_density(h: LscFunction, g: LscFunction, mu: Valuation) -> tuple[ExtValue, ExtValue]:
    """Both sides of ``∫ h d(g·mu) = ∫ hg dmu``."""
    _check_same(h.space, g.space)
    hg = as_lsc(h.space, (h * g).values)
    return integrate(h, gmul(g, mu)), integrate(hg, mu)


class LinearFunctional:
    """A map from lsc functions to ``Q+ ∪ {inf}``.

    Built from a valuation by :func:`riesz_functional` or wrapped around an
    arbitrary callable (for externally supplied functionals, which can then
    be screened with :func:`check_linear`).
    """

    def __init__(self, space: PervinSpace, fn: Callable[[LscFunction], ExtValue]) -> None:
        self.space = space
        self._fn = fn

    def __call__(self, h: LscFunction) -> ExtValue:
        _check_same(self.space, h.space)
        return ExtValue(self._fn(h))


def riesz_functional(nu: Valuation) -> LinearFunctional:
    return LinearFunctional(nu.space, lambda h: integrate(h, nu))


def riesz_valuation(F: LinearFunctional) -> Valuation:
    """``U ↦ F(χ_U)``."""
    sp = F.space
    table = {u: F(characteristic(sp, u)) for u in sp.lattice}
    return from_lattice_table(sp, table, allow_unbounded=True)


def check_linear(F: LinearFunctional, samples: Iterable[tuple[LscFunction, LscFunction, ExtValue, ExtValue]]) -> None:
    """Raise :class:`NotLinear` if ``F(a·h + b·k) != a·F(h) + b·F(k)`` on any sample."""
    for h, k, a, b in samples:
        lhs = F(h.scale(a) + k.scale(b))
        rhs = ExtValue(a) * F(h) + ExtValue(b) * F(k)
        if lhs != rhs:
            raise NotLinear(f"F({a}·h + {b}·k) = {lhs} but a·F(h) + b·F(k) = {rhs}")


def very_simple_decompose(h: LscFunction, level: int) -> tuple[Fraction, list[int]]:
    """The very simple approximant ``2^-N Σ_k χ_{h⁻¹([k/2^N, inf])}``, k = 1..N·2^N.

    Returns the step ``2^-N`` and the non-empty level sets, each a lattice
    member.  The approximant is below ``h``, increases with ``N`` and equals
    ``h`` once ``N`` is at least the dyadic order and the ceiling of every
    value of ``h``.
    """
    eps = Fraction(1, 1 << level)
    sets = []
    for k in range(1, level * (1 << level) + 1):
        s = h.closed_level_set(k * eps)
        if s == 0:
            break
        sets.append(s)
    return eps, sets


def very_simple_function(h: LscFunction, level: int) -> LscFunction:
    eps, sets = very_simple_decompose(h, level)
    counts = [sum(1 for s in sets if s >> p & 1) for p in range(h.space.n_points)]
    return LscFunction(h.space, [ExtValue(eps * c) for c in counts])


def _check_same(a: PervinSpace, b: PervinSpace) -> None:
    if a != b:
        raise SpaceMismatch("objects live on different spaces")
