"""Seeded random instances for property checks.

Everything is driven by :class:`random.Random`, so a seed reproduces the same
instance on every platform; no floating point reaches the instance values.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .choquet import LscFunction
from .exreal import INF, ZERO, ExtValue
from .pervin import PervinSpace, close_masks
from .valuation import Valuation

MAX_POINTS = 8


@dataclass(frozen=True)
class GenParams:
    points: int = 4
    generator_count: int = 3
    weight_range: int = 4
    infinity_prob: float = 0.0
    zero_prob: float = 0.25
    generators: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if not 1 <= self.points <= MAX_POINTS:
            raise ValueError(f"points must lie in 1..{MAX_POINTS}")
        if self.generator_count < 0 or self.weight_range < 1:
            raise ValueError("generator_count must be >= 0 and weight_range >= 1")
        if not (0 <= self.infinity_prob <= 1 and 0 <= self.zero_prob <= 1):
            raise ValueError("probabilities must lie in [0, 1]")


def random_rational(rng: random.Random, weight_range: int, zero_prob: float = 0.0) -> Fraction:
    if zero_prob and rng.random() < zero_prob:
        return Fraction(0)
    return Fraction(rng.randint(0, weight_range), rng.randint(1, weight_range))


def random_space(rng: random.Random, params: GenParams) -> PervinSpace:
    n = params.points
    names = [f"p{i}" for i in range(n)]
    if params.generators is not None:
        gens = list(params.generators)
    else:
        gens = [rng.getrandbits(n) for _ in range(params.generator_count)]
    return close_masks(names, gens)


def random_valuation(rng: random.Random, space: PervinSpace, params: GenParams) -> Valuation:
    weights = []
    for _ in space.atoms:
        if params.infinity_prob and rng.random() < params.infinity_prob:
            weights.append(INF)
        else:
            weights.append(ExtValue(random_rational(rng, params.weight_range, params.zero_prob)))
    return Valuation(space, weights)


def random_lsc(
    rng: random.Random, space: PervinSpace, terms: int = 3, weight_range: int = 4, dyadic: bool = False
) -> LscFunction:
    """A random element of the lsc function space as a positive combination of
    characteristic maps of lattice members (sums of lsc maps are lsc)."""
    vals = [Fraction(0)] * space.n_points
    for _ in range(terms):
        u = rng.choice(space.lattice)
        if dyadic:
            c = Fraction(rng.randint(0, 4 * weight_range), 1 << rng.randint(0, 3))
        else:
            c = random_rational(rng, weight_range)
        for p in range(space.n_points):
            if u >> p & 1:
                vals[p] += c
    return LscFunction(space, [ExtValue(v) for v in vals])


def gen_instance(seed: int, params: GenParams | None = None) -> tuple[PervinSpace, Valuation, Valuation]:
    """Deterministic ``(space, nu, mu)`` for ``seed``."""
    params = params or GenParams()
    rng = random.Random(seed)
    space = random_space(rng, params)
    nu = random_valuation(rng, space, params)
    mu = random_valuation(rng, space, params)
    return space, nu, mu


def gen_small(seed: int, max_points: int = 6, **overrides) -> tuple[PervinSpace, Valuation, Valuation]:
    """Instance with a seed-chosen carrier size in ``1..max_points``."""
    rng = random.Random(seed)
    n = rng.randint(1, max_points)
    params = GenParams(points=n, generator_count=rng.randint(0, n + 1), **overrides)
    return gen_instance(seed, params)
