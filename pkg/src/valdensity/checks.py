"""Per-instance property suite behind ``valdensity randtest``."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .choquet import characteristic, gmul, integrate, integrate_against_density, lsc_check
from .errors import NotLsc
from .exreal import ExtValue
from .generate import GenParams, gen_instance, random_lsc, random_rational
from .radon import abs_continuous, density_oracle, density_synthesize, forward_direction_check, hahn_grid
from .valuation import check_axioms, dirac, linear_combo


@dataclass
class InstanceResult:
    index: int
    seed: int
    points: int
    lattice_size: int
    bounded: bool
    density: bool | None = None
    failures: list[str] = field(default_factory=list)


def check_instance(index: int, seed: int, params: GenParams) -> InstanceResult:
    space, nu, mu = gen_instance(seed, params)
    rng = random.Random(seed ^ 0x5EED)
    res = InstanceResult(index, seed, space.n_points, len(space.lattice), nu.is_bounded and mu.is_bounded)
    fail = res.failures.append

    g = random_lsc(rng, space)
    for name, v in (("nu", nu), ("mu", mu), ("g*mu", gmul(g, mu))):
        bad = check_axioms(space, v.table)
        if bad is not None:
            fail(f"{name} violates the {bad.kind} axiom")

    h = random_lsc(rng, space)
    if isinstance(lsc_check(space, h.values), NotLsc):
        fail("generated function is not lsc")
    for u in space.lattice:
        if integrate(characteristic(space, u), nu) != nu(u):
            fail(f"integral of the characteristic map of {space.label(u)} differs from nu")
    for p in range(space.n_points):
        if integrate(h, dirac(space, p)) != h(p):
            fail(f"integral against the Dirac valuation at {space.elements[p]} differs from h")
    a, b = ExtValue(random_rational(rng, 4)), ExtValue(random_rational(rng, 4))
    if integrate(h, linear_combo(a, mu, b, nu)) != a * integrate(h, mu) + b * integrate(h, nu):
        fail("integral is not linear in the valuation")
    k = random_lsc(rng, space)
    if integrate(h.scale(a) + k.scale(b), nu) != a * integrate(h, nu) + b * integrate(k, nu):
        fail("integral is not linear in the function")
    lhs, rhs = integrate_against_density(h, g, mu)
    if lhs != rhs:
        fail("integral against g*mu differs from the integral of hg")

    if res.bounded:
        synth = density_synthesize(nu, mu)
        oracle = density_oracle(nu, mu)
        conditions = abs_continuous(nu, mu).holds and all(w.found for _, w in hahn_grid(nu, mu))
        res.density = bool(synth)
        if bool(synth) != conditions or bool(oracle) != conditions:
            fail(f"density verdicts disagree: synthesis={bool(synth)} oracle={bool(oracle)} conditions={conditions}")
        report = forward_direction_check(g, mu)
        if not report.ok:
            fail("forward direction fails for g*mu")
    return res


def run(seed: int, count: int, max_points: int, params: GenParams | None = None) -> list[InstanceResult]:
    """Instance ``i`` uses seed ``seed + i`` and a carrier size drawn from it."""
    out = []
    for i in range(count):
        s = seed + i
        rng = random.Random(s)
        n = rng.randint(1, max_points)
        p = params or GenParams()
        p = GenParams(
            points=n,
            generator_count=rng.randint(0, n + 1),
            weight_range=p.weight_range,
            infinity_prob=p.infinity_prob,
            zero_prob=p.zero_prob,
        )
        out.append(check_instance(i, s, p))
    return out
