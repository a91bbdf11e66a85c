"""Worked instances, including the two counterexamples where absolute
continuity holds but no lower semicontinuous density exists."""

from __future__ import annotations

from fractions import Fraction

from .choquet import as_lsc
from .exreal import ExtValue
from .instance import Instance, ParseError
from .pervin import close_lattice
from .valuation import dirac, dirac_combo, from_atom_weights, from_lattice_table

MAX_HALFPOW_DEPTH = 16


def sierpinski_no_density() -> Instance:
    """Sierpinski space, ``mu = δ_s0 + δ_s1`` and ``nu = g·mu`` for the antitone
    ``g = {s0: 1, s1: 0}``; no monotone density exists."""
    sp = close_lattice([["s1"]], ["s0", "s1"])
    mu = dirac_combo(sp, [(ExtValue(1), "s0"), (ExtValue(1), "s1")])
    nu = from_lattice_table(sp, {0: ExtValue(0), sp.mask_of(["s1"]): ExtValue(0), sp.full: ExtValue(1)})
    h = as_lsc(sp, {"s0": ExtValue(0), "s1": ExtValue(2)})
    return Instance(sp, {"nu": nu, "mu": mu}, {"h": h, "one": as_lsc(sp, [ExtValue(1)] * 2)})


def sierpinski_density() -> Instance:
    sp = close_lattice([["s1"]], ["s0", "s1"])
    mu = dirac_combo(sp, [(ExtValue(1), "s0"), (ExtValue(1), "s1")])
    g = as_lsc(sp, {"s0": ExtValue(0), "s1": ExtValue(2)})
    nu = from_lattice_table(sp, {0: ExtValue(0), sp.mask_of(["s1"]): ExtValue(2), sp.full: ExtValue(2)})
    return Instance(sp, {"nu": nu, "mu": mu, "d1": dirac(sp, "s1")}, {"g": g})


def halfpow_no_density(depth: int = 3) -> Instance:
    """Truncation of ``δ_0 + Σ 2⁻ⁿ δ_{2⁻ⁿ}`` on the reals.

    Points ``z`` (the origin) and ``x1..xN`` (``xn = 2⁻ⁿ``).  A set containing
    ``z`` must contain ``xN``, the truncated trace of "every neighbourhood of 0
    contains 2⁻ⁿ for large n".  ``nu = δ_z``, i.e. ``g·mu`` for ``g = χ_{z}``.
    """
    depth = int(depth)
    if not 1 <= depth <= MAX_HALFPOW_DEPTH:
        raise ParseError(f"halfpow depth must lie in 1..{MAX_HALFPOW_DEPTH}, got {depth}")
    xs = [f"x{n}" for n in range(1, depth + 1)]
    elements = ["z"] + xs
    sp = close_lattice([[x] for x in xs] + [["z", xs[-1]]], elements)
    weights = {}
    for a in sp.atoms:
        (name,) = sp.names_of(a.member_mask)
        weights[a] = ExtValue(1) if name == "z" else ExtValue(Fraction(1, 2 ** int(name[1:])))
    mu = from_atom_weights(sp, weights)
    nu = dirac(sp, "z")
    return Instance(sp, {"nu": nu, "mu": mu})


BUILDERS = {
    "sierpinski_no_density": sierpinski_no_density,
    "sierpinski_density": sierpinski_density,
    "halfpow_no_density": halfpow_no_density,
}



def build(ref: str) -> Instance:
    """``name`` or ``name:param``; ``halfpow_no_density_7`` is also accepted."""
    name, _, param = ref.partition(":")
    if name not in BUILDERS and name.startswith("halfpow_no_density_"):
        name, param = "halfpow_no_density", name.rsplit("_", 1)[1]
    if name not in BUILDERS:
        raise ParseError(f"unknown fixture {ref!r}")
    if param:
        try:
            return BUILDERS[name](int(param))
        except (TypeError, ValueError):
            raise ParseError(f"bad fixture parameter in {ref!r}") from None
    return BUILDERS[name]()


def shipped_documents() -> dict[str, dict]:
    """The JSON documents stored in the package's fixtures directory."""
    from .instance import instance_to_dict

    docs = {
        "sierpinski_no_density": instance_to_dict(sierpinski_no_density()),
        "sierpinski_density": instance_to_dict(sierpinski_density()),
    }
    for n in range(3, MAX_HALFPOW_DEPTH + 1):
        inst = halfpow_no_density(n)
        sp = inst.space
        gens = [sp.mask_of([f"x{k}"]) for k in range(1, n + 1)] + [sp.mask_of(["z", f"x{n}"])]
        docs[f"halfpow_no_density_{n}"] = instance_to_dict(inst, generators=gens)
    return docs
