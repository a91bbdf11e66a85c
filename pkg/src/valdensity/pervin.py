"""Finite Pervin spaces: a carrier with a lattice of subsets.

Subsets are Python ``int`` bit masks over the element order (bit ``i`` is
``elements[i]``).  On a finite carrier a lattice of subsets is already a
topology and an omega-topology, so nothing beyond the lattice is stored.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import CarrierTooLarge, ClosureTooLarge, NotInAlgebra, UnknownElement, ValidationFailure

DEFAULT_MAX_POINTS = 20
DEFAULT_MAX_LATTICE = 1 << 18


def max_points() -> int:
    return int(os.environ.get("VALDENSITY_MAX_POINTS", DEFAULT_MAX_POINTS))


def max_lattice() -> int:
    return int(os.environ.get("VALDENSITY_MAX_LATTICE", DEFAULT_MAX_LATTICE))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Atom:
    index: int
    member_mask: int


@dataclass(frozen=True)
class Crescent:
    """The difference ``outer \\ inner`` of two lattice members, ``inner ⊆ outer``."""

    outer: int
    inner: int

    @property
    def mask(self) -> int:
        return self.outer & ~self.inner


@dataclass(frozen=True)
class AlgebraElement:
    mask: int
    crescents: tuple[Crescent, ...]


@dataclass(frozen=True, eq=False)
class PervinSpace:
    """A finite carrier with a lattice of subsets.

    Build instances with :func:`close_lattice` or :meth:`from_lattice`; both
    validate the lattice and precompute atoms.
    """

    elements: tuple[str, ...]
    lattice: tuple[int, ...]
    _lattice_arr: np.ndarray = field(repr=False)
    _members: frozenset = field(repr=False)
    atoms: tuple[Atom, ...] = field(repr=False)
    _atom_of_point: tuple[int, ...] = field(repr=False)
    _up: tuple[int, ...] = field(repr=False)

    @classmethod
    def from_lattice(cls, elements: Sequence[str], lattice: Iterable[int]) -> "PervinSpace":
        """Wrap an already-closed family; raises if it is not a lattice."""
        elements = _check_elements(elements)
        n = len(elements)
        full = (1 << n) - 1
        members = sorted(set(int(m) for m in lattice))
        for m in members:
            if m < 0 or m > full:
                raise UnknownElement(f"subset {m:#b} is not contained in the carrier")
        mset = set(members)
        for req, what in ((0, "empty set"), (full, "whole carrier")):
            if req not in mset:
                raise ValidationFailure("lattice", f"missing the {what}")
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                if u | v not in mset:
                    raise ValidationFailure("lattice", f"missing union of {_fmt(elements, u)} and {_fmt(elements, v)}")
                if u & v not in mset:
                    raise ValidationFailure(
                        "lattice", f"missing intersection of {_fmt(elements, u)} and {_fmt(elements, v)}"
                    )
        return cls._build(elements, np.asarray(members, dtype=np.int64))

    @classmethod
    def _build(cls, elements: tuple[str, ...], arr: np.ndarray) -> "PervinSpace":
        n = len(elements)
        lattice = tuple(int(m) for m in arr)
        ups = tuple(int(u) for u in _kernels.up_masks(arr, n)) if n else ()
        # points with the same up-mask lie in exactly the same members
        groups: dict[int, int] = {}
        for p, u in enumerate(ups):
            groups[u] = groups.get(u, 0) | (1 << p)
        atom_masks = sorted(groups.values())
        atoms = tuple(Atom(i, m) for i, m in enumerate(atom_masks))
        atom_of_point = [0] * n
        for a in atoms:
            for p in _bits(a.member_mask):
                atom_of_point[p] = a.index
        return cls(
            elements=elements,
            lattice=lattice,
            _lattice_arr=arr,
            _members=frozenset(lattice),
            atoms=atoms,
            _atom_of_point=tuple(atom_of_point),
            _up=ups,
        )

    # ------------------------------------------------------------ basics

    @property
    def n_points(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    @property
    def lattice_array(self) -> np.ndarray:
        return self._lattice_arr

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise UnknownElement(f"unknown point {name!r}") from None

    def mask_of(self, names: Iterable[str]) -> int:
        m = 0
        for nm in names:
            m |= 1 << self.index(nm)
        return m

    def names_of(self, mask: int) -> list[str]:
        return [self.elements[i] for i in _bits(mask)]

    def label(self, mask: int) -> str:
        return ",".join(self.names_of(mask))

    def is_member(self, mask: int) -> bool:
        return mask in self._members

    def atom_of(self, point: int) -> Atom:
        return self.atoms[self._atom_of_point[point]]

    def atoms_in(self, mask: int) -> list[Atom]:
        return [a for a in self.atoms if a.member_mask & mask == a.member_mask]

    def in_algebra(self, mask: int) -> bool:
        return all(a.member_mask & mask in (0, a.member_mask) for a in self.atoms)

    def up_set(self, point: int) -> int:
        """Smallest lattice member containing ``point``."""
        return self._up[point]

    def smallest_member_containing(self, mask: int) -> int:
        u = 0
        for p in _bits(mask):
            u |= self._up[p]
        return u

    # ------------------------------------------------------------ crescents

    def is_crescent(self, mask: int) -> Crescent | None:
        """A witness ``(U, V)`` with ``mask = U \\ V`` and ``V ⊆ U``, or None."""
        if mask == 0:
            return Crescent(0, 0)
        # any witness U' yields the witness U ⊆ U' below, since U ∖ S = U ∩ (U' ∖ S)
        outer = self.smallest_member_containing(mask)
        inner = outer & ~mask
        if inner in self._members:
            return Crescent(outer, inner)
        return None

    def atom_crescent(self, atom: Atom) -> Crescent:
        outer = self._up[_lowest_bit(atom.member_mask)]
        return Crescent(outer, outer & ~atom.member_mask)

    def algebra_decompose(self, mask: int) -> AlgebraElement:
        """Write ``mask`` as a disjoint union of crescents.

        A single crescent is used when possible, otherwise one crescent per atom.
        """
        if not self.in_algebra(mask):
            raise NotInAlgebra(f"{self.label(mask) or '{}'} splits an atom")
        if mask == 0:
            return AlgebraElement(0, ())
        c = self.is_crescent(mask)
        if c is not None:
            return AlgebraElement(mask, (c,))
        return self.atom_decompose(mask)

    def atom_decompose(self, mask: int) -> AlgebraElement:
        if not self.in_algebra(mask):
            raise NotInAlgebra(f"{self.label(mask) or '{}'} splits an atom")
        return AlgebraElement(mask, tuple(self.atom_crescent(a) for a in self.atoms_in(mask)))

    def crescents(self) -> list[Crescent]:
        """All pairs ``(U, V)`` of lattice members with ``V ⊆ U``."""
        return [Crescent(u, v) for u in self.lattice for v in self.lattice if v & u == v]

    # ------------------------------------------------------------ order

    def specialization_leq(self, x: int, y: int) -> bool:
        """``x ≤ y`` iff every member containing ``x`` contains ``y``."""
        return bool(self._up[x] >> y & 1)

    def specialization_preorder(self) -> set[tuple[str, str]]:
        n = self.n_points
        return {
            (self.elements[x], self.elements[y]) for x in range(n) for y in range(n) if self.specialization_leq(x, y)
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PervinSpace):
            return NotImplemented
        return self.elements == other.elements and self.lattice == other.lattice

    def __hash__(self) -> int:
        return hash((self.elements, self.lattice))


def close_lattice(generators: Iterable[Iterable[str]], carrier: Sequence[str]) -> PervinSpace:
    """Smallest lattice on ``carrier`` containing every generator."""
    elements = _check_elements(carrier)
    idx = {nm: i for i, nm in enumerate(elements)}
    gens = []
    for g in generators:
        m = 0
        for nm in g:
            if nm not in idx:
                raise UnknownElement(f"unknown point {nm!r}")
            m |= 1 << idx[nm]
        gens.append(m)
    return close_masks(elements, gens)


def close_masks(elements: Sequence[str], gens: Iterable[int]) -> PervinSpace:
    elements = _check_elements(elements)
    bound = max_lattice()
    arr = _kernels.lattice_closure(list(gens), len(elements), bound)
    if arr is None:
        raise ClosureTooLarge(f"lattice closure exceeds {bound} members")
    return PervinSpace._build(elements, arr)


def powerset_space(elements: Sequence[str]) -> PervinSpace:
    elements = _check_elements(elements)
    return close_masks(elements, [1 << i for i in range(len(elements))])


def _check_elements(elements: Sequence[str]) -> tuple[str, ...]:
    elements = tuple(str(e) for e in elements)
    if len(set(elements)) != len(elements):
        raise ValidationFailure("space", "duplicate point names")
    if not elements:
        raise ValidationFailure("space", "the carrier must be non-empty")
    cap = max_points()
    if len(elements) > cap:
        raise CarrierTooLarge(f"carrier has {len(elements)} points; the cap is {cap}")
    return elements


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _fmt(elements, mask) -> str:
    return "{" + ",".join(elements[i] for i in _bits(mask)) + "}"


bits = _bits
