"""Bitmask kernels over subset lattices.

Every subset of the carrier is an ``int64`` bit mask.  The kernels are compiled
with numba when it is importable; setting ``VALDENSITY_DISABLE_NUMBA=1`` selects
the pure-numpy path instead.  Both paths return identical results.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("VALDENSITY_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError("numba disabled by VALDENSITY_DISABLE_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False


# ---------------------------------------------------------------- numpy path


def _np_intersection_closure(gens: np.ndarray, full: int, max_size: int) -> np.ndarray:
    out = np.array([full], dtype=np.int64)
    for g in gens:
        out = np.union1d(out, out & g)
        if out.size > max_size:
            return np.empty(0, dtype=np.int64)
    return out


def _np_union_closure(gens: np.ndarray, max_size: int) -> np.ndarray:
    out = np.zeros(1, dtype=np.int64)
    for g in gens:
        out = np.union1d(out, out | g)
        if out.size > max_size:
            return np.empty(0, dtype=np.int64)
    return out


def _np_up_masks(lattice: np.ndarray, n_points: int) -> np.ndarray:
    full = np.int64((1 << n_points) - 1)
    bits = np.int64(1) << np.arange(n_points, dtype=np.int64)
    contains = (lattice[None, :] & bits[:, None]) != 0
    ups = np.empty(n_points, dtype=np.int64)
    for p in range(n_points):
        ups[p] = np.bitwise_and.reduce(lattice[contains[p]], initial=full)
    return ups


def _np_hahn_scan(lattice: np.ndarray, pos: int, neg: int):
    ok = ((lattice & neg) == 0) & ((lattice & pos) == pos)
    hits = lattice[ok]
    if hits.size == 0:
        return 0, np.int64(0)
    return int(hits.size), np.bitwise_or.reduce(hits)


def _np_find_member(lattice: np.ndarray, avoid: int, hit: int) -> int:
    ok = ((lattice & avoid) == 0) & ((lattice & hit) != 0)
    idx = np.flatnonzero(ok)
    return int(idx[0]) if idx.size else -1


# ---------------------------------------------------------------- numba path

if HAS_NUMBA:

    @njit(cache=True)
    def _nb_intersection_closure(gens, full, n_points, max_size):
        seen = np.zeros(1 << n_points, dtype=np.bool_)
        out = np.empty(max_size + 1, dtype=np.int64)
        out[0] = full
        seen[full] = True
        count = 1
        for g in gens:
            c = count
            for i in range(c):
                m = out[i] & g
                if not seen[m]:
                    if count >= max_size:
                        return out[:0]
                    seen[m] = True
                    out[count] = m
                    count += 1
        return np.sort(out[:count])

    @njit(cache=True)
    def _nb_union_closure(gens, n_points, max_size):
        seen = np.zeros(1 << n_points, dtype=np.bool_)
        out = np.empty(max_size + 1, dtype=np.int64)
        out[0] = 0
        seen[0] = True
        count = 1
        for g in gens:
            c = count
            for i in range(c):
                m = out[i] | g
                if not seen[m]:
                    if count >= max_size:
                        return out[:0]
                    seen[m] = True
                    out[count] = m
                    count += 1
        return np.sort(out[:count])

    @njit(cache=True)
    def _nb_up_masks(lattice, n_points):
        full = (np.int64(1) << n_points) - 1
        ups = np.full(n_points, full, dtype=np.int64)
        for m in lattice:
            for p in range(n_points):
                if (m >> p) & 1:
                    ups[p] &= m
        return ups

    @njit(cache=True)
    def _nb_hahn_scan(lattice, pos, neg):
        count = 0
        union = np.int64(0)
        for m in lattice:
            if (m & neg) == 0 and (m & pos) == pos:
                count += 1
                union |= m
        return count, union

    @njit(cache=True)
    def _nb_find_member(lattice, avoid, hit):
        for i in range(lattice.shape[0]):
            m = lattice[i]
            if (m & avoid) == 0 and (m & hit) != 0:
                return i
        return -1


# ---------------------------------------------------------------- public API


def lattice_closure(gens, n_points: int, max_size: int) -> np.ndarray | None:
    """Smallest family containing ``gens``, the empty set and the full carrier
    that is closed under pairwise union and intersection, sorted ascending.

    Returns ``None`` when the closure would exceed ``max_size`` members.
    """
    full = (1 << n_points) - 1
    g = np.unique(np.asarray(list(gens), dtype=np.int64))
    # intersection-close first; the union closure of an intersection-closed
    # family stays intersection-closed by distributivity
    if HAS_NUMBA and n_points <= 24:
        meet = _nb_intersection_closure(g, np.int64(full), n_points, max_size)
        if meet.size == 0:
            return None
        out = _nb_union_closure(meet, n_points, max_size)
    else:
        meet = _np_intersection_closure(g, full, max_size)
        if meet.size == 0:
            return None
        out = _np_union_closure(meet, max_size)
    if out.size == 0:
        return None
    return out


def up_masks(lattice: np.ndarray, n_points: int) -> np.ndarray:
    """For each point, the intersection of all lattice members containing it."""
    if HAS_NUMBA:
        return _nb_up_masks(lattice, n_points)
    return _np_up_masks(lattice, n_points)


def hahn_scan(lattice: np.ndarray, pos: int, neg: int) -> tuple[int, int]:
    """Count members ``U`` with ``pos ⊆ U`` and ``U ∩ neg = ∅``; return the
    count and the union of all of them."""
    if HAS_NUMBA:
        c, u = _nb_hahn_scan(lattice, np.int64(pos), np.int64(neg))
    else:
        c, u = _np_hahn_scan(lattice, pos, neg)
    return int(c), int(u)


def find_member(lattice: np.ndarray, avoid: int, hit: int) -> int:
    """Index of the first member disjoint from ``avoid`` that meets ``hit``, or -1."""
    if HAS_NUMBA:
        return int(_nb_find_member(lattice, np.int64(avoid), np.int64(hit)))
    return _np_find_member(lattice, avoid, hit)


def backend() -> str:
    return "numba" if HAS_NUMBA else "numpy"
