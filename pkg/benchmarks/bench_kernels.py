"""Compare the numba and numpy kernel paths.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both paths are called directly, so the env switch is not needed here.  The
numba timings exclude compilation (one warm-up call per kernel).
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit

import numpy as np

from valdensity import _kernels as K
from valdensity.fixtures import halfpow_no_density


def random_gens(n_points: int, count: int, seed: int) -> np.ndarray:
    rng = random.Random(seed)
    return np.array([rng.getrandbits(n_points) for _ in range(count)], dtype=np.int64)


def cases():
    out = []
    for depth in (10, 13, 16):
        sp = halfpow_no_density(depth).space
        gens = np.array([1 << i for i in range(1, depth + 1)] + [1 | 1 << depth], dtype=np.int64)
        out.append((f"halfpow depth {depth}", depth + 1, gens, sp.lattice_array))
    for n, count, seed in ((12, 10, 1), (16, 12, 2)):
        gens = random_gens(n, count, seed)
        lat = K._np_union_closure(K._np_intersection_closure(gens, (1 << n) - 1, 1 << 20), 1 << 20)
        out.append((f"random n={n} gens={count}", n, gens, lat))
    return out


def bench(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not K.HAS_NUMBA:
        print("numba is unavailable or disabled; only the numpy path can run", file=sys.stderr)

    header = f"{'case':<24} {'|L|':>7}  {'kernel':<10} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, n, gens, lat in cases():
        full = (1 << n) - 1
        pos, neg = 1, 1 << (n - 1)
        kernels = {
            "closure": (
                lambda: K._np_union_closure(K._np_intersection_closure(gens, full, 1 << 20), 1 << 20),
                lambda: K._nb_union_closure(K._nb_intersection_closure(gens, np.int64(full), n, 1 << 20), n, 1 << 20),
            ),
            "up_masks": (lambda: K._np_up_masks(lat, n), lambda: K._nb_up_masks(lat, n)),
            "hahn_scan": (
                lambda: K._np_hahn_scan(lat, pos, neg),
                lambda: K._nb_hahn_scan(lat, np.int64(pos), np.int64(neg)),
            ),
            "find": (
                lambda: K._np_find_member(lat, full, 0),
                lambda: K._nb_find_member(lat, np.int64(full), np.int64(0)),
            ),
        }
        for kname, (np_fn, nb_fn) in kernels.items():
            t_np = bench(np_fn, args.repeat) * 1e3
            if K.HAS_NUMBA:
                nb_fn()
                t_nb = bench(nb_fn, args.repeat) * 1e3
                print(f"{name:<24} {lat.size:>7}  {kname:<10} {t_np:>10.3f} {t_nb:>10.3f} {t_np / t_nb:>7.1f}x")
            else:
                print(f"{name:<24} {lat.size:>7}  {kname:<10} {t_np:>10.3f} {'-':>10} {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
