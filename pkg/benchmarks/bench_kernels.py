"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--resolution 400]

The first numba call includes JIT compilation (or a cache load), so a
warm-up run is done before timing.  Both backends must agree exactly.
"""

import argparse
import time

from taxi_em import kernels as K
from taxi_em.explorer import GeneralTriangle, random_search, worst_ratio_canonical, worst_ratio_general
from taxi_em.triangle import CanonicalTriangle
from taxi_em.verify import canonical_lattice, exact_lattice_margin


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def workloads(resolution):
    tri = CanonicalTriangle(-20, 40, 30)
    gen = GeneralTriangle.from_coords((0.3, -0.7, 0.9, 0.2, -0.5, 0.8))
    lattice = canonical_lattice(6)
    return {
        "canonical worst ratio": lambda k: worst_ratio_canonical(tri, resolution, kernels=k).exact_ratio,
        "general worst ratio": lambda k: worst_ratio_general(gen, resolution, kernels=k).exact_ratio,
        "exact int margin sweep": lambda k: [exact_lattice_margin(t, 60, kernels=k) for t in lattice],
        "random search n=50": lambda k: random_search(0, 50, resolution=resolution, kernels=k).to_dict(),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--resolution", type=int, default=400)
    args = ap.parse_args()

    backends = [K.NUMPY] + ([K.NUMBA] if K.NUMBA is not None else [])
    print(f"{'workload':<26}" + "".join(f"{b.name:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in workloads(args.resolution).items():
        results = {}
        for kern in backends:
            fn(kern)  # warm-up / JIT
            results[kern.name] = best_of(lambda: fn(kern), args.repeat)
        outs = [r[1] for r in results.values()]
        if any(o != outs[0] for o in outs):
            raise SystemExit(f"{name}: backends disagree")
        row = f"{name:<26}" + "".join(f"{results[b.name][0]:>11.4f}s" for b in backends)
        if len(backends) == 2:
            row += f"{results['numpy'][0] / results['numba'][0]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
