"""Time the compiled permutation kernels against the pure-Python ones.

    python3 bench/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit

from lambda_taylor import _pykernels, kernels


def workloads(rng):
    perms = []
    for n in (4, 8, 12):
        p = list(range(1, n + 1))
        rng.shuffle(p)
        perms.append(tuple(p))
    labels = tuple(rng.randint(0, 3) for _ in range(9))
    matrix = [[rng.randint(0, 1) for _ in range(10)] for _ in range(10)]
    taus = [tuple(range(1, w + 1)) for w in (3, 0, 2, 4)]
    sigma = (2, 4, 1, 3)
    return {
        "compose n=12": lambda k: k.compose(perms[2], perms[2]),
        "multiplex 4 blocks": lambda k: k.multiplex(sigma, taus),
        "stabilizer n=9": lambda k: k.stabilizer(labels),
        "orbit_stabilizer n=9": lambda k: k.orbit_stabilizer(labels),
        "permanent 10x10": lambda k: k.permanent(matrix),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    compiled = kernels.BACKENDS.get("cython")
    if compiled is None:
        print("compiled kernels are not built; only the Python timings are shown")
    print(f"{'kernel':24} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for name, fn in workloads(random.Random(0)).items():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat)) * 1e3
        if compiled is None:
            print(f"{name:24} {py:12.3f}")
            continue
        assert fn(compiled) == fn(_pykernels), name
        cy = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:24} {py:12.3f} {cy:12.3f} {py / cy:8.1f}x")


if __name__ == "__main__":
    main()
