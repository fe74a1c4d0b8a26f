"""Benchmark the permutation kernels: compiled extension vs pure Python.

Times subgroup closure and conjugacy partitioning on progressively larger
generator sets and prints per-backend means with the speedup ratio.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import statistics
import time

from charkit import _pure

try:
    from charkit import _speedups
except ImportError:
    _speedups = None


def _cyclic_images(n):
    return tuple(list(range(1, n)) + [0])


CASES = {
    "S6 (order 720)": (
        (1, 0, 2, 3, 4, 5),
        (1, 2, 3, 4, 5, 0),
    ),
    "A5 (order 60)": (
        (1, 2, 0, 3, 4),
        (0, 1, 3, 4, 2),
    ),
    "SL(2,3) regular (order 24)": None,  # built below from the group
    "C210 (order 210)": _cyclic_images(210),
}


def _build_cases():
    """Generator tuples per case, deferring the ones that need the library."""
    from charkit.corpus import corpus_group

    out = {}
    for label, gens in CASES.items():
        if gens is None:
            G = corpus_group("SL23")
            out[label] = tuple(G.generators)
        elif isinstance(gens[0], int):
            out[label] = (gens,)
        else:
            out[label] = gens
    return out


def _time(fn, repeats):
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.mean(samples)


def run(repeats):
    backends = [("pure", _pure)]
    if _speedups is not None:
        backends.append(("compiled", _speedups))
    else:
        print("compiled extension not available; timing pure backend only")

    header = f"{'case':<28} {'kernel':<12}" + "".join(
        f"{name:>12}" for name, _ in backends
    )
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for label, gens in _build_cases().items():
        elements = sorted(_pure.closure(gens))
        rows = {
            "closure": lambda mod, g=gens: mod.closure(g),
            "conjugacy": lambda mod, g=gens, e=elements: mod.conjugacy_partition(
                e, g
            ),
        }
        for kernel, call in rows.items():
            means = [_time(lambda m=mod: call(m), repeats) for _, mod in backends]
            line = f"{label:<28} {kernel:<12}" + "".join(
                f"{m * 1e3:>10.2f}ms" for m in means
            )
            if len(means) == 2 and means[1] > 0:
                line += f"{means[0] / means[1]:>9.1f}x"
            print(line)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--repeats", type=int, default=5, help="samples per measurement"
    )
    args = parser.parse_args()
    run(args.repeats)


if __name__ == "__main__":
    main()
