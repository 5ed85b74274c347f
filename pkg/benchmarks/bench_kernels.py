"""Time the numba and numpy kernels on the reference workloads.

    python benchmarks/bench_kernels.py [--repeat N]

Each kernel is run once before timing so numba compilation is excluded.
"""

import argparse
import timeit

from ppcodes import fixtures, kernels
from ppcodes.distance import generator_matrix
from ppcodes.field import field_build
from ppcodes.hilbert import evaluation_matrix
from ppcodes.length import y_sizes
from ppcodes.toric import enumerate_X, reduce_matrix


def workloads():
    ex1 = fixtures.load_example("example1")
    F7 = field_build(7)
    X1 = enumerate_X(ex1.matrix, F7)
    M = evaluation_matrix(X1, 5)  # 1296 x 252
    ex2 = fixtures.load_example("example2")
    F9 = field_build(9)
    B2 = reduce_matrix(ex2.matrix, F9)
    ys = y_sizes(B2, F9)
    ex3 = fixtures.load_example("example3")
    F11 = field_build(11)
    G = generator_matrix(enumerate_X(ex3.matrix, F11), 2)  # 10 x 50
    return {
        "rank 1296x252 GF(7)": lambda b: kernels.rank(M, F7.tables, b),
        "kernel count 8^6 GF(9)": lambda b: kernels.count_kernel(B2.b, ys, 8, b),
        "min weight w=3 10x50 GF(11)": lambda b: kernels.min_weight_at(G, 3, F11.tables, 51, b),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    backends = [b for b in kernels.BACKENDS if b != "numba" or kernels.HAVE_NUMBA]
    print(f"{'kernel':<30}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in workloads().items():
        times = []
        for b in backends:
            fn(b)
            times.append(min(timeit.repeat(lambda fn=fn, b=b: fn(b), number=1, repeat=args.repeat)))
        speed = f"{times[-1] / times[0]:.1f}x" if len(times) == 2 else ""
        print(f"{name:<30}" + "".join(f"{t:>11.4f}s" for t in times) + f"{speed:>10}")


if __name__ == "__main__":
    main()
