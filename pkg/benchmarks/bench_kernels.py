"""Compare the compiled and pure-Python kernels on the workloads they serve.

    python benchmarks/bench_kernels.py [--size 7] [--repeat 3]
"""

import argparse
import time

from rlsheaf import _pykernels, catalog
from rlsheaf.algebra import tables_from_order
from rlsheaf.explorer import lattice_orders
from rlsheaf.sheaf import _allow_masks, build_sheaf

try:
    from rlsheaf import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def workloads(size):
    orders = [(le, *tables_from_order(le)) for le in lattice_orders(size)]

    def tensor_search(k):
        return lambda: [k.search_tensors(le, m, j, 0, size - 1) for le, m, j in orders]

    L = catalog.get("l6-godel")
    S = build_sheaf(L)
    allow = _allow_masks(S)

    def sections(k):
        return lambda: [k.enumerate_sections(list(S.stalk_sizes), allow) for _ in range(20)]

    big = catalog.get("l6-mv2x3")

    def axioms(k):
        return lambda: [
            (k.first_assoc_violation(big.tensor),
             k.first_adjunction_violation(big.tensor, big.residuum, big.le))
            for _ in range(200)
        ]

    return [
        (f"tensor search, all lattice orders of size {size}", tensor_search),
        ("section enumeration, 6-chain (x20)", sections),
        ("associativity + adjunction scans, n=6 (x200)", axioms),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'workload':52s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for label, make in workloads(args.size):
        py = best_of(make(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{label:52s} {py:10.4f} {'n/a':>10s} {'n/a':>8s}")
            continue
        c = best_of(make(_ckernels), args.repeat)
        print(f"{label:52s} {py:10.4f} {c:10.4f} {py / c:7.1f}x")


if __name__ == "__main__":
    main()
