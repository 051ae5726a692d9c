"""Compare the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat R]

Prints one line per kernel with both timings and whether outputs agree.
"""

import argparse
import time

import numpy as np

from spherecolor import _kernels_py
from spherecolor.complex import double_wheel, glue_octahedra, octahedron
from spherecolor.connectivity import csr
from spherecolor.hardness import cached_gadget

try:
    from spherecolor import _kernels
except ImportError:  # pragma: no cover
    _kernels = None


def _timed(fn, args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, out


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if a is None or b is None:
        return a is b
    return np.array_equal(np.asarray(a), np.asarray(b))


def cases():
    dw = double_wheel(10)
    n, ip, ix = csr(dw)
    full = np.full(n, 15, dtype=np.int64)
    codes = _kernels_py.enumerate_colorings(n, 4, ip, ix, full, 10**8)
    yield "enumerate_colorings dw10 k=4", "enumerate_colorings", (n, 4, ip, ix, full, 10**8)
    yield "component_labels dw10 k=4", "component_labels", (codes, n, 4, ip, ix, full)

    big = octahedron()
    for i in range(3000):
        big = glue_octahedra(big, [(7 * i) % big.face_count])
    adj = np.array(big.face_adjacency(), dtype=np.int64)
    yield f"dual_bfs F={big.face_count}", "dual_bfs", (adj,)
    n, ip, ix = csr(big)
    yield f"list_triangles V={n}", "list_triangles", (n, ip, ix)

    J = cached_gadget().triangulation
    n, ip, ix = csr(J)
    yield f"frozen_search J V={n}", "frozen_search", (n, 5, ip, ix, [-1] * n, 10**6)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels not built; nothing to compare")
        return
    for label, name, call in cases():
        tp, op = _timed(getattr(_kernels_py, name), call, args.repeat)
        tc, oc = _timed(getattr(_kernels, name), call, args.repeat)
        print(f"{label:36s} python {tp * 1e3:9.2f} ms  cython {tc * 1e3:9.2f} ms  "
              f"speedup {tp / max(tc, 1e-9):6.1f}x  agree={_same(op, oc)}")


if __name__ == "__main__":
    main()
