"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 7]
"""
import argparse
import timeit

import numpy as np

from daelsq import _kernels_py as py
from daelsq.nodes import _bary_weights, make_nodes

try:
    from daelsq import _kernels as cy
except ImportError:
    cy = None


def cases():
    rng = np.random.default_rng(0)
    x = np.ascontiguousarray(rng.uniform(-1, 1, 2000))
    c = rng.standard_normal(30)
    nodes = make_nodes("gle", 20).nodes
    bary = _bary_weights(nodes)
    s = np.ascontiguousarray(np.linspace(0, 1, 5000))
    return {
        "legendre_table(2000 pts, 30)": lambda m: m.legendre_table(x, 30),
        "chebyshev_table(2000 pts, 30)": lambda m: m.chebyshev_table(x, 30),
        "clenshaw_legendre(30 coeffs)": lambda m: m.clenshaw_legendre(c, x),
        "clenshaw_chebyshev(30 coeffs)": lambda m: m.clenshaw_chebyshev(c, x),
        "lebesgue_function(20 nodes)": lambda m: m.lebesgue_function(nodes, bary, s),
    }


def best(fn, repeat):
    n, _ = timeit.Timer(fn).autorange()
    return min(timeit.repeat(fn, number=n, repeat=repeat)) / n


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=7)
    a = ap.parse_args(argv)
    if cy is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`")
    print(f"{'kernel':34s} {'python [us]':>12s} {'cython [us]':>12s} {'speedup':>8s}")
    for name, f in cases().items():
        tp = best(lambda: f(py), a.repeat) * 1e6
        if cy is None:
            print(f"{name:34s} {tp:12.1f} {'-':>12s} {'-':>8s}")
            continue
        ref, got = f(py), f(cy)
        ref, got = (ref, got) if isinstance(ref, tuple) else ((ref,), (got,))
        assert all(np.allclose(r, g, rtol=1e-12, atol=1e-12) for r, g in zip(ref, got)), name
        tc = best(lambda: f(cy), a.repeat) * 1e6
        print(f"{name:34s} {tp:12.1f} {tc:12.1f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
