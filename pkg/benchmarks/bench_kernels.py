"""Compare the compiled and pure-Python kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat R] [--order N]

Each kernel runs on the same random inputs under both backends; results
are checked equal before timing. A whole completion is then timed in a
subprocess per backend, since backend choice is fixed at import.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from scatterdiag import _pykernels

try:
    from scatterdiag import _ckernels
except ImportError:
    _ckernels = None


def _grades(rng, n):
    out = []
    while len(out) < n:
        m = (rng.randint(-3, 3), rng.randint(0, 3))
        if m != (0, 0) and m not in out:
            out.append(m)
    return out


def tropical_terms(rng, n, order):
    return {(m, rng.randint(1, order)): Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 4)) for m in _grades(rng, n)}


def quantum_terms(rng, n, order):
    return {
        (m, rng.randint(1, order)): {e: Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 3)) for e in rng.sample(range(-4, 5), 2)}
        for m in _grades(rng, n)
    }


def torus_series(rng, n, order):
    return {((rng.randint(-2, 2), rng.randint(-2, 2)), rng.randint(0, order)): Fraction(rng.randint(1, 5)) for _ in range(n)}


CASES = (
    ("tropical_bracket", lambda r, N: (tropical_terms(r, 24, N), tropical_terms(r, 24, N), N)),
    ("quantum_bracket", lambda r, N: (quantum_terms(r, 24, N), quantum_terms(r, 24, N), N)),
    ("quantum_product", lambda r, N: (quantum_terms(r, 24, N), quantum_terms(r, 24, N), N)),
    ("tropical_derivation", lambda r, N: (tropical_terms(r, 24, N), torus_series(r, 24, N), N)),
    ("tropical_product", lambda r, N: (torus_series(r, 24, N), torus_series(r, 24, N), N)),
)

COMPLETION = """
import time
from scatterdiag import BACKEND, complete
from scatterdiag.serialize import load_diagram
d = load_diagram(open({path!r}).read(), {order})
t0 = time.perf_counter()
complete(d)
print(BACKEND, time.perf_counter() - t0)
"""


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--order", type=int, default=6)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only the Python backend is available")
        return 1

    rng = random.Random(7)
    print(f"{'kernel':<22}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, make in CASES:
        inputs = make(rng, args.order)
        py, cy = getattr(_pykernels, name), getattr(_ckernels, name)
        assert py(*inputs) == cy(*inputs), f"{name}: backends disagree"
        tp = min(timeit.repeat(lambda: py(*inputs), number=args.repeat, repeat=3)) / args.repeat
        tc = min(timeit.repeat(lambda: cy(*inputs), number=args.repeat, repeat=3)) / args.repeat
        print(f"{name:<22}{tp * 1e3:>12.3f}{tc * 1e3:>12.3f}{tp / tc:>9.2f}x")

    sample = os.path.join(os.path.dirname(__file__), "..", "samples", "two_line_quantum.json")
    print(f"\nquantum two-line completion, N = {args.order}:")
    for pure in ("1", "0"):
        env = dict(os.environ, SCATTERDIAG_PURE_PYTHON=pure)
        code = COMPLETION.format(path=os.path.abspath(sample), order=args.order)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, secs = res.stdout.split()
        print(f"  {backend:<8}{float(secs):.3f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
