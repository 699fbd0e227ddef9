import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from scatterdiag import _pykernels, kernels

try:
    from scatterdiag import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
NAMES = ("tropical_bracket", "tropical_derivation", "tropical_product")


def rand_terms(rng, quantum=False, allow_k0=False):
    out = {}
    for _ in range(rng.randint(0, 6)):
        m = (rng.randint(-3, 3), rng.randint(-3, 3))
        if m == (0, 0) and not allow_k0:
            continue
        k = rng.randint(0 if allow_k0 else 1, 4)
        if quantum:
            c = {rng.randint(-3, 3): Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 3)) for _ in range(2)}
        else:
            c = Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 3))
        out[(m, k)] = c
    return out


@needs_ext
@pytest.mark.parametrize("name", NAMES)
def test_tropical_parity(name):
    rng = random.Random(name)
    for _ in range(200):
        a, b = rand_terms(rng), rand_terms(rng, allow_k0=name != "tropical_bracket")
        order = rng.randint(1, 6)
        assert getattr(_ckernels, name)(a, b, order) == getattr(_pykernels, name)(a, b, order)


@needs_ext
def test_quantum_parity():
    rng = random.Random(7)
    for _ in range(200):
        a, b = rand_terms(rng, True), rand_terms(rng, True, allow_k0=True)
        order = rng.randint(1, 6)
        assert _ckernels.quantum_product(a, b, order) == _pykernels.quantum_product(a, b, order)
        for keep in (False, True):
            assert _ckernels.quantum_bracket(a, b, order, keep) == _pykernels.quantum_bracket(a, b, order, keep)


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")
    if _ckernels is not None and os.environ.get("SCATTERDIAG_PURE_PYTHON", "0") == "0":
        assert kernels.BACKEND == "cython"


def test_pure_python_switch():
    env = dict(os.environ, SCATTERDIAG_PURE_PYTHON="1")
    code = "import scatterdiag; print(scatterdiag.BACKEND)"
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "python"
