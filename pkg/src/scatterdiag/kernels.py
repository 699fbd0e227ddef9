"""Backend selection for the graded product kernels.

The compiled extension is used when it was built; setting
``SCATTERDIAG_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from . import _pykernels

if os.environ.get("SCATTERDIAG_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "python" if _impl is _pykernels else "cython"

tropical_bracket = _impl.tropical_bracket
quantum_bracket = _impl.quantum_bracket
quantum_product = _impl.quantum_product
tropical_derivation = _impl.tropical_derivation
tropical_product = _impl.tropical_product
