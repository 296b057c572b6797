"""Selects the compiled kernels when available.

Set ``AFFAUTO_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

from affauto import _pykernels

BACKEND = "python"
mul_terms = _pykernels.mul_terms
additive_closure = _pykernels.additive_closure

if not os.environ.get("AFFAUTO_PURE_PYTHON"):
    try:
        from affauto import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        mul_terms = _ckernels.mul_terms
        additive_closure = _ckernels.additive_closure
