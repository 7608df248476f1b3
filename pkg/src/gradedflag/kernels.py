"""Kernel backend selection.

The compiled GMP core is used when it was built and gmpy2 supplies the
scalar type; otherwise the pure-Python kernels are used. Setting
``GRADEDFLAG_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels
from .scalar import HAVE_GMPY2

python_backend = _pykernels
compiled_backend = None

if HAVE_GMPY2:
    try:
        from . import _kernels as compiled_backend
    except ImportError:
        compiled_backend = None

if compiled_backend is not None and not os.environ.get("GRADEDFLAG_PURE_PYTHON"):
    backend = compiled_backend
else:
    backend = python_backend

BACKEND = backend.NAME
matmul = backend.matmul
matvec = backend.matvec
rref = backend.rref
det = backend.det
