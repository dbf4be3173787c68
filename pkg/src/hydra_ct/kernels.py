"""Kernel backend selection.

The compiled extension is used when importable; set ``HYDRA_CT_PURE=1``
to force the pure-Python fallback.
"""
from __future__ import annotations

import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("HYDRA_CT_PURE"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if _active is compiled_backend else "python"

reduce_codes = _active.reduce_codes
concat_reduce = _active.concat_reduce
invert_codes = _active.invert_codes
substitute = _active.substitute
common_prefix = _active.common_prefix
four_point_max = _active.four_point_max
quad_gap = _active.quad_gap

KERNEL_NAMES = ("reduce_codes", "concat_reduce", "invert_codes", "substitute",
                "common_prefix", "four_point_max", "quad_gap")
