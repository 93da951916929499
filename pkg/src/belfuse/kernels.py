"""Kernel backend selected at import.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module. Set ``BELFUSE_PURE_PYTHON=1`` to force the
fallback.
"""

import os

from . import _pykernels
from ._pykernels import (  # noqa: F401  (mode constants are shared)
    CONJ,
    DELTA_CONST,
    DELTA_JACCARD,
    DELTA_MINCARD,
    DISJ,
    DUBOIS_PRADE,
    PCR6,
)

_ckernels = None
if not os.environ.get("BELFUSE_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:
        _ckernels = None

backend = _ckernels if _ckernels is not None else _pykernels
BACKEND_NAME = "cython" if _ckernels is not None else "python"

combine_pair = backend.combine_pair
combine_tuples = backend.combine_tuples
mixed_pair = backend.mixed_pair
jousselme_sq = backend.jousselme_sq
zeta = backend.zeta


def available_backends() -> dict:
    """Name -> module for every importable backend."""
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["cython"] = _ckernels
    else:
        try:
            from . import _ckernels as ck
        except ImportError:
            pass
        else:
            out["cython"] = ck
    return out
