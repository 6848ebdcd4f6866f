"""Backend selection for the search kernels.

The compiled extension is used when it imported and the instance fits in
int64; otherwise the pure-Python module runs the identical walk on
arbitrary-precision integers.
"""

import numpy as np

from . import _pykernels as python

try:
    from . import _kernels as compiled
except ImportError:  # extension not built
    compiled = None

EXHAUSTIVE = python.EXHAUSTIVE
BNB = python.BNB
BELOW = python.BELOW

BACKEND = "compiled" if compiled is not None else "python"

_INT64_SAFE = 1 << 62
_MAX_COLUMNS = 62


def _pick(backend, tables, columns):
    if backend == "python":
        return python
    fits = (columns <= _MAX_COLUMNS
            and all(abs(v) < _INT64_SAFE for t in tables for row in t for v in row))
    if backend == "compiled":
        if compiled is None:
            raise RuntimeError("compiled kernels are not available")
        if not fits:
            raise OverflowError("instance does not fit the compiled kernel")
        return compiled
    return compiled if (compiled is not None and fits) else python


def _as_args(module, *tables):
    if module is python:
        return [[list(row) for row in t] for t in tables]
    return [np.ascontiguousarray(np.array(t, dtype=np.int64).reshape(len(t), len(t)))
            for t in tables]


def correspondence_search(dx, dy, mode, want_all=False, bound=0,
                          lower_bound=0, seed=0, backend=None):
    module = _pick(backend, (dx, dy, [[bound, lower_bound, seed]]), len(dy))
    ax, ay = _as_args(module, dx, dy)
    best, results = module.correspondence_search(
        ax, ay, mode, want_all, bound, lower_bound, seed)
    if module is compiled:
        best = None if best is None else int(best)
        if mode == BELOW:
            results = [(int(v), tuple(int(r) for r in rows)) for v, rows in results]
        else:
            results = [tuple(int(r) for r in rows) for rows in results]
    return best, results


def bijection_search(dx, dy, exclude_identity=False, backend=None):
    module = _pick(backend, (dx, dy), len(dy))
    ax, ay = _as_args(module, dx, dy)
    best = module.bijection_search(ax, ay, exclude_identity)
    return None if best is None else int(best)
