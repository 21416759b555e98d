"""Global numeric defaults and budgets."""
import os

#: default tolerance for floating point identity checks
DEFAULT_TOL = 1e-9

#: largest dimension kept as a dense matrix
DENSE_MAX_DIM = 4096

#: hard limit on |G|**|support| for materialized operators
DIMENSION_BUDGET = 2 ** 24

#: limit on complex entries of a probe array (frame size times vector dimension)
PROBE_BUDGET = 2 ** 23

#: limit on the number of stored amplitudes in a sparse state
STATE_BUDGET = 2 ** 24


def numba_requested() -> bool:
    """True unless the pure-numpy fallback is forced via ``QDOUBLE_NO_NUMBA``."""
    flag = os.environ.get("QDOUBLE_NO_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")
