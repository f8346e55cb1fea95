"""Selection layer for the sweep pre-filter kernel.

Two interchangeable kernels implement the same contract (see
``_prefilter_pure.filter_chunk``): a compiled extension working in 128-bit
integers and a pure Python fallback with unbounded integers.  The compiled
kernel is picked at import time when it built successfully *and* the sweep
parameters provably fit in 128 bits; otherwise the pure kernel is used.

The filter is a sound rejection test: a matrix whose function is constant
agrees with its forced constant at every valid sample point, so no rigid
matrix is ever rejected.  Survivors still go through the full symbolic
check.
"""

from __future__ import annotations

from typing import Callable, Sequence, Tuple

from ._prefilter_pure import filter_chunk as filter_chunk_pure

try:
    from ._prefilter_fast import filter_chunk as filter_chunk_fast
except ImportError:  # extension not built; pure fallback
    filter_chunk_fast = None

HAVE_COMPILED = filter_chunk_fast is not None

# Exact sample points (z, x, y) used by the sweeps.  Any |z| >= 2 avoids all
# denominator roots.
T_POINTS: Tuple[int, ...] = (2, 1, 1, 2, 2, 1, 3, 1, 1, 3, 2, 1)
L_POINTS: Tuple[int, ...] = (2, 1, 1, 3, 1, 1)

# Leave one bit of slack below the signed 128-bit boundary.
_INT128_LIMIT = 1 << 126

FilterFn = Callable[..., None]


def sample_points(mode: str) -> Tuple[int, ...]:
    if mode == "T":
        return T_POINTS
    if mode == "L":
        return L_POINTS
    raise ValueError(f"mode must be 'T' or 'L', got {mode!r}")


def int128_headroom(m: int, n: int, bound: int, points: Sequence[int]) -> bool:
    """Whether every intermediate the kernel forms fits a signed int128.

    The bound is the worst case over candidates with ``m`` rows, ``n``
    weights per row, all |weights| <= ``bound``, at the given sample
    points, computed with exact Python integers.
    """
    zmax = max(abs(points[3 * p]) for p in range(len(points) // 3))
    xmax = max(abs(points[3 * p + 1]) for p in range(len(points) // 3))
    ymax = max(abs(points[3 * p + 2]) for p in range(len(points) // 3))
    term_num = max(xmax, ymax) * zmax**bound + max(xmax, ymax)
    term_den = zmax**bound
    row_num = term_num**n
    row_den = term_den**n
    total_den = row_den**m
    total_num = m * row_num * row_den ** (m - 1)
    const_max = m * max(xmax, ymax, 1) ** n
    return max(total_num, const_max * total_den) < _INT128_LIMIT


def select_filter(m: int, n: int, bound: int, points: Sequence[int]) -> Tuple[FilterFn, str]:
    """Best kernel for the given sweep parameters, plus its name."""
    if filter_chunk_fast is not None and int128_headroom(m, n, bound, points):
        return filter_chunk_fast, "compiled"
    return filter_chunk_pure, "pure"
