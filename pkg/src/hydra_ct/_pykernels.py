"""Pure-Python hot kernels (fallback for ``_ckernels``).

Words are tuples of letter codes ``2 * generator + (sign < 0)``, so the
inverse of a code is ``code ^ 1``.
"""
from __future__ import annotations

import numpy as np


def reduce_codes(seq):
    out = []
    for c in seq:
        if out and out[-1] == c ^ 1:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def concat_reduce(u, v):
    n = min(len(u), len(v))
    last = len(u) - 1
    i = 0
    while i < n and u[last - i] == v[i] ^ 1:
        i += 1
    if i == 0:
        return u + v
    return u[: len(u) - i] + v[i:]


def invert_codes(w):
    return tuple(c ^ 1 for c in reversed(w))


def substitute(word, table, budget):
    """Replace each code by ``table[code]`` and freely reduce.

    Returns None once the running reduced length passes ``budget``.
    """
    out = []
    for c in word:
        for x in table[c]:
            if out and out[-1] == x ^ 1:
                out.pop()
            else:
                out.append(x)
        if len(out) > budget:
            return None
    return tuple(out)


def common_prefix(u, v):
    n = min(len(u), len(v))
    i = 0
    while i < n and u[i] == v[i]:
        i += 1
    return i


def four_point_max(dmat):
    """Max over 4-subsets of (largest - middle) of the three pair sums.

    That quantity is twice the four-point defect. Returns
    ``(value, (i, j, k, l))`` for the first maximising subset in
    lexicographic order, or ``(0, None)`` with fewer than four points.
    """
    d = np.asarray(dmat, dtype=np.int64)
    n = d.shape[0]
    if n < 4:
        return 0, None
    best = -1
    arg = None
    for i in range(n - 3):
        for j in range(i + 1, n - 2):
            m = n - j - 1
            dik = d[i, j + 1:]
            djk = d[j, j + 1:]
            s1 = d[i, j] + d[j + 1:, j + 1:]
            s2 = dik[:, None] + djk[None, :]
            s3 = djk[:, None] + dik[None, :]
            hi = np.maximum(np.maximum(s1, s2), s3)
            lo = np.minimum(np.minimum(s1, s2), s3)
            mid = s1 + s2 + s3 - hi - lo
            gap = hi - mid
            gap[np.tril_indices(m)] = -1
            flat = int(np.argmax(gap))
            val = int(gap.flat[flat])
            if val > best:
                best = val
                k, l = divmod(flat, m)
                arg = (i, j, j + 1 + k, j + 1 + l)
    return best, arg


def quad_gap(dmat, i, j, k, l):
    d = dmat
    s = sorted((d[i][j] + d[k][l], d[i][k] + d[j][l], d[i][l] + d[j][k]))
    return int(s[2] - s[1])
