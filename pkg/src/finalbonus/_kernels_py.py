"""Pure numpy implementation of the backward-induction kernels.

Used when the compiled ``_ckernels`` extension is unavailable, and as the
reference the compiled kernels are tested against.  Rows are state-indexed:
``table[i, j]`` for ``0 <= j <= i``; entries with ``j > i`` are left at zero.
"""

import numpy as np


def _final_row(alpha, beta, n, x):
    j = np.arange(n, dtype=float)
    q = (j + alpha) / (n - 1 + alpha + beta)
    # Alice on j points vs Bob on n-1-j, bonus x to the final-round winner
    up = (2 * j + x > n - 1).astype(float)
    down = (2 * j > n - 1 + x).astype(float)
    return q, up, down


def state_prob_table(alpha, beta, n):
    """Forward recursion for ``Pr[S_i = j]``, ``0 <= i <= n - 1``."""
    P = np.zeros((n, n))
    P[0, 0] = 1.0
    for i in range(n - 1):
        j = np.arange(i + 1, dtype=float)
        q = (j + alpha) / (i + alpha + beta)
        row = P[i, : i + 1]
        P[i + 1, : i + 1] += row * (1.0 - q)
        P[i + 1, 1 : i + 2] += row * q
    return P


def belief_table(alpha, beta, n, x):
    """``b[i, j] = Pr[Alice wins the match | S_i = j]`` for rows ``0..n-1``."""
    b = np.zeros((n, n))
    q, up, down = _final_row(alpha, beta, n, x)
    b[n - 1] = q * up + (1.0 - q) * down
    for i in range(n - 2, -1, -1):
        j = np.arange(i + 1, dtype=float)
        q = (j + alpha) / (i + alpha + beta)
        b[i, : i + 1] = q * b[i + 1, 1 : i + 2] + (1.0 - q) * b[i + 1, : i + 1]
    return b


def round_surprise(alpha, beta, n, x, P):
    """Expected ``|B_r - B_{r-1}|`` for ``r = 1..n`` (entry ``r - 1``).

    ``P`` is the table from :func:`state_prob_table`.  Only two belief rows
    are held at a time.
    """
    out = np.zeros(n)
    q, up, down = _final_row(alpha, beta, n, x)
    nxt = q * up + (1.0 - q) * down
    out[n - 1] = np.sum(P[n - 1] * (q * np.abs(up - nxt) + (1.0 - q) * np.abs(nxt - down)))
    for i in range(n - 2, -1, -1):
        j = np.arange(i + 1, dtype=float)
        q = (j + alpha) / (i + alpha + beta)
        hi = nxt[1 : i + 2]
        lo = nxt[: i + 1]
        cur = q * hi + (1.0 - q) * lo
        out[i] = np.sum(P[i, : i + 1] * (q * np.abs(hi - cur) + (1.0 - q) * np.abs(cur - lo)))
        nxt = cur
    return out
