"""Compiled inner loops for the selection search.

A selection space is described by ``options`` (shape ``(q+1, q)``: the
candidate lines of each class) and ``radix`` (how many of them are in play;
1 for a class held fixed).  Selection number ``idx`` is the mixed-radix
number whose most significant digit belongs to class 0.
"""

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

# indices into the ``bad`` counter array
IDENTITY, LOWER_F, LOWER_G, UPPER_H = 0, 1, 2, 3


@njit(cache=True)
def _add_line(line, counts, xh):
    for p in line:
        c = counts[p]
        xh[c] -= 1
        xh[c + 1] += 1
        counts[p] = c + 1


@njit(cache=True)
def _remove_line(line, counts, xh):
    for p in line:
        c = counts[p]
        xh[c] -= 1
        xh[c - 1] += 1
        counts[p] = c - 1


@njit(cache=True)
def _record(q, xh, key, hist, witness, bad, stop_size):
    """Tally one selection; returns its size."""
    n = q * q
    x0 = xh[0]
    j = q + 1
    while xh[j] == 0:
        j -= 1
    size = n - x0
    hist[size, j] += 1
    if witness[size] < 0:
        witness[size] = key

    s0 = 0
    s1 = 0
    s2 = 0
    for i in range(q + 2):
        s0 += xh[i]
        s1 += i * xh[i]
        s2 += i * (i - 1) * xh[i]
    if s0 != n or s1 != n + q or s2 != n + q:
        bad[IDENTITY] += 1
    k = q + 1 - j
    if x0 * (q + 1 - k) < q * k:
        bad[LOWER_F] += 1
    if x0 < k * (q - k):
        bad[LOWER_G] += 1
    if 2 * x0 > 2 * k * q - k * (k + 1):
        bad[UPPER_H] += 1
    return size


@njit(cache=True)
def scan_range(lines, options, radix, lo, hi, hist, witness, bad, stop_size):
    """Odometer over selections ``lo <= idx < hi`` with O(q) updates.

    Returns the first index whose size equals ``stop_size`` (scan stops
    there), or -1.
    """
    q = lines.shape[1]
    ncls = options.shape[0]
    digits = np.zeros(ncls, dtype=np.int64)
    rem = lo
    for c in range(ncls - 1, -1, -1):
        digits[c] = rem % radix[c]
        rem //= radix[c]

    counts = np.zeros(q * q, dtype=np.int64)
    xh = np.zeros(q + 2, dtype=np.int64)
    xh[0] = q * q
    for c in range(ncls):
        _add_line(lines[options[c, digits[c]]], counts, xh)

    idx = lo
    while idx < hi:
        size = _record(q, xh, idx, hist, witness, bad, stop_size)
        if size == stop_size:
            return idx
        idx += 1
        if idx >= hi:
            break
        c = ncls - 1
        while True:
            if radix[c] == 1:
                c -= 1
                continue
            _remove_line(lines[options[c, digits[c]]], counts, xh)
            digits[c] += 1
            if digits[c] == radix[c]:
                digits[c] = 0
                _add_line(lines[options[c, 0]], counts, xh)
                c -= 1
            else:
                _add_line(lines[options[c, digits[c]]], counts, xh)
                break
    return -1


@njit(cache=True)
def scan_list(lines, options, digit_rows, first_key, hist, witness, bad):
    """Evaluate explicit selections (one row of class digits each) from scratch."""
    q = lines.shape[1]
    counts = np.zeros(q * q, dtype=np.int64)
    xh = np.zeros(q + 2, dtype=np.int64)
    for r in range(digit_rows.shape[0]):
        counts[:] = 0
        xh[:] = 0
        xh[0] = q * q
        for c in range(options.shape[0]):
            _add_line(lines[options[c, digit_rows[r, c]]], counts, xh)
        _record(q, xh, first_key + r, hist, witness, bad, -1)
