"""Compiled depth-first search behind the brute-force stretch oracle.

Same algorithm as the pure-Python search in :mod:`outerspace.metric`:
iterate over reduced words whose first letter is minimal, maintain the
based realisations in both marked graphs incrementally, and evaluate the
cyclic length ratio of every cyclically reduced word.  Appending a reduced
petal path to a reduced stack cancels only along a pop prefix, so each
step journals (popped darts, push count) and backtracking replays the
journal.  All arithmetic is integer; the caller scales rational edge
lengths and guards against overflow.
"""

import numba
import numpy as np


@numba.njit(cache=True)
def dfs_max_ratio(xflat, xoff, xlen, yflat, yoff, ylen, ncodes, max_length):
    max_petal = 1
    for i in range(ncodes):
        if xoff[i + 1] - xoff[i] > max_petal:
            max_petal = xoff[i + 1] - xoff[i]
        if yoff[i + 1] - yoff[i] > max_petal:
            max_petal = yoff[i + 1] - yoff[i]
    cap = max_length * max_petal + 2

    xstack = np.empty(cap, dtype=np.int64)
    ystack = np.empty(cap, dtype=np.int64)
    word = np.empty(max_length + 1, dtype=np.int64)
    next_code = np.empty(max_length + 1, dtype=np.int64)
    # journals: popped darts and counts per depth
    xpopped = np.empty((max_length + 1, max_petal), dtype=np.int64)
    ypopped = np.empty((max_length + 1, max_petal), dtype=np.int64)
    xpop_n = np.empty(max_length + 1, dtype=np.int64)
    ypop_n = np.empty(max_length + 1, dtype=np.int64)
    xpush_n = np.empty(max_length + 1, dtype=np.int64)
    ypush_n = np.empty(max_length + 1, dtype=np.int64)

    best_num = np.int64(0)
    best_den = np.int64(1)

    for first in range(ncodes):
        depth = 0
        xtop = 0
        ytop = 0
        pending = first
        entering = True
        while True:
            if entering:
                code = pending
                # push x realisation of `code`, journaling at this depth
                npop = 0
                k = xoff[code]
                end = xoff[code + 1]
                while k < end and xtop > 0 and xstack[xtop - 1] == -xflat[k]:
                    xpopped[depth, npop] = xstack[xtop - 1]
                    xtop -= 1
                    npop += 1
                    k += 1
                xpop_n[depth] = npop
                xpush_n[depth] = end - k
                while k < end:
                    xstack[xtop] = xflat[k]
                    xtop += 1
                    k += 1
                # same for y
                npop = 0
                k = yoff[code]
                end = yoff[code + 1]
                while k < end and ytop > 0 and ystack[ytop - 1] == -yflat[k]:
                    ypopped[depth, npop] = ystack[ytop - 1]
                    ytop -= 1
                    npop += 1
                    k += 1
                ypop_n[depth] = npop
                ypush_n[depth] = end - k
                while k < end:
                    ystack[ytop] = yflat[k]
                    ytop += 1
                    k += 1

                word[depth] = code
                depth += 1
                # evaluate when cyclically reduced
                if (word[0] ^ 1) != code:
                    i = 0
                    j = xtop
                    while i < j - 1 and xstack[i] == -xstack[j - 1]:
                        i += 1
                        j -= 1
                    lx = np.int64(0)
                    for k in range(i, j):
                        e = xstack[k]
                        if e < 0:
                            e = -e
                        lx += xlen[e - 1]
                    i = 0
                    j = ytop
                    while i < j - 1 and ystack[i] == -ystack[j - 1]:
                        i += 1
                        j -= 1
                    ly = np.int64(0)
                    for k in range(i, j):
                        e = ystack[k]
                        if e < 0:
                            e = -e
                        ly += ylen[e - 1]
                    if lx > 0 and ly * best_den > best_num * lx:
                        best_num = ly
                        best_den = lx
                next_code[depth] = first if depth < max_length else ncodes
                entering = False
            else:
                if depth == 0:
                    break
                code = next_code[depth]
                found = -1
                while code < ncodes:
                    if (code ^ 1) != word[depth - 1]:
                        found = code
                        break
                    code += 1
                if found >= 0:
                    next_code[depth] = found + 1
                    pending = found
                    entering = True
                else:
                    # backtrack: undo the letter at depth-1
                    depth -= 1
                    if xpush_n[depth] > 0:
                        xtop -= xpush_n[depth]
                    for k in range(xpop_n[depth] - 1, -1, -1):
                        xstack[xtop] = xpopped[depth, k]
                        xtop += 1
                    if ypush_n[depth] > 0:
                        ytop -= ypush_n[depth]
                    for k in range(ypop_n[depth] - 1, -1, -1):
                        ystack[ytop] = ypopped[depth, k]
                        ytop += 1
                    if depth == 0:
                        break
    return best_num, best_den
