"""Stretching factors, candidate loops, brute-force oracle and balls."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graphs import enumerate_candidates
from .marked import CVPoint, SimplexRef
from .words import CyclicWord, word_key


@dataclass(frozen=True)
class StretchResult:
    value: Fraction
    witness: CyclicWord


def candidates_of(simplex: SimplexRef) -> tuple[CyclicWord, ...]:
    """Candidate conjugacy classes of a simplex.

    Candidate loops of the underlying graph are read through the marking and
    deduplicated as classes up to inversion; the list depends only on the
    simplex and is cached on it.
    """
    if "candidates" not in simplex._cache:
        seen = set()
        words = []
        for loop in enumerate_candidates(simplex.graph):
            w = simplex.marked.read_loop(loop.path).min_with_inverse()
            if w.letters and w not in seen:
                seen.add(w)
                words.append(w)
        words.sort(key=lambda w: word_key(w.letters))
        simplex._cache["candidates"] = tuple(words)
    return simplex._cache["candidates"]


def stretch(x: CVPoint, y: CVPoint) -> StretchResult:
    """The exact stretching factor from x to y with a maximising candidate.

    The maximum of length ratios over the candidates of x realises the
    supremum over all conjugacy classes.  Ties go to the shortlex-least
    candidate.
    """
    if x.rank != y.rank:
        raise ValueError("rank mismatch")
    if not x.is_open():
        raise ValueError("zero-length edge in the source: infinite stretch risk")
    best: Optional[Fraction] = None
    witness: Optional[CyclicWord] = None
    for c in candidates_of(x.simplex()):
        ratio = y.translation_length(c) / x.translation_length(c)
        if best is None or ratio > best:
            best, witness = ratio, c
    return StretchResult(best, witness)


def ball_membership(x: CVPoint, centre: CVPoint, r, kind: str = "symmetric") -> bool:
    """Membership of x in the closed ball of radius r around the centre."""
    r = Fraction(r)
    if kind == "in":
        return stretch(x, centre).value <= r
    if kind == "out":
        return stretch(centre, x).value <= r
    if kind == "symmetric":
        return stretch(x, centre).value * stretch(centre, x).value <= r
    raise ValueError("kind must be 'symmetric', 'in' or 'out'")


# --- brute-force oracle --------------------------------------------------------


def _letter_realizations(point: CVPoint) -> tuple[list[tuple[int, ...]], list[int], int]:
    """Per-letter dart paths plus integer edge lengths with common scale."""
    rank = point.rank
    paths = []
    for i in range(rank):
        fwd = point.marked.petals[i].darts
        paths.append(fwd)
        paths.append(tuple(-d for d in reversed(fwd)))
    scale = math.lcm(*[l.denominator for l in point.lengths])
    int_lengths = [int(l * scale) for l in point.lengths]
    return paths, int_lengths, scale


def _code(letter: int) -> int:
    # generator i -> 2(i-1), inverse -> 2(i-1)+1
    return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1


def stretch_bruteforce(x: CVPoint, y: CVPoint, max_length: int,
                       engine: str = "auto") -> Fraction:
    """Maximum of l_y / l_x over all conjugacy classes of word length <= L.

    Independent of the candidates machinery: a depth-first search over
    reduced words, evaluating every cyclically reduced one through both
    markings.  Only words whose first letter is minimal among their letters
    are visited, which covers every class at least once.  Nondecreasing in
    L and equal to the stretching factor once L is at least twice the edge
    count of x times the largest backward word of its marking.

    engine 'python' forces the readable reference search, 'numba' the
    compiled one; 'auto' prefers the compiled search when usable.
    """
    if x.rank != y.rank:
        raise ValueError("rank mismatch")
    if not x.is_open():
        raise ValueError("zero-length edge in the source")
    if engine not in ("auto", "python", "numba"):
        raise ValueError("engine must be 'auto', 'python' or 'numba'")
    if engine != "python":
        kernel = _numba_kernel()
        if kernel is None and engine == "numba":
            raise RuntimeError("numba is not available")
        if kernel is not None:
            result = _run_kernel(kernel, x, y, max_length)
            if result is not None:
                return result
            if engine == "numba":
                raise RuntimeError("lengths too large for the compiled search")
    return _bruteforce_python(x, y, max_length)


def _bruteforce_python(x: CVPoint, y: CVPoint, max_length: int) -> Fraction:
    rank = x.rank
    xpaths, xlen, _ = _letter_realizations(x)
    ypaths, ylen, _ = _letter_realizations(y)
    ncodes = 2 * rank

    best_num, best_den = 0, 1  # ratio 0/1, beaten by any real class

    xstack: list[int] = []
    ystack: list[int] = []
    word: list[int] = []

    def push(stack, path):
        """Append a reduced path to a reduced stack; cancellation happens in
        a pop prefix, so the journal is (popped darts, pushed count)."""
        k = 0
        popped = []
        while k < len(path) and stack and stack[-1] == -path[k]:
            popped.append(stack.pop())
            k += 1
        stack.extend(path[k:])
        return popped, len(path) - k

    def unpush(stack, journal):
        popped, pushed = journal
        if pushed:
            del stack[-pushed:]
        stack.extend(reversed(popped))

    def cyclic_value(stack, lengths) -> int:
        i, j = 0, len(stack)
        while i < j - 1 and stack[i] == -stack[j - 1]:
            i += 1
            j -= 1
        total = 0
        for k in range(i, j):
            total += lengths[abs(stack[k]) - 1]
        return total

    def visit(code_min: int, last_code: int, depth: int):
        nonlocal best_num, best_den
        for code in range(code_min, ncodes):
            if (code ^ 1) == last_code:
                continue
            word.append(code)
            xj = push(xstack, xpaths[code])
            yj = push(ystack, ypaths[code])
            if (word[0] ^ 1) != code:  # cyclically reduced
                lx = cyclic_value(xstack, xlen)
                ly = cyclic_value(ystack, ylen)
                if lx > 0 and ly * best_den > best_num * lx:
                    best_num, best_den = ly, lx
            if depth + 1 < max_length:
                visit(code_min, code, depth + 1)
            unpush(ystack, yj)
            unpush(xstack, xj)
            word.pop()

    for first in range(ncodes):
        word.append(first)
        push(xstack, xpaths[first])
        push(ystack, ypaths[first])
        lx = cyclic_value(xstack, xlen)
        ly = cyclic_value(ystack, ylen)
        if lx > 0 and ly * best_den > best_num * lx:
            best_num, best_den = ly, lx
        if max_length > 1:
            visit(first, first, 1)
        xstack.clear()
        ystack.clear()
        word.pop()

    xscale = math.lcm(*[l.denominator for l in x.lengths])
    yscale = math.lcm(*[l.denominator for l in y.lengths])
    return Fraction(best_num, best_den) * Fraction(xscale, yscale)


def _numba_kernel():
    try:
        from ._bruteforce import dfs_max_ratio
    except Exception:
        return None
    return dfs_max_ratio


def _run_kernel(kernel, x: CVPoint, y: CVPoint, max_length: int) -> Optional[Fraction]:
    import numpy as np

    xpaths, xlen, xscale = _letter_realizations(x)
    ypaths, ylen, yscale = _letter_realizations(y)
    max_petal = max(len(p) for p in xpaths + ypaths)
    # int64 safety: products of two cyclic lengths must not overflow
    bound = max_length * max_petal * max(max(xlen), max(ylen))
    if bound * bound >= 2**62:
        return None

    def pack(paths):
        offsets = np.zeros(len(paths) + 1, dtype=np.int64)
        flat = []
        for i, p in enumerate(paths):
            flat.extend(p)
            offsets[i + 1] = len(flat)
        return np.array(flat, dtype=np.int64), offsets

    xflat, xoff = pack(xpaths)
    yflat, yoff = pack(ypaths)
    num, den = kernel(xflat, xoff, np.array(xlen, dtype=np.int64),
                      yflat, yoff, np.array(ylen, dtype=np.int64),
                      2 * x.rank, max_length)
    return Fraction(int(num), int(den)) * Fraction(xscale, yscale)


def quasi_symmetry_sample(pairs) -> float:
    """Largest observed log Lambda(x,y) / log Lambda(y,x) over sample pairs.

    Purely an empirical statistic: no bound is asserted anywhere, the
    quasi-symmetry constant of the thick part has no usable formula.
    """
    worst = 1.0
    for x, y in pairs:
        a = stretch(x, y).value
        b = stretch(y, x).value
        if a == 1 or b == 1:
            continue
        ratio = math.log(a) / math.log(b)
        worst = max(worst, ratio, 1 / ratio)
    return worst
