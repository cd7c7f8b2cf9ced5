"""Words and automorphisms of a finitely generated free group.

A letter is a nonzero integer: +i stands for the i-th generator
(1-indexed), -i for its inverse.  A word is a tuple of letters with no
adjacent cancelling pair.  The fixed total order on letters used for
canonical forms puts all positive letters first, then all negative ones,
each block ordered by index:

    1 < 2 < ... < N < -1 < -2 < ... < -N
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence


def letter_key(letter: int) -> tuple[int, int]:
    """Sort key realising the canonical letter order."""
    return (0, letter) if letter > 0 else (1, -letter)


def word_key(letters: Sequence[int]) -> tuple:
    """Shortlex key: length first, then letterwise canonical order."""
    return (len(letters), tuple(letter_key(l) for l in letters))


def reduce_letters(letters: Iterable[int], rank: Optional[int] = None) -> tuple[int, ...]:
    """Freely reduce a raw letter sequence by stack cancellation."""
    out: list[int] = []
    for l in letters:
        if l == 0:
            raise ValueError("letter 0 is not allowed")
        if rank is not None and abs(l) > rank:
            raise ValueError(f"letter {l} out of range for rank {rank}")
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def _check_reduced(letters: tuple[int, ...]) -> None:
    for a, b in zip(letters, letters[1:]):
        if a == -b:
            raise ValueError(f"word {letters} is not freely reduced")
    if any(l == 0 for l in letters):
        raise ValueError("letter 0 is not allowed")


class Word:
    """A freely reduced word.  Immutable; equality and hashing by letters."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int] = ()):
        letters = tuple(letters)
        _check_reduced(letters)
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(("Word", self.letters))

    def __repr__(self) -> str:
        return f"Word({spell(self.letters)!r})"

    def __mul__(self, other: "Word") -> "Word":
        return Word(reduce_letters(self.letters + other.letters))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        w = Word()
        for _ in range(n):
            w = w * self
        return w

    def inverse(self) -> "Word":
        return Word(tuple(-l for l in reversed(self.letters)))

    def is_identity(self) -> bool:
        return not self.letters

    def conjugated_by(self, u: "Word") -> "Word":
        """u * self * u^-1."""
        return u * self * u.inverse()


def reduce(letters: Iterable[int], rank: Optional[int] = None) -> Word:
    """Freely reduce a raw letter sequence into a Word."""
    return Word(reduce_letters(letters, rank))


def canonical_rotation_index(letters: Sequence[int]) -> int:
    """Index of the least rotation in canonical letter order (Booth)."""
    n = len(letters)
    if n <= 1:
        return 0
    s = [letter_key(l) for l in letters]
    s = s + s
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n


def canonical_rotation(letters: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation in the canonical letter order."""
    letters = tuple(letters)
    k = canonical_rotation_index(letters)
    return letters[k:] + letters[:k]


class CyclicWord:
    """A cyclically reduced conjugacy class, stored in canonical rotation."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int] = ()):
        letters = tuple(letters)
        _check_reduced(letters)
        if letters and letters[0] == -letters[-1]:
            raise ValueError(f"{letters} is not cyclically reduced")
        object.__setattr__(self, "letters", canonical_rotation(letters))

    def __setattr__(self, name, value):
        raise AttributeError("CyclicWord is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicWord) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(("CyclicWord", self.letters))

    def __repr__(self) -> str:
        return f"CyclicWord({spell(self.letters)!r})"

    def inverse(self) -> "CyclicWord":
        return CyclicWord(tuple(-l for l in reversed(self.letters)))

    def is_identity(self) -> bool:
        return not self.letters

    def min_with_inverse(self) -> "CyclicWord":
        """Representative of the class up to inversion (least of the two)."""
        inv = self.inverse()
        return self if word_key(self.letters) <= word_key(inv.letters) else inv

    def as_word(self) -> Word:
        return Word(self.letters)


def cyclic_reduce(w: Word) -> tuple[CyclicWord, Word]:
    """Split w as conjugator * core * conjugator^-1 with core cyclically reduced.

    The core is returned in canonical rotation and the conjugator absorbs
    the rotation, so the identity w == c * core * c^-1 holds on the nose.
    """
    letters = w.letters
    i, j = 0, len(letters)
    while i < j - 1 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    prefix, core = letters[:i], letters[i:j]
    k = canonical_rotation_index(core)
    # core = u v with |u| = k, rotated = v u, so w = (prefix u) rotated (prefix u)^-1
    rotated = core[k:] + core[:k]
    conj = Word(reduce_letters(prefix + core[:k]))
    return CyclicWord(rotated), conj


def cyclic_word(letters: Iterable[int]) -> CyclicWord:
    """Cyclically reduce an arbitrary letter sequence to its class."""
    core, _ = cyclic_reduce(reduce(letters))
    return core


class AutoPair:
    """An automorphism of F_N given by generator images plus a verified inverse.

    ``fwd[i]`` is the image of generator i+1, ``inv[i]`` the image under the
    inverse automorphism.  Construction checks both round trips, so every
    AutoPair in circulation really is an automorphism.
    """

    __slots__ = ("fwd", "inv")

    def __init__(self, fwd: Sequence[Word], inv: Sequence[Word]):
        fwd = tuple(fwd)
        inv = tuple(inv)
        if len(fwd) != len(inv) or not fwd:
            raise ValueError("fwd and inv must be nonempty and of equal rank")
        object.__setattr__(self, "fwd", fwd)
        object.__setattr__(self, "inv", inv)
        rank = len(fwd)
        for words in (fwd, inv):
            for w in words:
                if any(abs(l) > rank for l in w.letters):
                    raise ValueError("generator image out of alphabet range")
        for i in range(rank):
            if self.apply_inv(fwd[i]).letters != (i + 1,):
                raise ValueError(f"inverse check failed on generator {i + 1}")
            if self.apply(inv[i]).letters != (i + 1,):
                raise ValueError(f"forward check failed on generator {i + 1}")

    def __setattr__(self, name, value):
        raise AttributeError("AutoPair is immutable")

    @property
    def rank(self) -> int:
        return len(self.fwd)

    def __eq__(self, other) -> bool:
        return isinstance(other, AutoPair) and self.fwd == other.fwd

    def __hash__(self) -> int:
        return hash(("AutoPair", self.fwd))

    def __repr__(self) -> str:
        images = ", ".join(
            f"{spell((i + 1,))}->{spell(w.letters)}" for i, w in enumerate(self.fwd)
        )
        return f"AutoPair({images})"

    def _substitute(self, images: Sequence[Word], letters: Sequence[int]) -> Word:
        out: list[int] = []
        for l in letters:
            img = images[abs(l) - 1].letters
            if l < 0:
                img = tuple(-x for x in reversed(img))
            for x in img:
                if out and out[-1] == -x:
                    out.pop()
                else:
                    out.append(x)
        return Word(tuple(out))

    def apply(self, w: Word) -> Word:
        """Reduced image of w under the automorphism."""
        return self._substitute(self.fwd, w.letters)

    def apply_inv(self, w: Word) -> Word:
        return self._substitute(self.inv, w.letters)

    def apply_class(self, c: CyclicWord) -> CyclicWord:
        core, _ = cyclic_reduce(self.apply(Word(c.letters)))
        return core

    def inverted(self) -> "AutoPair":
        return AutoPair(self.inv, self.fwd)

    def is_identity(self) -> bool:
        return all(w.letters == (i + 1,) for i, w in enumerate(self.fwd))

    def power(self, n: int) -> "AutoPair":
        base = self if n >= 0 else self.inverted()
        result = identity_auto(self.rank)
        for _ in range(abs(n)):
            result = compose(result, base)
        return result


def compose(phi: AutoPair, psi: AutoPair) -> AutoPair:
    """The automorphism  w |-> phi(psi(w)).

    This is the one place fixing the composition order: with points of
    outer space acted on the right, act(act(x, phi), psi) equals
    act(x, compose(phi, psi)).
    """
    if phi.rank != psi.rank:
        raise ValueError("rank mismatch")
    fwd = tuple(phi.apply(w) for w in psi.fwd)
    inv = tuple(psi.apply_inv(w) for w in phi.inv)
    return AutoPair(fwd, inv)


def is_inner(psi: AutoPair) -> Optional[Word]:
    """Return w with psi(x_i) = w x_i w^-1 for all i, or None.

    Uses that the centraliser of x_1 is generated by x_1: if
    psi(x_1) = u x_1 u^-1 then any conjugator has the form u x_1^k, and
    only finitely many k are compatible with the length of psi(x_2).
    """
    rank = psi.rank
    if rank == 1:
        return Word() if psi.is_identity() else None
    core, u = cyclic_reduce(psi.fwd[0])
    if core.letters != (1,):
        return None
    # Valid k are bounded: beyond |u^-1 psi(x_2) u| + 1 no cancellation
    # pattern can bring x_1^-k v x_1^k down to a single letter.
    v = u.inverse() * psi.fwd[1] * u
    bound = len(v) + 1
    x1 = Word((1,))
    for k in range(-bound, bound + 1):
        w = u * x1**k
        if all(psi.fwd[i] == Word((i + 1,)).conjugated_by(w) for i in range(rank)):
            return w
    return None


def outer_equal(phi: AutoPair, psi: AutoPair) -> bool:
    """Whether phi and psi agree as outer automorphisms."""
    return is_inner(compose(phi, psi.inverted())) is not None


def inner_auto(rank: int, w: Word) -> AutoPair:
    """Conjugation x |-> w x w^-1 as an AutoPair."""
    fwd = tuple(Word((i + 1,)).conjugated_by(w) for i in range(rank))
    inv = tuple(Word((i + 1,)).conjugated_by(w.inverse()) for i in range(rank))
    return AutoPair(fwd, inv)


def identity_auto(rank: int) -> AutoPair:
    gens = tuple(Word((i + 1,)) for i in range(rank))
    return AutoPair(gens, gens)


def permutation_auto(rank: int, perm: Sequence[int]) -> AutoPair:
    """x_i |-> x_{perm[i-1]} for a permutation of 1..rank (1-indexed values)."""
    if sorted(perm) != list(range(1, rank + 1)):
        raise ValueError("not a permutation of 1..rank")
    fwd = tuple(Word((perm[i],)) for i in range(rank))
    inv_table = [0] * rank
    for i, p in enumerate(perm):
        inv_table[p - 1] = i + 1
    inv = tuple(Word((inv_table[i],)) for i in range(rank))
    return AutoPair(fwd, inv)


def inversion_auto(rank: int, i: int) -> AutoPair:
    """x_i |-> x_i^-1, other generators fixed."""
    fwd = tuple(Word((-(j + 1),) if j + 1 == i else (j + 1,)) for j in range(rank))
    return AutoPair(fwd, fwd)


def transvection_auto(rank: int, i: int, j: int, side: str = "right") -> AutoPair:
    """x_i |-> x_i x_j (side 'right') or x_j x_i (side 'left'); j may be negative."""
    if i == abs(j) or not (1 <= i <= rank) or not (1 <= abs(j) <= rank):
        raise ValueError("transvection needs distinct generator indices in range")
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    fwd, inv = [], []
    for k in range(1, rank + 1):
        if k != i:
            fwd.append(Word((k,)))
            inv.append(Word((k,)))
        elif side == "right":
            fwd.append(Word((i, j)))
            inv.append(Word((i, -j)))
        else:
            fwd.append(Word((j, i)))
            inv.append(Word((-j, i)))
    return AutoPair(tuple(fwd), tuple(inv))


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def spell(letters: Iterable[int]) -> str:
    """Render letters as a compact string, uppercase marking inverses."""
    out = []
    for l in letters:
        if abs(l) > 26:
            out.append(f"x{l}" if l > 0 else f"X{-l}")
        else:
            c = _LETTERS[abs(l) - 1]
            out.append(c if l > 0 else c.upper())
    return "".join(out) if out else "1"


def parse_letters(text: str) -> tuple[int, ...]:
    """Parse 'a b A c' or compact 'abAc' into letters (no reduction)."""
    tokens = text.split() if any(ch.isspace() for ch in text.strip()) else list(text.strip())
    letters = []
    for tok in tokens:
        if tok == "1":
            continue
        if len(tok) == 1 and tok.lower() in _LETTERS:
            idx = _LETTERS.index(tok.lower()) + 1
            letters.append(idx if tok.islower() else -idx)
        else:
            try:
                letters.append(int(tok))
            except ValueError:
                raise ValueError(f"cannot parse letter {tok!r}")
    if any(l == 0 for l in letters):
        raise ValueError("letter 0 is not allowed")
    return tuple(letters)


def parse_word(text: str) -> Word:
    return reduce(parse_letters(text))
