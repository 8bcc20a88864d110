"""Words in the free group on the indexed alphabet ``{S_k}``.

A word is stored as a tuple of ``(subscript, exponent)`` letters with
exponent ``+1`` or ``-1``.  The stored form need not be reduced.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

Letter = tuple[int, int]


@dataclass(frozen=True)
class SWord:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple((int(k), int(e)) for k, e in self.letters)
        for _, e in letters:
            if e not in (1, -1):
                raise ValueError(f"exponent must be +1 or -1, got {e}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Letter]) -> "SWord":
        return cls(tuple(pairs))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "SWord") -> "SWord":
        return concat(self, other)

    def __pow__(self, n: int) -> "SWord":
        return power(self, n)

    def __invert__(self) -> "SWord":
        return invert(self)

    def __str__(self):
        return format_word(self)

    def to_json(self) -> list:
        return [[k, e] for k, e in self.letters]

    @classmethod
    def from_json(cls, data) -> "SWord":
        return cls(tuple((k, e) for k, e in data))

    def subscripts(self) -> set[int]:
        return {k for k, _ in self.letters}


EMPTY = SWord()


def letter(k: int, e: int = 1) -> SWord:
    return SWord(((k, e),))


def concat(*words: SWord) -> SWord:
    out = []
    for w in words:
        out.extend(w.letters)
    return SWord(tuple(out))


def invert(w: SWord) -> SWord:
    return SWord(tuple((k, -e) for k, e in reversed(w.letters)))


def power(w: SWord, n: int) -> SWord:
    """``w^n``; negative ``n`` gives a power of the inverse."""
    if n < 0:
        return power(invert(w), -n)
    return SWord(w.letters * n)


def shift(w: SWord, k: int) -> SWord:
    return SWord(tuple((s + k, e) for s, e in w.letters))


def free_reduce(w: SWord) -> SWord:
    stack: list[Letter] = []
    for k, e in w.letters:
        if stack and stack[-1] == (k, -e):
            stack.pop()
        else:
            stack.append((k, e))
    return SWord(tuple(stack))


def cyclic_reduce(w: SWord) -> SWord:
    letters = free_reduce(w).letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == (letters[j][0], -letters[j][1]):
        i += 1
        j -= 1
    return SWord(letters[i:j + 1])


def _find(haystack: list, needle: list) -> int:
    # Knuth-Morris-Pratt, returns the first index or -1
    if not needle:
        return 0
    fail = [0] * len(needle)
    k = 0
    for i in range(1, len(needle)):
        while k and needle[i] != needle[k]:
            k = fail[k - 1]
        if needle[i] == needle[k]:
            k += 1
        fail[i] = k
    k = 0
    for i, x in enumerate(haystack):
        while k and x != needle[k]:
            k = fail[k - 1]
        if x == needle[k]:
            k += 1
            if k == len(needle):
                return i - k + 1
    return -1


def is_rotation(u: SWord, v: SWord) -> bool:
    """True if the letter sequences of ``u`` and ``v`` are cyclic rotations."""
    if len(u) != len(v):
        return False
    return _find(list(u.letters) * 2, list(v.letters)) >= 0


def cyclically_equal(u: SWord, v: SWord) -> bool:
    """True iff ``u`` and ``v`` are conjugate in the free group."""
    return is_rotation(cyclic_reduce(u), cyclic_reduce(v))


def rotate(w: SWord, k: int) -> SWord:
    if not w.letters:
        return w
    k %= len(w)
    return SWord(w.letters[k:] + w.letters[:k])


class AbelianVector(dict):
    """Sparse integer vector indexed by subscripts; zero entries are dropped."""

    def __init__(self, data=None):
        super().__init__()
        if data:
            for k, v in dict(data).items():
                if v:
                    self[int(k)] = int(v)

    def __add__(self, other):
        out = Counter(self)
        out.update(other)
        return AbelianVector(out)

    def __neg__(self):
        return AbelianVector({k: -v for k, v in self.items()})

    def __sub__(self, other):
        return self + (-AbelianVector(other))

    def scale(self, c: int) -> "AbelianVector":
        return AbelianVector({k: c * v for k, v in self.items()})

    def shifted(self, k: int) -> "AbelianVector":
        return AbelianVector({s + k: v for s, v in self.items()})

    def dense(self, lo: int, hi: int) -> list[int]:
        """Coefficients for subscripts ``lo..hi`` inclusive."""
        return [self.get(k, 0) for k in range(lo, hi + 1)]


def abelianize(w: SWord) -> AbelianVector:
    out: Counter = Counter()
    for k, e in w.letters:
        out[k] += e
    return AbelianVector(out)


_TOKEN = re.compile(r"S_?\{?(-?\d+)\}?(?:\^\{?(-?1)\}?)?")


def parse_word(text: str) -> SWord:
    """Parse ``"S_3 S_0^-1 S_-1"``; ``"1"`` or an empty string is the identity."""
    text = text.strip()
    if text in ("", "1"):
        return EMPTY
    letters = []
    for tok in text.split():
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise ValueError(f"bad letter {tok!r}")
        letters.append((int(m.group(1)), int(m.group(2) or 1)))
    return SWord(tuple(letters))


def format_word(w: SWord) -> str:
    if not w.letters:
        return "1"
    return " ".join(f"S_{k}" if e == 1 else f"S_{k}^-1" for k, e in w.letters)
