"""Co-prime pairs ``(p, q)`` naming two-bridge links ``L(p/q)``.

A pair is canonical when ``p > |q| > 0`` and ``q`` is odd.  The sign
sequence ``epsilon`` and the partial sums ``sigma`` defined here drive
everything downstream: the Schubert relator, the rewritten relator
``R_0`` and the cycle graph.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd


class NotTwoBridgeError(ValueError):
    """Raised for fractions that do not name a two-bridge link."""


@dataclass(frozen=True)
class CoprimePair:
    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p < 2:
            raise NotTwoBridgeError(f"not a two-bridge link: p={p}")
        if q % 2 == 0 or not -p < q < p or gcd(p, q) != 1:
            raise NotTwoBridgeError(f"({p}, {q}) is not canonical; use normalize()")

    def __str__(self):
        return f"{self.p}/{self.q}"

    @property
    def is_knot(self) -> bool:
        return self.p % 2 == 1

    @cached_property
    def _eps(self) -> tuple[int, ...]:
        p, q = self.p, self.q
        return tuple(1 if ((i * q) // p) % 2 == 0 else -1 for i in range(2 * p))

    @cached_property
    def _prefix(self) -> tuple[int, ...]:
        out = [0]
        for e in self._eps:
            out.append(out[-1] + e)
        return tuple(out)

    def epsilon(self, i: int) -> int:
        # (-1)^floor(iq/p) has period 2p since q is odd
        return self._eps[i % (2 * self.p)]

    def sigma(self, i: int) -> int:
        """Partial sums of ``epsilon``.

        For ``i > 0`` this is ``eps_0 + ... + eps_{i-1}``; for ``i < 0`` it is
        ``eps_i + ... + eps_{-1}`` (note: not the periodic extension).
        """
        two_p = 2 * self.p
        if i >= 0:
            return self._prefix[i % two_p]
        k = (-i) % two_p
        # sum of eps_j for j in [-k, -1] == sum over [2p-k, 2p-1]
        return self._prefix[two_p] - self._prefix[two_p - k]

    def sigmas(self) -> tuple[int, ...]:
        """``sigma_0, ..., sigma_{2p}``."""
        return self._prefix

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q}

    @classmethod
    def from_json(cls, data: dict) -> "CoprimePair":
        return cls(int(data["p"]), int(data["q"]))


def normalize(p: int, q: int) -> CoprimePair:
    """Return the canonical pair equivalent to ``p/q``.

    ``q`` is reduced modulo ``2p`` into ``(-p, p)``.  An even ``q`` (only
    possible for knots) is replaced by the odd representative ``q +- p``,
    which is the same residue modulo ``p``.

    >>> normalize(4, 5)
    CoprimePair(p=4, q=-3)
    >>> normalize(17, 30)
    CoprimePair(p=17, q=13)
    """
    if p < 2:
        raise NotTwoBridgeError(f"not a two-bridge link: p={p}")
    if gcd(p, q) != 1:
        raise NotTwoBridgeError(f"gcd({p}, {q}) != 1")
    q = _centered(q, 2 * p)
    if q % 2 == 0:
        q = q + p if q < 0 else q - p
    return CoprimePair(p, q)


def _centered(x: int, n: int) -> int:
    x %= n
    if x > n // 2:
        x -= n
    return x


def parse_fraction(text: str) -> CoprimePair:
    """Parse ``"p/q"`` into a canonical pair."""
    m = re.fullmatch(r"\s*(-?\d+)\s*/\s*(-?\d+)\s*", text)
    if not m:
        raise NotTwoBridgeError(f"cannot parse fraction {text!r}")
    p, q = int(m.group(1)), int(m.group(2))
    if p < 0:
        p, q = -p, -q
    return normalize(p, q)


def oriented_equivalent(a: CoprimePair, b: CoprimePair) -> bool:
    if a.p != b.p:
        return False
    n = 2 * a.p
    return (a.q - b.q) % n == 0 or (a.q * b.q) % n == 1


def unoriented_equivalent(a: CoprimePair, b: CoprimePair) -> bool:
    if a.p != b.p:
        return False
    n = a.p
    return (a.q - b.q) % n == 0 or (a.q * b.q) % n == 1 % n


def mirror(a: CoprimePair) -> CoprimePair:
    return normalize(a.p, -a.q)


def reverse_component(a: CoprimePair) -> CoprimePair:
    """Reverse the orientation of one component of a two-component link."""
    if a.is_knot:
        raise NotTwoBridgeError(f"{a} is a knot; knot has one component")
    shifted = a.q - a.p if a.q > 0 else a.q + a.p
    return normalize(a.p, shifted)


def canonical_pairs(max_p: int, min_p: int = 2, positive_only: bool = False):
    """Yield every canonical pair with ``min_p <= p <= max_p``."""
    for p in range(max(min_p, 2), max_p + 1):
        lo = 1 if positive_only else -p + 1
        for q in range(lo, p):
            if q % 2 and gcd(p, q) == 1:
                yield CoprimePair(p, q)


@dataclass(frozen=True)
class EvenContinuedFraction:
    entries: tuple[int, ...]

    def __post_init__(self):
        if any(e == 0 or e % 2 for e in self.entries):
            raise ValueError(f"entries must be nonzero and even: {self.entries}")

    def __len__(self):
        return len(self.entries)

    def value(self) -> Fraction:
        """Evaluate ``[a_1, ..., a_n] = a_1 + 1/(a_2 + 1/(...))`` exactly."""
        x = Fraction(self.entries[-1])
        for a in reversed(self.entries[:-1]):
            x = a + 1 / x
        return x

    @property
    def halves(self) -> tuple[int, ...]:
        """The twist parameters ``k_i`` with entries ``2 k_i``."""
        return tuple(e // 2 for e in self.entries)


def even_expansion(num: int, den: int) -> EvenContinuedFraction:
    """Expand ``num/den`` using nearest-even quotients.

    Ties (never reached for two-bridge fractions, which alternate
    odd/even) round away from zero.
    """
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    entries = []
    a, b = num, den
    while b != 0:
        k = _round_half_away(Fraction(a, 2 * b))
        if k == 0:
            raise ValueError(f"{num}/{den} has no even continued fraction")
        entries.append(2 * k)
        a, b = b, a - 2 * k * b
        if len(entries) > 4 * (abs(num) + abs(den)):
            raise ValueError(f"{num}/{den} has no even continued fraction")
    return EvenContinuedFraction(tuple(entries))


def _round_half_away(x: Fraction) -> int:
    fl = x.numerator // x.denominator
    frac = x - fl
    if frac > Fraction(1, 2) or (frac == Fraction(1, 2) and x > 0):
        return fl + 1
    return fl


def even_continued_fraction(a: CoprimePair) -> EvenContinuedFraction:
    """Even continued fraction of ``p/(p - q)``.

    For ``q < 0`` that fraction lies in ``(0, 1)`` and has no even
    expansion, so the equivalent ``q + 2p`` is used, giving ``-p/(p + q)``
    (the negated expansion of the mirror).

    >>> even_continued_fraction(CoprimePair(81, 49)).entries
    (2, 2, -8, -2)
    """
    if a.q < 0:
        return even_expansion(-a.p, a.p + a.q)
    return even_expansion(a.p, a.p - a.q)


def euclid_data(a: CoprimePair) -> tuple[int, int, int | None, int | None]:
    """Return ``(kappa, xi, kappa', xi')`` for a pair with ``q > 0``.

    ``p = kappa*q + xi`` and ``q = kappa'*xi + xi'`` by Euclidean division.
    When ``q == 1`` we get ``xi == 0`` and the primed values are ``None``;
    when ``xi == 1`` we get ``kappa' = q`` and ``xi' = 0``.
    """
    p, q = a.p, a.q
    if q <= 0:
        raise ValueError("euclid_data needs q > 0")
    kappa, xi = divmod(p, q)
    if xi == 0:
        return kappa, xi, None, None
    kappa2, xi2 = divmod(q, xi)
    return kappa, xi, kappa2, xi2


def epsilon(i: int, a: CoprimePair) -> int:
    return a.epsilon(i)


def sigma(i: int, a: CoprimePair) -> int:
    return a.sigma(i)
