"""Schubert presentation of a two-bridge link group and the rewritten
presentation of its Alexander subgroup ``Y``.

``Y`` is generated by ``S_k = a^k b a^(-k-1)`` with relators ``R_k``, each
the shift of ``R_0`` by ``k``.  The truncations

    Y_n = < S_(m-n), ..., S_(M+n-1) | R_(-n), ..., R_(n-1) >

form an ascending chain whose union is ``Y``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pairs import CoprimePair
from .words import SWord, shift


@dataclass(frozen=True)
class TwoGeneratorPresentation:
    """``<a, b | w>`` with ``w`` stored as ``(generator, exponent)`` pairs."""

    relator: tuple[tuple[str, int], ...]

    def exponent_sum(self) -> int:
        return sum(e for _, e in self.relator)

    def __str__(self):
        parts = [g if e == 1 else f"{g}^-1" for g, e in self.relator]
        return "< a, b | " + " ".join(parts) + " >"


def schubert_word(pair: CoprimePair) -> TwoGeneratorPresentation:
    """``w = a^eps_0 b^eps_1 ... a^eps_(2p-2) b^eps_(2p-1)``."""
    gens = "ab"
    return TwoGeneratorPresentation(
        tuple((gens[i % 2], pair.epsilon(i)) for i in range(2 * pair.p)))


def relator_letter(pair: CoprimePair, j: int) -> tuple[int, int]:
    """Subscript and exponent of the ``j``-th letter of ``R_0`` (1-based).

    The letter comes from ``b^eps_(2j-1)`` in ``w``.  A positive ``b`` is
    read at coset ``sigma_(2j-1)``, a negative one at ``sigma_(2j)``.
    """
    e = pair.epsilon(2 * j - 1)
    k = pair.sigma(2 * j - 1) if e == 1 else pair.sigma(2 * j)
    return k, e


def rewrite_R0(pair: CoprimePair) -> SWord:
    """The relator ``R_0 = tau(w)``, a word of length ``p``."""
    return SWord(tuple(relator_letter(pair, j) for j in range(1, pair.p + 1)))


def relator(pair: CoprimePair, k: int) -> SWord:
    return shift(rewrite_R0(pair), k)


def subscript_range(pair: CoprimePair) -> tuple[int, int]:
    """``(m, M)``, the least and greatest subscripts in ``R_0``."""
    subs = rewrite_R0(pair).subscripts()
    return min(subs), max(subs)


@dataclass(frozen=True)
class ChainPresentation:
    pair: CoprimePair
    n: int
    m: int
    M: int
    generators: tuple[int, ...]
    relators: tuple[SWord, ...]

    def __str__(self):
        gens = ", ".join(f"S_{k}" for k in self.generators)
        if not self.relators:
            return f"Y_{self.n} = < {gens} >"
        rels = ",\n    ".join(str(r) for r in self.relators)
        return f"Y_{self.n} = < {gens} |\n    {rels} >"

    def to_json(self) -> dict:
        return {
            "pair": self.pair.to_json(),
            "n": self.n,
            "m": self.m,
            "M": self.M,
            "generators": list(self.generators),
            "relators": [r.to_json() for r in self.relators],
        }


def chain_presentation(pair: CoprimePair, n: int) -> ChainPresentation:
    if n < 0:
        raise ValueError("level must be nonnegative")
    r0 = rewrite_R0(pair)
    m, M = subscript_range(pair)
    gens = tuple(range(m - n, M + n))
    rels = tuple(shift(r0, k) for k in range(-n, n))
    return ChainPresentation(pair, n, m, M, gens, rels)
