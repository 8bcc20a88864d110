"""Alexander polynomials of two-bridge links.

Two independent routes are provided: the closed-form Fox derivative of
the Schubert relator, and the abelianized relator ``[R_0]`` whose
coefficients (read from subscript ``m`` up to ``M``) are the same
polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd

from .pairs import CoprimePair
from .presentation import rewrite_R0
from .words import abelianize


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial, constant term first, no trailing zeros."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_powers(cls, terms: dict[int, int]) -> "IntPolynomial":
        """Build from ``{exponent: coefficient}``; exponents may be negative,
        in which case the result is multiplied by the needed power of ``t``."""
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            return cls(())
        lo = min(terms)
        c = [0] * (max(terms) - lo + 1)
        for k, v in terms.items():
            c[k - lo] += v
        return cls(tuple(c))

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                                   for i in range(n)))

    def __neg__(self):
        return IntPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(other * x for x in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def normalized(self) -> "IntPolynomial":
        """Strip powers of ``t`` and make the leading coefficient positive."""
        c = list(self.coeffs)
        while c and c[0] == 0:
            c.pop(0)
        if c and c[-1] < 0:
            c = [-x for x in c]
        return IntPolynomial(tuple(c))

    def content(self) -> int:
        return content(self)

    def __str__(self):
        return format_poly(self)

    def to_json(self) -> list:
        return list(self.coeffs)


def format_poly(poly: IntPolynomial, var: str = "t") -> str:
    """Text form such as ``4*t^2 - 9*t + 4``."""
    if not poly.coeffs:
        return "0"
    parts = []
    for k in range(poly.degree, -1, -1):
        c = poly.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def content(poly: IntPolynomial) -> int:
    if not poly.coeffs:
        raise ValueError("content of the zero polynomial is undefined")
    return reduce(gcd, (abs(c) for c in poly.coeffs))


def alexander_from_fox(pair: CoprimePair) -> IntPolynomial:
    """``sum_i eps_(2i-1) t^sigma_f(i)`` with ``f(i) = 2i - theta(eps_(2i-1))``."""
    terms: dict[int, int] = {}
    for i in range(1, pair.p + 1):
        e = pair.epsilon(2 * i - 1)
        f = 2 * i - (1 if e == 1 else 0)
        s = pair.sigma(f)
        terms[s] = terms.get(s, 0) + e
    return IntPolynomial.from_powers(terms).normalized()


def relator_coefficients(pair: CoprimePair) -> tuple[int, int, list[int]]:
    """``(m, M, [a_m, ..., a_M])`` from the abelianized ``R_0``."""
    word = rewrite_R0(pair)
    subs = word.subscripts()
    m, M = min(subs), max(subs)
    vec = abelianize(word)
    return m, M, vec.dense(m, M)


def alexander_from_relator(pair: CoprimePair) -> IntPolynomial:
    _, _, coeffs = relator_coefficients(pair)
    return IntPolynomial(tuple(coeffs)).normalized()


def alexander_polynomial(pair: CoprimePair) -> IntPolynomial:
    return alexander_from_fox(pair)


def genus(pair: CoprimePair) -> int:
    m, M, _ = relator_coefficients(pair)
    return (M - m) // 2


def genus_one_knot_poly(k1: int, k2: int) -> IntPolynomial:
    """``k1 k2 t^2 - (2 k1 k2 + 1) t + k1 k2`` for the knot ``[2k1, 2k2]``."""
    if k1 == 0 or k2 == 0:
        raise ValueError("k1, k2 must be nonzero")
    a = k1 * k2
    return IntPolynomial((a, -(2 * a + 1), a))


def genus_one_link_poly(k1: int, k2: int, k3: int) -> IntPolynomial:
    """``(t - 1)(A t^2 - (2A + k1 + k3) t + A)`` with ``A = k1 k2 k3``."""
    if 0 in (k1, k2, k3):
        raise ValueError("k1, k2, k3 must be nonzero")
    a = k1 * k2 * k3
    quad = IntPolynomial((a, -(2 * a + k1 + k3), a))
    return IntPolynomial((-1, 1)) * quad

