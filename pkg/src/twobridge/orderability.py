"""Bi-orderability certificates for two-bridge link groups.

The link group is bi-orderable when every root of the Alexander
polynomial is real and positive and its coefficients are coprime.  Roots
are counted exactly with Sturm sequences over the rationals.  The only
negative certificate issued is the genus-one knot obstruction
(``[2k1, 2k2]`` with ``k1 k2 < 0``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd

from .alexpoly import IntPolynomial, alexander_polynomial, content
from .pairs import CoprimePair, even_continued_fraction


class Status(str, Enum):
    BI_ORDERABLE = "BiOrderable"
    NOT_BI_ORDERABLE = "NotBiOrderable"
    UNKNOWN = "Unknown"


@dataclass
class Verdict:
    status: Status
    reasons: list = field(default_factory=list)
    content: int | None = None
    distinct_roots: int | None = None
    all_real_positive: bool | None = None
    cf_entries: tuple = ()
    genus_one: dict | None = None

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "reasons": list(self.reasons),
            "content": self.content,
            "sturm": {"distinct_roots": self.distinct_roots,
                      "all_real_positive": self.all_real_positive},
            "cf_entries": list(self.cf_entries),
            "genus_one": self.genus_one,
        }


# -- polynomials over Q, constant term first ------------------------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _divmod(a, b):
    a = [Fraction(x) for x in a]
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(_trim(a)) >= len(b):
        a = _trim(a)
        k = len(a) - len(b)
        c = a[-1] / lead
        q[k] = c
        for i, x in enumerate(b):
            a[i + k] -= c * x
    return _trim(q), _trim(a)


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    if not a:
        return a
    return [Fraction(x) / a[-1] for x in a]


def _deriv(a):
    return _trim([i * a[i] for i in range(1, len(a))])


def square_free_factors(coeffs) -> list[list[Fraction]]:
    """Yun's algorithm: monic, pairwise coprime ``g_1, g_2, ...`` with
    ``f = c * g_1 g_2^2 g_3^3 ...``.  Constant factors are dropped."""
    f = _trim([Fraction(x) for x in coeffs])
    if not f:
        raise ValueError("zero polynomial")
    out = []
    d = _deriv(f)
    if not d:
        return out
    a = _gcd(f, d)
    b = _divmod(f, a)[0]
    c = _divmod(d, a)[0]
    while len(b) > 1:
        e = _trim([x - y for x, y in _zip_pad(c, _deriv(b))])
        g = _gcd(b, e)
        if len(g) > 1:
            out.append(g)
        b = _divmod(b, g)[0]
        c = _divmod(e, g)[0] if e else []
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]


def sturm_sequence(g) -> list[list[Fraction]]:
    seq = [_trim([Fraction(x) for x in g]), _deriv(_trim([Fraction(x) for x in g]))]
    while _trim(seq[-1]):
        r = _divmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-x for x in r])
    return [s for s in seq if s]


def _variations(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def positive_root_count(g) -> int:
    """Distinct roots of ``g`` in ``(0, oo)``; requires ``g(0) != 0``."""
    seq = sturm_sequence(g)
    at_zero = [_sign(s[0]) for s in seq]
    at_inf = [_sign(s[-1]) for s in seq]
    return _variations(at_zero) - _variations(at_inf)


def count_real_roots_in(poly: IntPolynomial) -> tuple[int, bool]:
    """``(distinct roots in (0, oo), all roots real and positive)``."""
    c = list(poly.coeffs)
    if not c:
        raise ValueError("zero polynomial")
    at_zero = False
    while c[0] == 0:
        c.pop(0)
        at_zero = True
    total, ok = 0, not at_zero
    for g in square_free_factors(c):
        k = positive_root_count(g)
        total += k
        if k != len(g) - 1:
            ok = False
    return total, ok


# Every L(4/q) is the (4,2)-torus link.  Its group is known not to be
# bi-orderable by a commutation argument that no criterion here generalizes,
# so the fact is attached as a note and the status stays Unknown.
TORUS_4_2_NOTE = ("known answer: the (4,2)-torus link group is not bi-orderable, "
                  "x and y do not commute while x and y^2 do")


# -- verdicts -----------------------------------------------------------------------

def lyubich_murasugi_applies(pair: CoprimePair) -> bool:
    return all(x > 0 for x in even_continued_fraction(pair).entries)


def _genus_one_params(pair: CoprimePair):
    e = even_continued_fraction(pair).entries
    if len(e) not in (2, 3):
        return None
    return tuple(x // 2 for x in e)


def genus_one_classify(pair: CoprimePair) -> Verdict:
    ks = _genus_one_params(pair)
    if ks is None:
        raise ValueError(f"{pair} is not genus one")
    cf = even_continued_fraction(pair).entries
    if len(ks) == 2:
        k1, k2 = ks
        info = {"kind": "knot", "k": list(ks), "product": k1 * k2}
        if k1 * k2 > 0:
            return Verdict(Status.BI_ORDERABLE, [f"genus one knot with k1*k2 = {k1 * k2} > 0"],
                           cf_entries=cf, genus_one=info)
        return Verdict(Status.NOT_BI_ORDERABLE, [f"genus one knot with k1*k2 = {k1 * k2} < 0"],
                       cf_entries=cf, genus_one=info)
    k1, k2, k3 = ks
    term = k1 * k2 * k3 * (k1 + k3)
    g1, g2 = gcd(k1, k3), gcd(k2, k1 + k3)
    info = {"kind": "link", "k": list(ks), "gcd_k1_k3": g1, "gcd_k2_k1k3": g2, "product": term}
    if g1 == 1 and g2 == 1 and term >= 0:
        return Verdict(Status.BI_ORDERABLE, ["genus one link, gcds 1 and k1*k2*k3*(k1+k3) >= 0"],
                       cf_entries=cf, genus_one=info)
    return Verdict(Status.UNKNOWN, ["genus one link outside the classified range"],
                   cf_entries=cf, genus_one=info)


def certify(pair: CoprimePair) -> Verdict:
    delta = alexander_polynomial(pair)
    cont = content(delta)
    distinct, allpos = count_real_roots_in(delta)
    cf = even_continued_fraction(pair).entries
    ks = _genus_one_params(pair)
    g1 = genus_one_classify(pair).genus_one if ks is not None else None
    common = dict(content=cont, distinct_roots=distinct, all_real_positive=allpos,
                  cf_entries=cf, genus_one=g1)
    if cont == 1 and allpos:
        return Verdict(Status.BI_ORDERABLE,
                       ["coefficients coprime", "all roots real and positive"], **common)
    if ks is not None and len(ks) == 2 and ks[0] * ks[1] < 0:
        return Verdict(Status.NOT_BI_ORDERABLE,
                       ["genus one knot obstruction, k1*k2 < 0"], **common)
    reasons = []
    if cont != 1:
        reasons.append(f"content {cont} != 1")
    if not allpos:
        reasons.append("not all roots real and positive")
    if pair.p == 4:
        reasons.append(TORUS_4_2_NOTE)
    return Verdict(Status.UNKNOWN, reasons, **common)
