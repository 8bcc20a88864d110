"""Nested subgraph witnesses and the nested relator words they produce.

A witness for ``(p, q)`` is a chain of closable paths
``Gamma_0 = Gamma(p, q), Gamma_1, ..., Gamma_N`` where each
``Gamma_i^(n_i)`` is an arc of the closure of ``Gamma_(i-1)``, the
complementary arc ``Upsilon_i`` avoids every summit, every ``Gamma_i`` is
symmetric, and ``Gamma_N`` is a single summit with its two neighbours.

Reading words off the graphs gives ``R_0 = A_0`` with
``A_(i-1) = W_i A_i^(n_i) V_i W_i^-1`` and ``A_N = S_M^(+-1)``; the mirror
image under the symmetry of the cycle graph gives the same data ending in
``S_m``.  These are what the chain ``Y_0 < Y_1 < ...`` needs: ``Y_(n+1)`` is
``Y_n`` with ``2N`` roots adjoined, and the roots are homologically
primitive when the Alexander polynomial has content 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from typing import Optional

from .alexpoly import alexander_polynomial, content, relator_coefficients
from .cyclegraph import (IncrementalCycle, IncrementalPath, build_cycle, build_path,
                         expand_closed, is_base_case, is_isomorphic, is_symmetric,
                         mirror_path, negate_shift, reduce, rho)
from .intlinalg import RankDeficientError, gcd_maximal_minors, index_of_chain_quotient
from .pairs import CoprimePair
from .presentation import rewrite_R0
from .words import (AbelianVector, SWord, abelianize, concat, cyclically_equal,
                    free_reduce, invert, is_rotation, power, shift)

log = logging.getLogger(__name__)


class WitnessError(RuntimeError):
    pass


class NestedWordError(AssertionError):
    pass


@dataclass(frozen=True)
class Stage:
    """One level of a witness.

    ``gamma`` is a closable path.  ``gamma ** n`` occupies the arc of the
    closure of the previous level that starts at vertex ``offset``;
    ``upsilon`` is the rest of that closure.
    """

    gamma: IncrementalPath
    n: int
    offset: int
    upsilon: IncrementalPath


@dataclass(frozen=True)
class RtfnWitness:
    pair: CoprimePair
    gamma0: IncrementalPath
    stages: tuple[Stage, ...]

    @property
    def N(self) -> int:
        return len(self.stages)

    @property
    def gammas(self) -> list[IncrementalPath]:
        return [self.gamma0] + [s.gamma for s in self.stages]

    @property
    def upsilons(self) -> list[IncrementalPath]:
        return [s.upsilon for s in self.stages]

    @property
    def multiplicities(self) -> list[int]:
        return [s.n for s in self.stages]

    def to_json(self) -> dict:
        stages = []
        parent_len = len(self.gamma0)
        for s in self.stages:
            span = s.n * len(s.gamma)
            stages.append({
                "gamma": {"offset": s.offset, "length": len(s.gamma),
                          "gradings": list(s.gamma.gradings)},
                "upsilon": {"offset": (s.offset + span) % parent_len,
                            "length": len(s.upsilon),
                            "gradings": list(s.upsilon.gradings)},
                "n_i": s.n,
            })
            parent_len = len(s.gamma)
        return {"pair": self.pair.to_json(), "N": self.N, "stages": stages}


def _levels(pair: CoprimePair) -> tuple[int, int]:
    """``(m, M)`` read from the cycle graph: bottoms sit at ``m`` and
    summits at ``M + 1``."""
    c = build_cycle(pair)
    return c.min_grading, c.max_grading - 1


def _rotations(steps: tuple[int, ...]) -> list[tuple[int, ...]]:
    seen, out = set(), []
    for r in range(len(steps)):
        rot = steps[r:] + steps[:r]
        if rot not in seen:
            seen.add(rot)
            out.append(rot)
    return out


def _place(parent: IncrementalCycle, shape: tuple[int, ...], n: int, summit: int) -> Stage:
    """Find an arc of ``parent`` that is ``n`` copies of a rotation of
    ``shape`` and whose complement holds no summit.

    The first such arc (by starting vertex) is used.
    """
    L = len(parent)
    span = n * len(shape)
    if span > L:
        raise WitnessError(f"{n} copies of a {len(shape)}-edge path do not fit in {L} edges")
    steps = parent.steps()
    doubled = steps + steps
    best = None
    rots = _rotations(shape)
    for o in range(L):
        window = doubled[o:o + span]
        for rot in rots:
            if window == rot * n:
                rest = parent.arc(o + span, L - span)
                if summit not in rest.gradings:
                    best = o
                break
        if best is not None:
            break
    if best is None:
        raise WitnessError("no placement avoids the summits")
    gamma = parent.arc(best, len(shape))
    return Stage(gamma, n, best, parent.arc(best + span, L - span))


def _chain_from_shapes(pair: CoprimePair, plan: list[tuple[tuple[int, ...], int]]) -> RtfnWitness:
    _, M = _levels(pair)
    gamma0 = build_path(pair)
    parent = gamma0.closure()
    stages = []
    for shape, n in plan:
        st = _place(parent, shape, n, M + 1)
        stages.append(st)
        parent = st.gamma.closure()
    return RtfnWitness(pair, gamma0, tuple(stages))


def _kappa_pair(kappa: int) -> tuple[int, ...]:
    return (1,) * kappa + (-1,) * kappa


def base_witness(pair: CoprimePair) -> RtfnWitness:
    """Witness for ``q = 1`` or ``p mod q = 1`` (with ``q > 0``)."""
    if not is_base_case(pair):
        raise WitnessError(f"{pair} is not a base case")
    p, q = pair.p, pair.q
    top = (1, -1)
    if q == 1:
        plan = [(top, 1)]
    else:
        kappa = p // q
        if kappa == 1:
            plan = [(top, (q + 1) // 2)]
        else:
            plan = [(_kappa_pair(kappa), (q + 1) // 2), (top, 1)]
    return _chain_from_shapes(pair, plan)


def lift_witness(w_star: RtfnWitness, pair: CoprimePair) -> RtfnWitness:
    """Witness for ``pair`` from one for its reduction."""
    step = reduce(pair)
    if step.target != w_star.pair:
        raise WitnessError(f"{pair} reduces to {step.target}, not {w_star.pair}")
    kappa, kappa2 = step.kappa, step.kappa2
    d = kappa2 if kappa2 % 2 == 0 else kappa2 - 1
    plan = []
    for st in w_star.stages:
        plan.append((expand_closed(st.gamma, kappa, kappa2).steps(), st.n))
    if kappa2 == 1 or kappa == 1:
        plan.append(((1, -1), d // 2 + 1))
    else:
        plan.append((_kappa_pair(kappa), d // 2 + 1))
        plan.append(((1, -1), 1))
    return _chain_from_shapes(pair, plan)


def negate_witness(w: RtfnWitness) -> RtfnWitness:
    """Witness for ``(p, -q)`` by the relative isomorphism of cycle graphs."""
    src = w.pair
    target = CoprimePair(src.p, -src.q)
    shift_q = negate_shift(src)
    delta = -src.sigma(shift_q)
    n = 2 * src.p
    stages = []
    for i, st in enumerate(w.stages):
        off = (st.offset - shift_q) % n if i == 0 else st.offset
        stages.append(Stage(st.gamma.shifted(delta), st.n, off, st.upsilon.shifted(delta)))
    return RtfnWitness(target, build_path(target), tuple(stages))


@lru_cache(maxsize=4096)
def _build(pair: CoprimePair) -> RtfnWitness:
    if pair.q < 0:
        return negate_witness(_build(CoprimePair(pair.p, -pair.q)))
    if is_base_case(pair):
        return base_witness(pair)
    step = reduce(pair)
    return lift_witness(_build(step.target), pair)


def build_witness(pair: CoprimePair, verify: bool = True) -> RtfnWitness:
    w = _build(pair)
    if verify:
        report = verify_witness(pair, w)
        if not report.ok:
            raise WitnessError(f"witness for {pair} fails: {report.failures()}")
    return w


# -- verification -------------------------------------------------------------

@dataclass
class WitnessReport:
    pair: CoprimePair
    checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": dict(self.checks), "notes": list(self.notes)}


def verify_witness(pair: CoprimePair, w: RtfnWitness) -> WitnessReport:
    """Check conditions R1 to R5 directly on the graphs."""
    rep = WitnessReport(pair)
    m, M = _levels(pair)
    gammas = w.gammas

    rep.checks["R1"] = w.pair == pair and w.gamma0 == build_path(pair)

    last = gammas[-1]
    rep.checks["R2"] = w.N >= 1 and last.steps() == (1, -1) and last.gradings[1] == M + 1

    r3 = True
    for i, st in enumerate(w.stages, start=1):
        parent = gammas[i - 1]
        try:
            glued = ((st.gamma ** st.n) * st.upsilon).closure()
            ok = is_isomorphic(parent.closure(), glued)
            pc = parent.closure()
            span = st.n * len(st.gamma)
            ok = ok and pc.arc(st.offset, span) == st.gamma ** st.n
            ok = ok and pc.arc(st.offset + span, len(pc) - span) == st.upsilon
        except ValueError as exc:
            rep.notes.append(f"R3 level {i}: {exc}")
            ok = False
        if not ok:
            rep.notes.append(f"R3 fails at level {i}")
        r3 = r3 and ok
    rep.checks["R3"] = r3

    r4 = True
    for i, st in enumerate(w.stages, start=1):
        if M + 1 in st.upsilon.gradings:
            rep.notes.append(f"R4: summit in Upsilon_{i}")
            r4 = False
    rep.checks["R4"] = r4

    r5 = True
    for i, g in enumerate(gammas):
        try:
            sym = is_symmetric(g.closure())
        except ValueError:
            sym = None
        if sym is None:
            rep.notes.append(f"R5: Gamma_{i} not symmetric")
            r5 = False
        if i >= 1 and min(g.gradings) <= m:
            rep.notes.append(f"R5: Gamma_{i} reaches a bottom")
            r5 = False
    rep.checks["R5"] = r5
    return rep


# -- nested words ---------------------------------------------------------------

@dataclass(frozen=True)
class NestedWords:
    """Words ``A_0..A_N``, ``V_1..V_N`` and conjugators ``W_1..W_N`` for
    both the summit side (``hat``) and the mirror, bottom side (``check``).

    Index ``i`` of ``vhat``/``what`` is level ``i + 1``.
    """

    pair: CoprimePair
    m: int
    M: int
    multiplicities: tuple[int, ...]
    ahat: tuple[SWord, ...]
    vhat: tuple[SWord, ...]
    what: tuple[SWord, ...]
    acheck: tuple[SWord, ...]
    vcheck: tuple[SWord, ...]
    wcheck: tuple[SWord, ...]
    checks: tuple[tuple[str, bool], ...] = ()

    @property
    def N(self) -> int:
        return len(self.multiplicities)

    def to_json(self) -> dict:
        enc = lambda ws: [str(x) for x in ws]
        return {
            "ahat": enc(self.ahat), "vhat": enc(self.vhat),
            "acheck": enc(self.acheck), "vcheck": enc(self.vcheck),
            "n": list(self.multiplicities), "m": self.m, "M": self.M,
            "checks": dict(self.checks),
        }


def _palindromic(vec: AbelianVector, lo: int, hi: int) -> bool:
    b = vec.dense(lo, hi)
    return all(abs(b[j]) == abs(b[-1 - j]) for j in range(len(b)))


def _check_side(R0: SWord, A, V, Wc, ns, target: int, other: int, top: bool) -> dict:
    """Conditions (1)-(5) for one side; ``target`` is ``M`` for the summit
    side and ``m`` for the bottom side."""
    out = {}
    out["1"] = is_rotation(A[0], R0) if not top else A[0] == R0
    out["2"] = len(A[-1]) == 1 and A[-1].letters[0][0] == target
    ok3 = True
    for i in range(1, len(A)):
        rhs = concat(power(A[i], ns[i - 1]), V[i - 1])
        ok3 = ok3 and cyclically_equal(A[i - 1], rhs)
        conj = concat(Wc[i - 1], rhs, invert(Wc[i - 1]))
        ok3 = ok3 and free_reduce(conj) == free_reduce(A[i - 1])
    out["3"] = ok3
    out["4"] = all(target not in v.subscripts() for v in V)
    ok5 = True
    for i in range(1, len(A)):
        vec = abelianize(A[i])
        if not vec:
            ok5 = False
            continue
        if top:
            l, hi = min(vec), max(vec)
            ok5 = ok5 and other < l <= target and hi == target and _palindromic(vec, l, target)
        else:
            lo, l2 = min(vec), max(vec)
            ok5 = ok5 and target <= l2 < other and lo == target and _palindromic(vec, target, l2)
    out["5"] = ok5
    return out


def derive_nested_words(pair: CoprimePair, w: RtfnWitness, strict: bool = True) -> NestedWords:
    m, M = _levels(pair)
    k = m + M + 1
    gammas = w.gammas
    ns = tuple(w.multiplicities)
    ahat = tuple(rho(g) for g in gammas)
    vhat = tuple(rho(u) for u in w.upsilons)
    acheck = tuple(rho(mirror_path(g, k)) for g in gammas)
    vcheck = tuple(rho(mirror_path(u, k)) for u in w.upsilons)
    what, wcheck = [], []
    for i, st in enumerate(w.stages, start=1):
        parent = gammas[i - 1]
        L = len(parent)
        what.append(rho(parent.closure().arc(0, st.offset)))
        mparent = mirror_path(parent, k)
        j = (-(st.offset + st.n * len(st.gamma))) % L
        wcheck.append(rho(mparent.closure().arc(0, j)))
    R0 = rewrite_R0(pair)
    hat = _check_side(R0, ahat, vhat, what, ns, M, m, top=True)
    chk = _check_side(R0, acheck, vcheck, wcheck, ns, m, M, top=False)
    checks = tuple([(f"M{c}", v) for c, v in hat.items()] + [(f"m{c}", v) for c, v in chk.items()])
    nw = NestedWords(pair, m, M, ns, ahat, vhat, tuple(what), acheck, vcheck, tuple(wcheck), checks)
    bad = [name for name, v in checks if not v]
    if bad and strict:
        raise NestedWordError(f"{pair}: nested word conditions fail: {bad}")
    return nw


def back_substitute(nw: NestedWords, side: str = "hat") -> SWord:
    """Rebuild ``A_0`` from ``A_N`` using ``A_(i-1) = W A_i^(n_i) V_i W^-1``."""
    if side == "hat":
        A, V, Wc = nw.ahat, nw.vhat, nw.what
    else:
        A, V, Wc = nw.acheck, nw.vcheck, nw.wcheck
    word = A[-1]
    for i in range(nw.N, 0, -1):
        word = concat(Wc[i - 1], power(word, nw.multiplicities[i - 1]), V[i - 1], invert(Wc[i - 1]))
    return free_reduce(word)


# -- chain report ---------------------------------------------------------------

@dataclass
class StepRecord:
    side: str
    level: int
    k: int
    matrix: list
    C: Optional[int]
    C_reduced: Optional[int]
    telescopes: bool

    def to_json(self) -> dict:
        return {"side": self.side, "k": self.k, "C": self.C, "C_D": self.C_reduced,
                "telescopes": self.telescopes,
                "matrix": [[str(x) if abs(x) >= 2**63 else x for x in r] for r in self.matrix]}


@dataclass
class LevelRecord:
    n: int
    steps: list
    index: object

    @property
    def C_values(self) -> list:
        return [s.C for s in self.steps]

    @property
    def primitive(self) -> bool:
        return all(s.C == 1 for s in self.steps)

    def to_json(self) -> dict:
        return {"n": self.n, "C_values": self.C_values,
                "index": self.index if self.index != float("inf") else "infinite",
                "primitive": self.primitive,
                "steps": [s.to_json() for s in self.steps]}


@dataclass
class ChainReport:
    pair: CoprimePair
    content: int
    hypothesis_ok: bool
    levels: list
    leading_product_ok: bool

    @property
    def verdict(self) -> str:
        if not self.hypothesis_ok:
            return "hypothesis-failed"
        return "primitive" if all(lv.primitive for lv in self.levels) else "not-primitive"

    def to_json(self) -> dict:
        return {"content": self.content, "hypothesis_ok": self.hypothesis_ok,
                "verdict": self.verdict, "leading_product_ok": self.leading_product_ok,
                "levels": [lv.to_json() for lv in self.levels]}


def _side_matrices(a, m, M, n, ns, V, A, side):
    """Presentation matrices for the roots adjoined on one side at level ``n``.

    Columns are ``S'_lo .. S'_hi`` followed by ``t_1 .. t_(k-1)``.
    """
    if side == "hat":
        rel_range = range(-n, n)
        lo, hi = m - n, M + n - 1
        sh = n
    else:
        rel_range = range(-n, n + 1)
        lo, hi = m - n, M + n
        sh = -n - 1
    width = hi - lo + 1
    rel_rows = []
    for r in rel_range:
        row = [0] * width
        for j, c in enumerate(a):
            row[m + r + j - lo] = c
        rel_rows.append(row)
    Vs = [abelianize(shift(v, sh)) for v in V]
    target_rel = n if side == "hat" else -n - 1
    out = []
    for k in range(1, len(ns) + 1):
        rows = [r + [0] * (k - 1) for r in rel_rows]
        for j in range(1, k + 1):
            row = Vs[j - 1].dense(lo, hi) + [0] * (k - 1)
            if j >= 2:
                row[width + j - 2] = -1
            if j < k:
                row[width + j - 1] = ns[j - 1]
            rows.append(row)
        # the matrix D after eliminating t_1 .. t_(k-1)
        U = AbelianVector()
        mult = 1
        for j in range(1, k + 1):
            U = U + Vs[j - 1].scale(mult)
            mult *= ns[j - 1]
        D = [r[:width] for r in rel_rows] + [U.dense(lo, hi)]
        Rn = AbelianVector({m + target_rel + j: c for j, c in enumerate(a)})
        Ak = abelianize(shift(A[k], sh))
        tele = (U == Rn - Ak.scale(prod(ns[:k])))
        out.append((k, rows, D, tele))
    return out


def _safe_gcd(rows) -> Optional[int]:
    try:
        return gcd_maximal_minors(rows)
    except RankDeficientError:
        return None


def parafree_chain_report(pair: CoprimePair, max_level: int = 3,
                          words: Optional[NestedWords] = None) -> ChainReport:
    if words is None:
        words = derive_nested_words(pair, build_witness(pair))
    m, M, a = relator_coefficients(pair)
    cont = content(alexander_polynomial(pair))
    ns = words.multiplicities
    levels = []
    for n in range(max_level + 1):
        steps = []
        for side, V, A in (("hat", words.vhat, words.ahat), ("check", words.vcheck, words.acheck)):
            for k, rows, D, tele in _side_matrices(a, m, M, n, ns, V, A, side):
                steps.append(StepRecord(side, n, k, rows, _safe_gcd(rows), _safe_gcd(D), tele))
        levels.append(LevelRecord(n, steps, index_of_chain_quotient(pair, n)))
    lead_hat = abelianize(words.ahat[-1]).get(M, 0)
    lead_ok = a[-1] == lead_hat * prod(ns)
    return ChainReport(pair, cont, cont == 1, levels, lead_ok)
