"""Incremental paths and cycles, and the cycle graph of a co-prime pair.

An incremental path is a list of integer gradings whose neighbours differ
by exactly one; an incremental cycle is the same thing read cyclically.
The cycle graph of ``(p, q)`` has ``2p`` vertices graded by ``sigma_i``.
Its decomposition into alternating segments drives the reduction ``R``
to a smaller pair and the expansion ``E`` back again.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .pairs import CoprimePair, euclid_data
from .words import SWord


class NotAnArcError(ValueError):
    pass


def _check_steps(g: Sequence[int], cyclic: bool):
    n = len(g)
    for i in range(n - 1):
        if abs(g[i + 1] - g[i]) != 1:
            raise ValueError(f"gradings {g[i]} and {g[i + 1]} are not adjacent")
    if cyclic and n and abs(g[0] - g[-1]) != 1:
        raise ValueError("cycle does not close up with a +-1 step")


@dataclass(frozen=True)
class IncrementalPath:
    gradings: tuple[int, ...]

    def __post_init__(self):
        g = tuple(int(x) for x in self.gradings)
        if not g:
            raise ValueError("a path has at least one vertex")
        _check_steps(g, cyclic=False)
        object.__setattr__(self, "gradings", g)

    @classmethod
    def from_steps(cls, start: int, steps: Sequence[int]) -> "IncrementalPath":
        g = [start]
        for d in steps:
            g.append(g[-1] + d)
        return cls(tuple(g))

    def __len__(self):
        """Number of edges."""
        return len(self.gradings) - 1

    @property
    def start(self) -> int:
        return self.gradings[0]

    @property
    def end(self) -> int:
        return self.gradings[-1]

    def steps(self) -> tuple[int, ...]:
        g = self.gradings
        return tuple(g[i + 1] - g[i] for i in range(len(g) - 1))

    @property
    def closable(self) -> bool:
        return self.gradings[0] == self.gradings[-1]

    def closure(self) -> "IncrementalCycle":
        if not self.closable:
            raise ValueError("path is not closable")
        return IncrementalCycle(self.gradings[:-1])

    def shifted(self, k: int) -> "IncrementalPath":
        return IncrementalPath(tuple(x + k for x in self.gradings))

    def __mul__(self, other: "IncrementalPath") -> "IncrementalPath":
        return concat(self, other)

    def __pow__(self, n: int) -> "IncrementalPath":
        if n < 1:
            raise ValueError("power must be positive")
        if not self.closable:
            raise ValueError("only closable paths have powers")
        return IncrementalPath(self.gradings[:1] + self.gradings[1:] * n)

    def to_json(self) -> list:
        return list(self.gradings)


def concat(a: IncrementalPath, b: IncrementalPath) -> IncrementalPath:
    if a.end != b.start:
        raise ValueError(f"cannot concatenate: {a.end} != {b.start}")
    return IncrementalPath(a.gradings + b.gradings[1:])


@dataclass(frozen=True)
class IncrementalCycle:
    """Cyclic gradings ``g_0, ..., g_(L-1)``; edge ``i`` joins ``g_i`` to ``g_(i+1)``."""

    gradings: tuple[int, ...]

    def __post_init__(self):
        g = tuple(int(x) for x in self.gradings)
        if len(g) < 2 or len(g) % 2:
            raise ValueError("a cycle needs an even, positive number of vertices")
        _check_steps(g, cyclic=True)
        object.__setattr__(self, "gradings", g)

    def __len__(self):
        return len(self.gradings)

    def __getitem__(self, i: int) -> int:
        return self.gradings[i % len(self.gradings)]

    def steps(self) -> tuple[int, ...]:
        g, n = self.gradings, len(self.gradings)
        return tuple(g[(i + 1) % n] - g[i] for i in range(n))

    def rotate(self, k: int) -> "IncrementalCycle":
        k %= len(self)
        return IncrementalCycle(self.gradings[k:] + self.gradings[:k])

    def shifted(self, k: int) -> "IncrementalCycle":
        return IncrementalCycle(tuple(x + k for x in self.gradings))

    def arc(self, start: int, length: int) -> IncrementalPath:
        """The path of ``length`` edges starting at vertex ``start``."""
        n = len(self)
        if not 0 <= length <= n:
            raise ValueError("arc length out of range")
        return IncrementalPath(tuple(self[start + i] for i in range(length + 1)))

    def as_path(self, start: int = 0) -> IncrementalPath:
        return self.arc(start, len(self))

    @property
    def max_grading(self) -> int:
        return max(self.gradings)

    @property
    def min_grading(self) -> int:
        return min(self.gradings)

    def to_json(self) -> list:
        return list(self.gradings)


def build_path(pair: CoprimePair) -> IncrementalPath:
    """``Gamma(p, q)``: vertices ``P_0 .. P_2p`` graded by ``sigma_i``."""
    return IncrementalPath(pair.sigmas())


def build_cycle(pair: CoprimePair) -> IncrementalCycle:
    return IncrementalCycle(pair.sigmas()[:-1])


GAMMA_TOP_STEPS = (1, -1)


def gamma_top(summit: int) -> IncrementalPath:
    """A summit with its two neighbours."""
    return IncrementalPath((summit - 1, summit, summit - 1))


# -- isomorphism ---------------------------------------------------------

def least_rotation(seq: Sequence) -> int:
    """Index of the lexicographically least rotation (Booth's algorithm)."""
    s = list(seq) * 2
    n = len(seq)
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
    return k % n if n else 0


def canonical_form(c: IncrementalCycle) -> tuple[int, ...]:
    return c.rotate(least_rotation(c.gradings)).gradings


def is_isomorphic(a: IncrementalCycle, b: IncrementalCycle) -> bool:
    """Graded isomorphism of cycles: equal up to rotation."""
    return len(a) == len(b) and canonical_form(a) == canonical_form(b)


def relative_form(c: IncrementalCycle) -> tuple[int, ...]:
    s = c.steps()
    k = least_rotation(s)
    return s[k:] + s[:k]


def is_relatively_isomorphic(a: IncrementalCycle, b: IncrementalCycle) -> bool:
    return len(a) == len(b) and relative_form(a) == relative_form(b)


def _find_all(hay: Sequence, needle: Sequence) -> list[int]:
    out = []
    if not needle:
        return list(range(len(hay) + 1))
    fail = [0] * len(needle)
    k = 0
    for i in range(1, len(needle)):
        while k and needle[i] != needle[k]:
            k = fail[k - 1]
        if needle[i] == needle[k]:
            k += 1
        fail[i] = k
    k = 0
    for i, x in enumerate(hay):
        while k and x != needle[k]:
            k = fail[k - 1]
        if x == needle[k]:
            k += 1
            if k == len(needle):
                out.append(i - k + 1)
                k = fail[k - 1]
    return out


def rotation_offsets(a: IncrementalCycle, b: IncrementalCycle) -> list[int]:
    """All ``r`` with ``a.rotate(r) == b``."""
    if len(a) != len(b):
        return []
    hits = _find_all(a.gradings * 2, b.gradings)
    return sorted({h % len(a) for h in hits})


# -- structure -----------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    start: int
    sign: int
    length: int


@dataclass(frozen=True)
class SegmentDecomposition:
    segments: tuple[Segment, ...]
    first: int

    def __len__(self):
        return len(self.segments)

    def ordered(self) -> tuple[Segment, ...]:
        """Segments starting from the one containing edge 0."""
        s = self.segments
        return s[self.first:] + s[:self.first]


def segments(c: IncrementalCycle) -> SegmentDecomposition:
    """Maximal runs of equal-sign edges, in cyclic order."""
    st = c.steps()
    n = len(st)
    if all(x == st[0] for x in st):
        raise ValueError("an incremental cycle cannot be monotone")
    # start at the first edge that begins a run
    b0 = next(i for i in range(n) if st[i] != st[i - 1])
    segs = []
    i = b0
    while True:
        j = i
        length = 0
        while st[j % n] == st[i % n] and length < n:
            j += 1
            length += 1
        segs.append(Segment(i % n, st[i % n], length))
        i = j
        if i % n == b0:
            break
    first = 0
    for idx, sg in enumerate(segs):
        if (0 - sg.start) % n < sg.length:
            first = idx
            break
    return SegmentDecomposition(tuple(segs), first)


@dataclass(frozen=True)
class Block:
    segment_length: int
    length: int
    first_segment: int


def blocks(seg: SegmentDecomposition) -> list[Block]:
    """Maximal cyclic runs of segments of equal length."""
    s = seg.segments
    n = len(s)
    if all(x.length == s[0].length for x in s):
        return [Block(s[0].length, n, 0)]
    b0 = next(i for i in range(n) if s[i].length != s[i - 1].length)
    out = []
    i = b0
    while True:
        j = i
        while s[j % n].length == s[i % n].length and j - i < n:
            j += 1
        out.append(Block(s[i % n].length, j - i, i % n))
        i = j
        if i % n == b0:
            break
    return out


def kappa_block_lengths(pair: CoprimePair) -> list[int]:
    """Lengths of the maximal runs of ``kappa``-segments between the long ones,
    including empty runs between adjacent long segments."""
    kappa = pair.p // pair.q
    seg = segments(build_cycle(pair)).ordered()
    out, run = [], 0
    for s in seg:
        if s.length == kappa + 1:
            out.append(run)
            run = 0
        else:
            run += 1
    if out:
        out[0] += run
    return out


def long_segment_starts(pair: CoprimePair) -> list[int]:
    """Vertex indices at the start of each ``(kappa+1)``-segment (trailing vertices)."""
    kappa = pair.p // pair.q
    return sorted(s.start for s in segments(build_cycle(pair)).segments if s.length == kappa + 1)


def long_segment_ends(pair: CoprimePair) -> list[int]:
    """Vertex indices at the end of each ``(kappa+1)``-segment (leading vertices)."""
    kappa = pair.p // pair.q
    n = 2 * pair.p
    return sorted((s.start + s.length) % n
                  for s in segments(build_cycle(pair)).segments if s.length == kappa + 1)


def summits(c: IncrementalCycle) -> list[int]:
    top = c.max_grading
    return [i for i, g in enumerate(c.gradings) if g == top]


def bottoms(c: IncrementalCycle) -> list[int]:
    low = c.min_grading
    return [i for i, g in enumerate(c.gradings) if g == low]


@dataclass(frozen=True)
class Symmetry:
    """``phi(P_i) = P_(axis - i)`` with ``gr(P) + gr(phi(P)) = k``."""

    axis: int
    k: int


def is_symmetric(c: IncrementalCycle) -> Optional[Symmetry]:
    st = c.steps()
    n = len(st)
    # g_i + g_(a-i) = k for all i  <=>  d_i = d_(a-1-i) for all i
    rev = st[::-1]
    for h in _find_all(rev * 2, st):
        if h >= n:
            break
        # st[i] == rev[h + i] == st[n - 1 - h - i], so a - 1 = n - 1 - h
        a = (n - h) % n
        return Symmetry(a, c[0] + c[a])
    return None


def path_symmetry(path: IncrementalPath) -> Optional[Symmetry]:
    return is_symmetric(path.closure())


def mirror_path(path: IncrementalPath, k: int) -> IncrementalPath:
    """Image of a path under an order-reversing map with constant ``k``."""
    return IncrementalPath(tuple(k - g for g in reversed(path.gradings)))


# -- reduction and expansion -----------------------------------------------

@dataclass(frozen=True)
class ReductionStep:
    source: CoprimePair
    target: CoprimePair
    kappa: int
    kappa2: int
    negated_from: Optional[CoprimePair] = None

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "kappa": self.kappa,
            "kappa_prime": self.kappa2,
        }


class BaseCaseError(ValueError):
    pass


def is_base_case(pair: CoprimePair) -> bool:
    return pair.q > 0 and (pair.q == 1 or pair.p % pair.q == 1)


def reduce(pair: CoprimePair) -> ReductionStep:
    """``(p, q) -> (p*, q*)`` with ``p* = xi`` and ``q* = xi'`` or ``xi' - xi``."""
    if pair.q <= 1:
        raise BaseCaseError(f"{pair}: base case (q <= 1); negate first if q < 0")
    kappa, xi, kappa2, xi2 = euclid_data(pair)
    if xi <= 1:
        raise BaseCaseError(f"{pair}: base case (p mod q = 1)")
    q_star = xi2 if kappa2 % 2 == 0 else xi2 - xi
    return ReductionStep(pair, CoprimePair(xi, q_star), kappa, kappa2)


def reduction_chain(pair: CoprimePair) -> list:
    """Alternate reductions and sign flips until a base case is reached.

    Entries are ``ReductionStep`` for reductions and ``("negate", a, b)``
    tuples for the relative isomorphism ``(p, q) ~ (p, -q)``.
    """
    out: list = []
    cur = pair
    while True:
        if cur.q < 0:
            nxt = CoprimePair(cur.p, -cur.q)
            out.append(("negate", cur, nxt))
            cur = nxt
            continue
        if is_base_case(cur):
            return out
        step = reduce(cur)
        out.append(step)
        cur = step.target


def reduce_cycle(c: IncrementalCycle, kappa: int) -> IncrementalCycle:
    """Delete ``kappa``-segments, collapse ``(kappa+1)``-segments to edges, and
    grade the vertex before the edge from the segment through edge 0 as 0."""
    seg = segments(c)
    steps = [s.sign for s in seg.ordered() if s.length == kappa + 1]
    if not steps:
        raise ValueError("no long segments to keep")
    return IncrementalPath.from_steps(0, steps).closure()


def negate_shift(pair: CoprimePair) -> int:
    """``q'`` in ``(0, 2p)`` with ``q' q = p - 1 (mod 2p)``."""
    n = 2 * pair.p
    inv = pow(pair.q % n, -1, n)
    q1 = ((pair.p - 1) * inv) % n
    return q1 if q1 else n


def _block_length(b: int, same_sign: bool) -> int:
    # odd when neighbours share a sign, even otherwise
    want = 1 if same_sign else 0
    return b if b % 2 == want else b - 1


def expand(path: IncrementalPath, s: int, b: int, e: int) -> IncrementalPath:
    """The expansion ``E~(path, s, b, e)``.

    Each edge becomes an ``(s+1)``-segment of its sign.  Before every such
    segment goes an alternating block of ``s``-segments whose length is
    ``b`` or ``b-1``: odd if the previous sign (``e`` for the first block)
    matches the segment, even otherwise, starting opposite the previous sign.
    """
    if s < 1 or b < 1 or e not in (1, -1):
        raise ValueError("need s >= 1, b >= 1 and e = +-1")
    st = path.steps()
    if not st:
        raise ValueError("cannot expand a single vertex")
    out: list[int] = []
    prev = e
    for x in st:
        blen = _block_length(b, prev == x)
        sign = -prev
        for _ in range(blen):
            out.extend([sign] * s)
            sign = -sign
        out.extend([x] * (s + 1))
        prev = x
    g0 = path.start
    if e == st[0]:
        g0 += s * e
    return IncrementalPath.from_steps(g0, out)


def expand_closed(path: IncrementalPath, s: int, b: int) -> IncrementalPath:
    """``E(path, s, b)``: expansion with ``e`` the sign of the last edge."""
    return expand(path, s, b, path.steps()[-1])


def expand_cycle(c: IncrementalCycle, s: int, b: int) -> IncrementalCycle:
    return expand_closed(c.as_path(0), s, b).closure()


# -- words -----------------------------------------------------------------

def rho(path: IncrementalPath) -> SWord:
    """The word read off a path: one letter per edge leaving an odd grading,
    with the edge's sign as exponent and its lower end as subscript."""
    g = path.gradings
    letters = []
    for i in range(len(g) - 1):
        if g[i] % 2:
            d = g[i + 1] - g[i]
            letters.append((min(g[i], g[i + 1]), d))
    return SWord(tuple(letters))


def rho_cycle(c: IncrementalCycle, start: int = 0) -> SWord:
    return rho(c.as_path(start))


def graph_subtract(c: IncrementalCycle, sub: IncrementalPath,
                   offset: Optional[int] = None) -> IncrementalPath:
    """The path left after removing the edges and interior vertices of ``sub``.

    ``sub`` must occur as an arc of ``c``; ``offset`` pins down which one when
    there are several, otherwise the first occurrence is used.
    """
    n = len(c)
    L = len(sub)
    if L > n:
        raise NotAnArcError("subgraph longer than the cycle")
    if offset is None:
        for o in range(n):
            if all(c[o + i] == sub.gradings[i] for i in range(L + 1)):
                offset = o
                break
        else:
            raise NotAnArcError("not an arc of the cycle")
    elif any(c[offset + i] != sub.gradings[i] for i in range(L + 1)):
        raise NotAnArcError(f"not an arc of the cycle at offset {offset}")
    return c.arc(offset + L, n - L)


# -- output ------------------------------------------------------------------

def to_dot(c: IncrementalCycle, name: str = "G", kappa: Optional[int] = None) -> str:
    """DOT text for a cycle; summits, bottoms and (given ``kappa``) leading and
    trailing vertices are annotated."""
    tops, lows = set(summits(c)), set(bottoms(c))
    lead, trail = set(), set()
    if kappa is not None:
        n = len(c)
        for s in segments(c).segments:
            if s.length == kappa + 1:
                trail.add(s.start)
                lead.add((s.start + s.length) % n)
    lines = [f'digraph "{name}" {{', "  node [shape=circle];"]
    for i, g in enumerate(c.gradings):
        tags = []
        if i in tops:
            tags.append("summit")
        if i in lows:
            tags.append("bottom")
        if i in lead:
            tags.append("leading")
        if i in trail:
            tags.append("trailing")
        label = f"P{i}\\n{g}"
        extra = f', tags="{",".join(tags)}"' if tags else ""
        lines.append(f'  P{i} [label="{label}", grading={g}{extra}];')
    n = len(c)
    for i in range(n):
        sign = "+" if c[i + 1] > c[i] else "-"
        lines.append(f'  P{i} -> P{(i + 1) % n} [label="{sign}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
