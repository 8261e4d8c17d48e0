"""Pure-Python kernel: word order, divisibility automaton, reduction loop.

Words over the free algebra are bytes; each byte is a variable id.  The
compiled twin qmatroid._core implements the same surface; qmatroid.kernel
picks whichever is available.

Word order (graded, admissible): shorter words first; equal lengths compare
letterwise from the right, and the word whose first differing letter is the
smaller variable is the larger word.  Encoding trick: (len(w), bytes of
255 - b over reversed w) is an ascending sort key, so equal-length comparison
is a memcmp.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from heapq import heapify, heappop, heappush

BACKEND = "python"


def sort_key(w: bytes) -> tuple[int, bytes]:
    """Ascending word-order key."""
    return (len(w), bytes(255 - b for b in reversed(w)))


def compare_words(w1: bytes, w2: bytes) -> int:
    """-1, 0, or 1 as w1 is below, equal to, or above w2."""
    if len(w1) != len(w2):
        return -1 if len(w1) < len(w2) else 1
    if w1 == w2:
        return 0
    # first difference from the right; smaller letter means larger word
    return 1 if w1[::-1] < w2[::-1] else -1


class Automaton:
    """Aho-Corasick automaton over byte words with incremental insertion.

    Insertions mark the automaton dirty; failure links are rebuilt lazily on
    the next query.  first_match reports the match with the earliest end
    position; ties at one position resolve to the lowest pattern index.
    """

    def __init__(self, patterns: list[bytes] | None = None):
        self._goto: list[dict[int, int]] = [{}]
        self._fail: list[int] = [0]
        # lowest pattern index ending exactly at the node, -1 when none
        self._ends: list[int] = [-1]
        # effective output after the fail-chain minimum is folded in
        self._out: list[int] = [-1]
        self._lens: list[int] = []
        self._count = 0
        self._dirty = False
        if patterns:
            for p in patterns:
                self.insert(p)

    def __len__(self) -> int:
        return self._count

    @property
    def pattern_lengths(self) -> list[int]:
        return list(self._lens)

    def insert(self, pattern: bytes) -> int:
        if not pattern:
            raise ValueError("empty pattern not allowed")
        node = 0
        for b in pattern:
            nxt = self._goto[node].get(b)
            if nxt is None:
                nxt = len(self._goto)
                self._goto[node][b] = nxt
                self._goto.append({})
                self._fail.append(0)
                self._ends.append(-1)
                self._out.append(-1)
            node = nxt
        idx = self._count
        if self._ends[node] == -1:
            self._ends[node] = idx
        self._lens.append(len(pattern))
        self._count += 1
        self._dirty = True
        return idx

    def _build(self) -> None:
        goto = self._goto
        fail = self._fail
        ends = self._ends
        out = self._out
        queue = deque()
        for child in goto[0].values():
            fail[child] = 0
            out[child] = ends[child]
            queue.append(child)
        while queue:
            node = queue.popleft()
            for b, child in goto[node].items():
                f = fail[node]
                while f and b not in goto[f]:
                    f = fail[f]
                f = goto[f].get(b, 0)
                if f == child:
                    f = 0
                fail[child] = f
                o = ends[child]
                fo = out[f]
                if o == -1 or (fo != -1 and fo < o):
                    o = fo
                out[child] = o
                queue.append(child)
        self._dirty = False

    def first_match(self, text: bytes) -> tuple[int, int]:
        """(end_index, pattern_index) of the earliest-ending match, or (-1, -1)."""
        if self._dirty:
            self._build()
        goto = self._goto
        fail = self._fail
        out = self._out
        node = 0
        for pos, b in enumerate(text):
            while node and b not in goto[node]:
                node = fail[node]
            node = goto[node].get(b, 0)
            o = out[node]
            if o != -1:
                return (pos, o)
        return (-1, -1)


def reduce_terms(
    terms: dict[bytes, Fraction],
    basis: list[tuple[bytes, Fraction, tuple[tuple[bytes, Fraction], ...]]],
    automaton: Automaton,
    trace: list | None = None,
) -> dict[bytes, Fraction]:
    """Two-sided normal form of a term dict against basis with matching automaton.

    basis[i] = (leading word, leading coeff, tail terms); automaton pattern i
    must be basis[i]'s leading word.  Terms are processed in descending word
    order; a term whose word contains some leading word is rewritten through
    the earliest-ending match, others move to the output.  When trace is a
    list, (cofactor, left, index, right) quadruples are appended such that
    input = sum of cofactor * left * basis[index] * right + output.
    """
    work = dict(terms)
    heap = [(-len(w), w[::-1], w) for w in work]
    heapify(heap)
    out: dict[bytes, Fraction] = {}
    lens = automaton.pattern_lengths
    while heap:
        _, _, w = heappop(heap)
        c = work.pop(w, None)
        if c is None:
            continue
        end, idx = automaton.first_match(w)
        if idx < 0:
            out[w] = c
            continue
        _, lc, tail = basis[idx]
        start = end + 1 - lens[idx]
        a = w[:start]
        b = w[end + 1 :]
        q = c if lc == 1 else c / lc
        if trace is not None:
            trace.append((q, a, idx, b))
        for v, cv in tail:
            nw = a + v + b
            old = work.get(nw)
            if old is None:
                work[nw] = -q * cv
                heappush(heap, (-len(nw), nw[::-1], nw))
            else:
                nc = old - q * cv
                if nc:
                    work[nw] = nc
                else:
                    del work[nw]
    return out


def overlap_obstructions(
    u: bytes, v: bytes, same: bool
) -> list[tuple[bytes, bytes, bytes, bytes]]:
    """Obstruction placements (lf, rf, lg, rg) with lf+u+rf == lg+v+rg.

    same=True treats u and v as the same basis element: only proper
    self-overlaps count and the identical placement is dropped.  Disjoint
    placements are never produced.
    """
    out: list[tuple[bytes, bytes, bytes, bytes]] = []
    lu = len(u)
    lv = len(v)
    empty = b""
    if same:
        for k in range(1, lu):
            if u[lu - k :] == u[:k]:
                out.append((empty, u[k:], u[: lu - k], empty))
        return out
    upper = min(lu, lv)
    for k in range(1, upper):
        # suffix of u meets prefix of v
        if u[lu - k :] == v[:k]:
            out.append((empty, v[k:], u[: lu - k], empty))
        # suffix of v meets prefix of u
        if v[lv - k :] == u[:k]:
            out.append((v[: lv - k], empty, empty, u[k:]))
    if lv <= lu:
        for i in range(lu - lv + 1):
            if u[i : i + lv] == v:
                out.append((empty, empty, u[:i], u[i + lv :]))
    if lu < lv:
        for i in range(lv - lu + 1):
            if v[i : i + lu] == u:
                out.append((v[:i], v[i + lu :], empty, empty))
    return out
