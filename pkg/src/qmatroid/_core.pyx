# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel: word order, divisibility automaton, reduction loop.

Same surface and contracts as qmatroid._core_py; that module is the readable
reference.  Words are bytes, one variable id per byte.
"""

from collections import deque
from heapq import heapify, heappop, heappush

BACKEND = "cython"


def sort_key(bytes w):
    """Ascending word-order key."""
    cdef Py_ssize_t n = len(w)
    cdef const unsigned char* p = w
    cdef bytearray rev = bytearray(n)
    cdef Py_ssize_t i
    for i in range(n):
        rev[i] = 255 - p[n - 1 - i]
    return (n, bytes(rev))


def compare_words(bytes w1, bytes w2):
    """-1, 0, or 1 as w1 is below, equal to, or above w2."""
    cdef Py_ssize_t l1 = len(w1)
    cdef Py_ssize_t l2 = len(w2)
    if l1 != l2:
        return -1 if l1 < l2 else 1
    cdef const unsigned char* p1 = w1
    cdef const unsigned char* p2 = w2
    cdef Py_ssize_t i
    for i in range(l1 - 1, -1, -1):
        if p1[i] != p2[i]:
            # first difference from the right; smaller letter, larger word
            return 1 if p1[i] < p2[i] else -1
    return 0


cdef class Automaton:
    """Aho-Corasick automaton over byte words with incremental insertion.

    Insertions mark the automaton dirty; failure links are rebuilt lazily on
    the next query.  first_match reports the match with the earliest end
    position; ties at one position resolve to the lowest pattern index.
    """

    cdef list _goto
    cdef list _fail
    cdef list _ends
    cdef list _out
    cdef list _lens
    cdef int _count
    cdef bint _dirty

    def __init__(self, patterns=None):
        self._goto = [{}]
        self._fail = [0]
        # lowest pattern index ending exactly at the node, -1 when none
        self._ends = [-1]
        # effective output after the fail-chain minimum is folded in
        self._out = [-1]
        self._lens = []
        self._count = 0
        self._dirty = False
        if patterns:
            for p in patterns:
                self.insert(p)

    def __len__(self):
        return self._count

    @property
    def pattern_lengths(self):
        return list(self._lens)

    def insert(self, bytes pattern):
        if not pattern:
            raise ValueError("empty pattern not allowed")
        cdef list goto = self._goto
        cdef int node = 0
        cdef int nxt
        cdef Py_ssize_t i
        cdef const unsigned char* p = pattern
        cdef object hit
        for i in range(len(pattern)):
            hit = (<dict> goto[node]).get(p[i])
            if hit is None:
                nxt = len(goto)
                (<dict> goto[node])[p[i]] = nxt
                goto.append({})
                self._fail.append(0)
                self._ends.append(-1)
                self._out.append(-1)
            else:
                nxt = hit
            node = nxt
        cdef int idx = self._count
        if self._ends[node] == -1:
            self._ends[node] = idx
        self._lens.append(len(pattern))
        self._count += 1
        self._dirty = True
        return idx

    cdef void _build(self):
        cdef list goto = self._goto
        cdef list fail = self._fail
        cdef list ends = self._ends
        cdef list out = self._out
        cdef int node, child, f, o, fo, b
        queue = deque()
        for child in (<dict> goto[0]).values():
            fail[child] = 0
            out[child] = ends[child]
            queue.append(child)
        while queue:
            node = queue.popleft()
            for b, child in (<dict> goto[node]).items():
                f = fail[node]
                while f and b not in (<dict> goto[f]):
                    f = fail[f]
                f = (<dict> goto[f]).get(b, 0)
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

    def first_match(self, bytes text):
        """(end_index, pattern_index) of the earliest-ending match, or (-1, -1)."""
        if self._dirty:
            self._build()
        cdef list goto = self._goto
        cdef list fail = self._fail
        cdef list out = self._out
        cdef int node = 0
        cdef int b, o
        cdef Py_ssize_t pos, n = len(text)
        cdef const unsigned char* p = text
        cdef object hit
        for pos in range(n):
            b = p[pos]
            while node and b not in (<dict> goto[node]):
                node = fail[node]
            hit = (<dict> goto[node]).get(b)
            node = 0 if hit is None else <int> hit
            o = out[node]
            if o != -1:
                return (pos, o)
        return (-1, -1)


def reduce_terms(dict terms, list basis, Automaton automaton, trace=None):
    """Two-sided normal form of a term dict against basis with matching automaton.

    basis[i] = (leading word, leading coeff, tail terms); automaton pattern i
    must be basis[i]'s leading word.  Terms are processed in descending word
    order; a term whose word contains some leading word is rewritten through
    the earliest-ending match, others move to the output.  When trace is a
    list, (cofactor, left, index, right) quadruples are appended such that
    input = sum of cofactor * left * basis[index] * right + output.
    """
    cdef dict work = dict(terms)
    cdef list heap = [(-len(w), w[::-1], w) for w in work]
    heapify(heap)
    cdef dict out = {}
    cdef list lens = automaton._lens
    cdef bytes w, a, b, v, nw
    cdef int end, idx, start
    cdef object c, lc, q, cv, old, nc
    cdef tuple tail
    while heap:
        w = heappop(heap)[2]
        c = work.pop(w, None)
        if c is None:
            continue
        end, idx = automaton.first_match(w)
        if idx < 0:
            out[w] = c
            continue
        lc = (<tuple> basis[idx])[1]
        tail = (<tuple> basis[idx])[2]
        start = end + 1 - <int> lens[idx]
        a = w[:start]
        b = w[end + 1:]
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


def overlap_obstructions(bytes u, bytes v, bint same):
    """Obstruction placements (lf, rf, lg, rg) with lf+u+rf == lg+v+rg.

    same=True treats u and v as the same basis element: only proper
    self-overlaps count and the identical placement is dropped.  Disjoint
    placements are never produced.
    """
    cdef list out = []
    cdef Py_ssize_t lu = len(u)
    cdef Py_ssize_t lv = len(v)
    cdef Py_ssize_t k, i, upper
    cdef bytes empty = b""
    if same:
        for k in range(1, lu):
            if u[lu - k:] == u[:k]:
                out.append((empty, u[k:], u[:lu - k], empty))
        return out
    upper = lu if lu < lv else lv
    for k in range(1, upper):
        # suffix of u meets prefix of v
        if u[lu - k:] == v[:k]:
            out.append((empty, v[k:], u[:lu - k], empty))
        # suffix of v meets prefix of u
        if v[lv - k:] == u[:k]:
            out.append((v[:lv - k], empty, empty, u[k:]))
    if lv <= lu:
        for i in range(lu - lv + 1):
            if u[i:i + lv] == v:
                out.append((empty, empty, u[:i], u[i + lv:]))
    if lu < lv:
        for i in range(lv - lu + 1):
            if v[i:i + lu] == u:
                out.append((v[:i], v[i + lu:], empty, empty))
    return out
