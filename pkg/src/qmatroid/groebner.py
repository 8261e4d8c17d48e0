"""Noncommutative Buchberger engine with obstruction queue and budget semantics.

The engine keeps a priority queue of obstructions keyed by the degree of the
common multiple word (FIFO among equal degrees, which makes the selection
fair), reduces S-polynomials to normal form against the current basis through
an incrementally grown divisibility automaton, and appends nonzero remainders.

Budgets: a degree bound discards obstructions whose common word is longer
(status TruncatedAtDegree), wall-clock and iteration budgets abort the run
with the partial basis (status Aborted).  A truncated or aborted basis still
proves ideal membership whenever a reduction reaches zero; only completeness
claims need the Complete status.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Iterable, Sequence

from . import kernel
from .ncpoly import (
    Algebra,
    NcPolynomial,
    VariableUniverseMismatch,
    ZeroPolynomial,
    poly_data,
)


class InvalidObstruction(ValueError):
    pass


@dataclass(frozen=True)
class Obstruction:
    """A common-multiple placement: f_left*LT(f)*f_right == g_left*LT(g)*g_right."""

    f_index: int
    g_index: int
    f_left: bytes
    f_right: bytes
    g_left: bytes
    g_right: bytes
    degree: int


@dataclass(frozen=True)
class GBStatus:
    kind: str  # "complete" | "truncated" | "aborted"
    degree: int | None = None
    reason: str | None = None

    @classmethod
    def complete(cls) -> GBStatus:
        return cls("complete")

    @classmethod
    def truncated(cls, degree: int) -> GBStatus:
        return cls("truncated", degree=degree)

    @classmethod
    def aborted(cls, reason: str) -> GBStatus:
        return cls("aborted", reason=reason)

    @property
    def is_complete(self) -> bool:
        return self.kind == "complete"

    def render(self) -> str:
        if self.kind == "complete":
            return "complete"
        if self.kind == "truncated":
            return f"truncated({self.degree})"
        return f"aborted({self.reason})"

    @classmethod
    def parse(cls, text: str) -> GBStatus:
        text = text.strip()
        if text == "complete":
            return cls.complete()
        if text.startswith("truncated(") and text.endswith(")"):
            return cls.truncated(int(text[10:-1]))
        if text.startswith("aborted(") and text.endswith(")"):
            return cls.aborted(text[8:-1])
        raise ValueError(f"bad status {text!r}")


@dataclass
class EngineConfig:
    """Budgets for a Buchberger run; at least one bound or unbounded=True."""

    degree_bound: int | None = None
    max_iterations: int | None = None
    time_budget: float | None = None
    interreduce: bool = True
    unbounded: bool = False

    def __post_init__(self) -> None:
        if (
            self.degree_bound is None
            and self.max_iterations is None
            and self.time_budget is None
            and not self.unbounded
        ):
            raise ValueError(
                "set a degree bound, iteration cap, or time budget, "
                "or acknowledge an unbounded run with unbounded=True"
            )
        if self.degree_bound is not None and self.degree_bound < 1:
            raise ValueError("degree bound must be positive")

    @classmethod
    def default_for(cls, generators: Sequence[NcPolynomial]) -> EngineConfig:
        """Test-scale default: degree bound 2 * max generator degree, 10 minutes."""
        maxdeg = max((g.degree() for g in generators if not g.is_zero()), default=1)
        return cls(degree_bound=2 * maxdeg, time_budget=600.0)


@dataclass(frozen=True)
class GroebnerBasis:
    algebra: Algebra
    generators: tuple[NcPolynomial, ...]
    status: GBStatus
    order: str = "degrevlex"
    iterations: int = 0
    wall_time: float = 0.0

    @property
    def max_degree(self) -> int:
        return gb_degree(self)

    def reduce(self, p: NcPolynomial, trace: list | None = None) -> NcPolynomial:
        from .ncpoly import normal_remainder

        return normal_remainder(p, self.generators, trace)


def gb_degree(gb: GroebnerBasis) -> int:
    """Largest generator degree; the appendix tables call this d_B."""
    return max(g.degree() for g in gb.generators)


def find_obstructions(f: NcPolynomial, g: NcPolynomial) -> list[Obstruction]:
    """Obstructions of an (f, g) pair, indices 0 and 1; pass f is g for self pairs."""
    u = f.leading_word()
    same = f is g or f == g
    v = u if same else g.leading_word()
    out = []
    for lf, rf, lg, rg in kernel.overlap_obstructions(u, v, same):
        out.append(
            Obstruction(0, 0 if same else 1, lf, rf, lg, rg, len(lf) + len(u) + len(rf))
        )
    return out


def s_polynomial(ob: Obstruction, f: NcPolynomial, g: NcPolynomial) -> NcPolynomial:
    """S-polynomial of an obstruction; validates the common-multiple identity."""
    fw = ob.f_left + f.leading_word() + ob.f_right
    gw = ob.g_left + g.leading_word() + ob.g_right
    if fw != gw:
        raise InvalidObstruction("placement words disagree")
    lf = _shift(f, ob.f_left, ob.f_right, f.leading_coeff())
    lg = _shift(g, ob.g_left, ob.g_right, g.leading_coeff())
    terms = dict(lf)
    for w, c in lg.items():
        acc = terms.get(w, Fraction(0)) - c
        if acc:
            terms[w] = acc
        else:
            terms.pop(w, None)
    return NcPolynomial(f.alg, terms)


def _shift(p: NcPolynomial, left: bytes, right: bytes, denom: Fraction) -> dict[bytes, Fraction]:
    return {left + w + right: c / denom for w, c in p.terms.items()}


def build_reducer(basis: Sequence[NcPolynomial]) -> kernel.Automaton:
    """Divisibility automaton over the leading words of a basis."""
    automaton = kernel.Automaton()
    for g in basis:
        automaton.insert(g.leading_word())
    return automaton


class _Engine:
    def __init__(self, alg: Algebra, config: EngineConfig):
        self.alg = alg
        self.config = config
        self.polys: list[NcPolynomial] = []
        self.data: list[tuple[bytes, Fraction, tuple]] = []
        self.automaton = kernel.Automaton()
        self.queue: list = []
        self.seq = 0
        self.discarded = False
        self.iterations = 0
        self.start = time.monotonic()
        self.deadline = None if config.time_budget is None else self.start + config.time_budget
        self.unit = False  # the ideal turned out to contain 1

    def out_of_time(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline

    def append(self, p: NcPolynomial) -> None:
        p = p.monic()
        lt = p.leading_word()
        if not lt:
            # a nonzero constant: the ideal is the whole ring
            self.polys = [self.alg.one()]
            self.data = [poly_data(self.polys[0])]
            self.queue = []
            self.unit = True
            return
        t = len(self.polys)
        bound = self.config.degree_bound
        for j in range(t + 1):
            same = j == t
            u = self.data[j][0] if not same else lt
            for lf, rf, lg, rg in kernel.overlap_obstructions(u, lt, same):
                deg = len(lf) + len(u) + len(rf)
                if bound is not None and deg > bound:
                    self.discarded = True
                    continue
                heappush(self.queue, (deg, self.seq, (j, t, lf, rf, lg, rg)))
                self.seq += 1
        self.polys.append(p)
        self.data.append(poly_data(p))
        self.automaton.insert(lt)

    def reduce(self, terms: dict) -> dict:
        return kernel.reduce_terms(terms, self.data, self.automaton, None)


def buchberger(generators: Iterable[NcPolynomial], config: EngineConfig) -> GroebnerBasis:
    """Noncommutative Buchberger with fair selection and budget semantics."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise ZeroPolynomial("no nonzero generators")
    alg = gens[0].alg
    for g in gens:
        if g.alg != alg:
            raise VariableUniverseMismatch("generators live in different algebras")
    # deterministic feed order: by degree, then leading word, stable otherwise
    seen: set[frozenset] = set()
    ordered: list[NcPolynomial] = []
    for g in gens:
        key = frozenset(g.terms.items())
        if key not in seen:
            seen.add(key)
            ordered.append(g)
    ordered.sort(key=lambda g: (len(g.leading_word()), kernel.sort_key(g.leading_word())))

    eng = _Engine(alg, config)
    status: GBStatus | None = None

    for g in ordered:
        if eng.out_of_time():
            status = GBStatus.aborted("time")
            break
        rem = eng.reduce(g.terms)
        if rem:
            eng.append(NcPolynomial(alg, rem))
            if eng.unit:
                status = GBStatus.complete()
                break

    while status is None and eng.queue:
        if eng.out_of_time():
            status = GBStatus.aborted("time")
            break
        if config.max_iterations is not None and eng.iterations >= config.max_iterations:
            status = GBStatus.aborted("iterations")
            break
        deg, _, (j, t, lf, rf, lg, rg) = heappop(eng.queue)
        eng.iterations += 1
        f = eng.data[j]
        g = eng.data[t]
        terms: dict[bytes, Fraction] = {}
        for w, c in _iter_terms(f):
            nw = lf + w + rf
            acc = terms.get(nw, Fraction(0)) + c
            if acc:
                terms[nw] = acc
            else:
                terms.pop(nw, None)
        for w, c in _iter_terms(g):
            nw = lg + w + rg
            acc = terms.get(nw, Fraction(0)) - c
            if acc:
                terms[nw] = acc
            else:
                terms.pop(nw, None)
        if not terms:
            continue
        rem = eng.reduce(terms)
        if rem:
            eng.append(NcPolynomial(alg, rem))
            if eng.unit:
                status = GBStatus.complete()
                break

    if status is None:
        status = GBStatus.truncated(config.degree_bound) if eng.discarded else GBStatus.complete()

    basis = eng.polys
    if config.interreduce and not eng.unit:
        basis = interreduce(basis)
    basis.sort(key=lambda g: (len(g.leading_word()), kernel.sort_key(g.leading_word())))
    return GroebnerBasis(
        algebra=alg,
        generators=tuple(basis),
        status=status,
        iterations=eng.iterations,
        wall_time=time.monotonic() - eng.start,
    )


def _iter_terms(data: tuple[bytes, Fraction, tuple]) -> Iterable[tuple[bytes, Fraction]]:
    lt, lc, tail = data
    yield (lt, lc)
    yield from tail


def interreduce(polys: Sequence[NcPolynomial]) -> list[NcPolynomial]:
    """Fully interreduce: monic output, no generator reducible by the others.

    Phase one screens heads: elements are consumed in ascending leading-word
    order, fully reduced against the kept set, and accepting a new element
    evicts any kept element whose leading word it divides (evictions re-enter
    the pending heap, so cascades settle).  Phase two reduces every tail
    against the full kept set through one shared automaton; a kept leading
    word can never occur inside its own tail, because any word containing it
    would be at least as large in the admissible order.
    """
    pending = [p.monic() for p in polys if not p.is_zero()]
    if not pending:
        return []
    alg = pending[0].alg
    heap = []
    for seq, p in enumerate(pending):
        lt = p.leading_word()
        heap.append((len(lt), kernel.sort_key(lt), seq, p))
    heapify(heap)
    seq = len(heap)
    kept: list[NcPolynomial] = []
    data: list[tuple] = []
    automaton = kernel.Automaton()

    def rebuild() -> None:
        nonlocal automaton
        automaton = kernel.Automaton()
        for d in data:
            automaton.insert(d[0])

    while heap:
        _, _, _, p = heappop(heap)
        rem_terms = kernel.reduce_terms(p.terms, data, automaton, None)
        if not rem_terms:
            continue
        x = NcPolynomial(alg, rem_terms).monic()
        xlt = x.leading_word()
        if not xlt:
            return [alg.one()]
        evicted = []
        survivors_p = []
        survivors_d = []
        for g, d in zip(kept, data):
            if xlt in d[0]:
                evicted.append(g)
            else:
                survivors_p.append(g)
                survivors_d.append(d)
        kept = survivors_p
        data = survivors_d
        kept.append(x)
        data.append(poly_data(x))
        if evicted:
            rebuild()
        else:
            automaton.insert(xlt)
        for g in evicted:
            lt = g.leading_word()
            heappush(heap, (len(lt), kernel.sort_key(lt), seq, g))
            seq += 1

    order = sorted(range(len(kept)), key=lambda i: (len(data[i][0]), kernel.sort_key(data[i][0])))
    kept = [kept[i] for i in order]
    data = [data[i] for i in order]
    rebuild()
    for i in range(len(kept)):
        lt, lc, tail = data[i]
        reduced_tail = kernel.reduce_terms(dict(tail), data, automaton, None)
        terms = dict(reduced_tail)
        terms[lt] = lc
        p = NcPolynomial(alg, terms)
        kept[i] = p
        data[i] = poly_data(p)
    return kept


def stabilized_buchberger(
    generators: Sequence[NcPolynomial], degree_bound: int, config: EngineConfig
) -> tuple[GroebnerBasis, bool]:
    """Run with bounds d-1 and 2d-2; equal truncated bases read as complete.

    Returns the higher-bound basis and whether the two runs coincided; when
    they did the returned basis carries Complete status.
    """
    if degree_bound < 2:
        raise ValueError("stabilization needs a degree bound of at least 2")
    low = EngineConfig(
        degree_bound=degree_bound - 1,
        max_iterations=config.max_iterations,
        time_budget=config.time_budget,
        interreduce=True,
    )
    high = EngineConfig(
        degree_bound=2 * degree_bound - 2,
        max_iterations=config.max_iterations,
        time_budget=config.time_budget,
        interreduce=True,
    )
    gb_low = buchberger(generators, low)
    gb_high = buchberger(generators, high)
    if gb_low.status.kind == "aborted" or gb_high.status.kind == "aborted":
        return gb_high, False
    same = {frozenset(g.terms.items()) for g in gb_low.generators} == {
        frozenset(g.terms.items()) for g in gb_high.generators
    }
    if same and not gb_high.status.is_complete:
        gb_high = GroebnerBasis(
            algebra=gb_high.algebra,
            generators=gb_high.generators,
            status=GBStatus.complete(),
            iterations=gb_high.iterations,
            wall_time=gb_high.wall_time,
        )
    return gb_high, same


# -- serialization ------------------------------------------------------------


def write_gb(
    gb: GroebnerBasis,
    fp,
    *,
    matroid_hex: str,
    n: int,
    r: int,
    axioms: str,
) -> None:
    """Write the basis file: a one-line header, then one generator per line."""
    own = isinstance(fp, str)
    stream = open(fp, "w", encoding="utf-8") if own else fp
    try:
        stream.write(
            f"matroid={matroid_hex} n={n} r={r} axioms={axioms} "
            f"order={gb.order} status={gb.status.render()} degree={gb.max_degree}\n"
        )
        for g in gb.generators:
            stream.write(gb.algebra.format_poly(g) + "\n")
    finally:
        if own:
            stream.close()


def read_gb(fp) -> tuple[dict, GroebnerBasis]:
    """Parse a basis file back into (header fields, GroebnerBasis)."""
    own = isinstance(fp, str)
    stream = open(fp, "r", encoding="utf-8") if own else fp
    try:
        header = stream.readline().strip()
        fields: dict[str, str] = {}
        for part in header.split():
            key, _, value = part.partition("=")
            fields[key] = value
        n = int(fields["n"])
        alg = Algebra(tuple(range(1, n + 1)))
        gens = []
        for line in stream:
            line = line.strip()
            if line:
                gens.append(alg.parse_poly(line))
        gb = GroebnerBasis(
            algebra=alg,
            generators=tuple(gens),
            status=GBStatus.parse(fields["status"]),
            order=fields.get("order", "degrevlex"),
        )
        meta = {
            "matroid": fields["matroid"],
            "n": n,
            "r": int(fields["r"]),
            "axioms": fields["axioms"],
            "degree": int(fields["degree"]),
        }
        return meta, gb
    finally:
        if own:
            stream.close()
