"""Free noncommutative polynomials over the rationals in matrix generators u[i,j].

An Algebra fixes the ground labels; its n*n generators u[i,j] (i, j ground
labels) are single letters.  Words are bytes: letter (i, j) encodes to
row_position * n + col_position, which makes the (row, col) lexicographic
variable order the byte order.  Polynomials map words to nonzero Fractions.

The monomial order is graded: shorter words are smaller, equal-length words
compare letterwise from the right and the word whose first differing letter
is the smaller variable is the larger word.  The empty word (the constant 1)
is minimal.

Canonical text form: terms in descending word order, coefficient as a reduced
rational, letters joined with '*', e.g. ``u[1,1]*u[1,2] - 1/2*u[2,1] + 3``.
parse_poly accepts the same grammar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from . import kernel

ZERO = Fraction(0)
ONE = Fraction(1)


class VariableUniverseMismatch(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Variable:
    """Generator u[row, col]; row and col are ground labels."""

    row: int
    col: int

    def __str__(self) -> str:
        return f"u[{self.row},{self.col}]"


@dataclass(frozen=True)
class Algebra:
    """Variable universe: the free algebra on u[i,j] for i, j in a label tuple."""

    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ValueError("algebra needs at least one label")
        if any(a >= b for a, b in zip(labels, labels[1:])):
            raise ValueError("labels must be strictly increasing")
        if len(labels) > 16:
            raise ValueError("at most 16 labels supported (variable ids must fit a byte)")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def nvars(self) -> int:
        return self.n * self.n

    def _pos(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise VariableUniverseMismatch(f"label {label} not in algebra labels {self.labels}") from None

    def var_id(self, row: int, col: int) -> int:
        return self._pos(row) * self.n + self._pos(col)

    def id_to_variable(self, vid: int) -> Variable:
        return Variable(self.labels[vid // self.n], self.labels[vid % self.n])

    def word(self, pairs: Iterable[tuple[int, int]]) -> bytes:
        return bytes(self.var_id(i, j) for i, j in pairs)

    def letters(self, word: bytes) -> tuple[Variable, ...]:
        return tuple(self.id_to_variable(b) for b in word)

    def compare_words(self, w1: bytes, w2: bytes) -> int:
        return kernel.compare_words(w1, w2)

    def word_key(self, w: bytes):
        return kernel.sort_key(w)

    # -- polynomial constructors -------------------------------------------

    def zero(self) -> NcPolynomial:
        return NcPolynomial(self, {})

    def one(self) -> NcPolynomial:
        return NcPolynomial(self, {b"": ONE})

    def constant(self, c) -> NcPolynomial:
        c = Fraction(c)
        return NcPolynomial(self, {b"": c} if c else {})

    def gen(self, row: int, col: int) -> NcPolynomial:
        return NcPolynomial(self, {bytes([self.var_id(row, col)]): ONE})

    def monomial(self, pairs: Iterable[tuple[int, int]], coeff=ONE) -> NcPolynomial:
        c = Fraction(coeff)
        if not c:
            return self.zero()
        return NcPolynomial(self, {self.word(pairs): c})

    def poly(self, terms: Mapping[bytes, Fraction]) -> NcPolynomial:
        return NcPolynomial(self, {w: Fraction(c) for w, c in terms.items() if c})

    # -- text form -----------------------------------------------------------

    def format_word(self, word: bytes) -> str:
        if not word:
            return "1"
        return "*".join(str(v) for v in self.letters(word))

    def format_poly(self, p: NcPolynomial) -> str:
        if not p.terms:
            return "0"
        parts: list[str] = []
        for i, (w, c) in enumerate(p.sorted_terms()):
            mag = abs(c)
            if not w:
                body = _fmt_frac(mag)
            elif mag == 1:
                body = self.format_word(w)
            else:
                body = f"{_fmt_frac(mag)}*{self.format_word(w)}"
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def parse_poly(self, text: str) -> NcPolynomial:
        s = text.strip()
        if not s:
            raise ParseError("empty polynomial text")
        if s == "0":
            return self.zero()
        terms: dict[bytes, Fraction] = {}
        for chunk in s.replace("-", "+-").split("+"):
            chunk = chunk.strip()
            if not chunk:
                continue
            sign = ONE
            if chunk.startswith("-"):
                sign = -ONE
                chunk = chunk[1:].strip()
            if not chunk:
                raise ParseError(f"dangling sign in {text!r}")
            coeff = sign
            letters: list[int] = []
            for factor in chunk.split("*"):
                factor = factor.strip()
                m = _VAR_RE.fullmatch(factor)
                if m:
                    letters.append(self.var_id(int(m.group(1)), int(m.group(2))))
                    continue
                try:
                    coeff *= Fraction(factor)
                except (ValueError, ZeroDivisionError) as exc:
                    raise ParseError(f"bad factor {factor!r} in {text!r}") from exc
            w = bytes(letters)
            acc = terms.get(w, ZERO) + coeff
            if acc:
                terms[w] = acc
            else:
                terms.pop(w, None)
        return NcPolynomial(self, terms)


_VAR_RE = re.compile(r"u\[\s*(\d+)\s*,\s*(\d+)\s*\]")


def _fmt_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class NcPolynomial:
    """Immutable-by-convention free polynomial: dict of word -> nonzero Fraction."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict[bytes, Fraction]):
        self.alg = alg
        self.terms = terms

    # -- ring structure ------------------------------------------------------

    def _check(self, other: NcPolynomial) -> None:
        if self.alg != other.alg:
            raise VariableUniverseMismatch("polynomials live in different algebras")

    def __add__(self, other) -> NcPolynomial:
        if not isinstance(other, NcPolynomial):
            return self + self.alg.constant(other)
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            acc = terms.get(w, ZERO) + c
            if acc:
                terms[w] = acc
            else:
                terms.pop(w, None)
        return NcPolynomial(self.alg, terms)

    __radd__ = __add__

    def __neg__(self) -> NcPolynomial:
        return NcPolynomial(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> NcPolynomial:
        if not isinstance(other, NcPolynomial):
            return self - self.alg.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> NcPolynomial:
        return (-self) + other

    def __mul__(self, other) -> NcPolynomial:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return self.alg.zero()
            return NcPolynomial(self.alg, {w: cv * c for w, cv in self.terms.items()})
        self._check(other)
        terms: dict[bytes, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                acc = terms.get(w, ZERO) + c1 * c2
                if acc:
                    terms[w] = acc
                else:
                    terms.pop(w, None)
        return NcPolynomial(self.alg, terms)

    def __rmul__(self, other) -> NcPolynomial:
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NcPolynomial)
            and self.alg == other.alg
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.alg, frozenset(self.terms.items())))

    # -- structure queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sorted_terms(self) -> list[tuple[bytes, Fraction]]:
        key = kernel.sort_key
        return sorted(self.terms.items(), key=lambda item: key(item[0]), reverse=True)

    def leading_term(self) -> tuple[bytes, Fraction]:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        key = kernel.sort_key
        w = max(self.terms, key=key)
        return (w, self.terms[w])

    def leading_word(self) -> bytes:
        return self.leading_term()[0]

    def leading_coeff(self) -> Fraction:
        return self.leading_term()[1]

    def degree(self) -> int:
        """Length of the longest word (the order is graded, so this is len(LT))."""
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        return max(len(w) for w in self.terms)

    def monic(self) -> NcPolynomial:
        _, lc = self.leading_term()
        if lc == 1:
            return self
        return NcPolynomial(self.alg, {w: c / lc for w, c in self.terms.items()})

    def star(self) -> NcPolynomial:
        """Antilinear involution: reverse words; rational coefficients are fixed."""
        terms: dict[bytes, Fraction] = {}
        for w, c in self.terms.items():
            terms[w[::-1]] = terms.get(w[::-1], ZERO) + c
        return NcPolynomial(self.alg, {w: c for w, c in terms.items() if c})

    def map_labels(self, mapping: Mapping[int, int], target: Algebra) -> NcPolynomial:
        """Push the polynomial through a label renaming into a target algebra."""
        terms: dict[bytes, Fraction] = {}
        for w, c in self.terms.items():
            pairs = [(mapping[v.row], mapping[v.col]) for v in self.alg.letters(w)]
            nw = target.word(pairs)
            acc = terms.get(nw, ZERO) + c
            if acc:
                terms[nw] = acc
            else:
                terms.pop(nw, None)
        return NcPolynomial(target, terms)

    def __str__(self) -> str:
        return self.alg.format_poly(self)

    def __repr__(self) -> str:
        return f"NcPolynomial({self.alg.format_poly(self)})"


def poly_data(p: NcPolynomial) -> tuple[bytes, Fraction, tuple[tuple[bytes, Fraction], ...]]:
    """(leading word, leading coeff, descending tail) as the kernel consumes it."""
    items = p.sorted_terms()
    lt, lc = items[0]
    return (lt, lc, tuple(items[1:]))


def normal_remainder(
    p: NcPolynomial,
    basis: Iterable[NcPolynomial],
    trace: list | None = None,
) -> NcPolynomial:
    """Normal form of p against a list of nonzero polynomials.

    Deterministic: each divisible term is rewritten through the match with the
    earliest end position in the word, ties broken by lowest basis index.
    When trace is a list it receives (cofactor, left, index, right) entries
    with p = sum(cofactor * left * basis[index] * right) + remainder.
    """
    basis = list(basis)
    data = []
    automaton = kernel.Automaton()
    for g in basis:
        if g.alg != p.alg:
            raise VariableUniverseMismatch("basis polynomial in a different algebra")
        if g.is_zero():
            raise ZeroPolynomial("zero polynomial in reduction basis")
        data.append(poly_data(g))
        automaton.insert(data[-1][0])
    out = kernel.reduce_terms(p.terms, data, automaton, trace)
    return NcPolynomial(p.alg, out)


def replay_trace(
    trace: Iterable[tuple[Fraction, bytes, int, bytes]],
    basis: list[NcPolynomial],
    remainder: NcPolynomial,
) -> NcPolynomial:
    """Rebuild the reduced polynomial from a certificate: sum + remainder."""
    alg = remainder.alg
    total = dict(remainder.terms)
    for q, left, idx, right in trace:
        for w, c in basis[idx].terms.items():
            nw = left + w + right
            acc = total.get(nw, ZERO) + q * c
            if acc:
                total[nw] = acc
            else:
                total.pop(nw, None)
    return NcPolynomial(alg, total)


def word_iter(word: bytes, alg: Algebra) -> Iterator[Variable]:
    return iter(alg.letters(word))
