"""Strong maps between pointed matroids, hom counting, and the hom-profile
isomorphism test.

Every matroid is silently extended by a basepoint loop 0; a map between
ground sets may send elements to the basepoint, which models deletion.  A
mapping f is a strong map when the preimage of every pointed flat is a
pointed flat, concretely: for each flat G of the target, the set of source
elements mapped into G or to the basepoint must be a flat of the source.

Since images of maps can be empty, the catalog of isomorphism classes needs
an explicit empty matroid, which the main matroid type cannot represent; the
module-level EMPTY_MATROID sentinel stands for it.

Hom counts decompose through images: the number of strong maps M1 -> M2
equals the sum over isomorphism classes N of

    Surj(M1, N) * Emb(N, M2) / |Aut(N)|

because a map factors uniquely up to an automorphism of its image class as a
surjection onto the image followed by an embedding.  Hom profiles against a
catalog of all classes up to the larger ground set size separate isomorphism
classes, which turns isomorphism testing into comparing count vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Union

from .autgroup import automorphism_group
from .matroids import (
    Matroid,
    TooLarge,
    canonical_basis_masks,
    enumerate_all_matroids,
    relabel,
)

BASEPOINT = 0

MAP_ENUMERATION_CAP = 10_000_000


class CatalogIncomplete(ValueError):
    pass


class _EmptyMatroid:
    """Sentinel for the matroid on the empty ground set (rank 0, one basis)."""

    n = 0
    rank = 0

    def __repr__(self) -> str:
        return "EMPTY_MATROID"


EMPTY_MATROID = _EmptyMatroid()

AnyMatroid = Union[Matroid, _EmptyMatroid]

EMPTY_KEY = (0, (0,))


def iso_key(m: AnyMatroid) -> tuple[int, tuple[int, ...]]:
    """Hashable isomorphism-class key: ground size plus canonical basis masks."""
    if isinstance(m, _EmptyMatroid):
        return EMPTY_KEY
    return (m.n, canonical_basis_masks(m))


def aut_order(m: AnyMatroid) -> int:
    if isinstance(m, _EmptyMatroid):
        return 1
    return automorphism_group(m).order


@dataclass(frozen=True)
class StrongMap:
    """A verified strong map; mapping sends source labels to target labels or 0."""

    source: Matroid
    target: Matroid
    mapping: tuple[tuple[int, int], ...]

    def __call__(self, x: int) -> int:
        return dict(self.mapping)[x]

    @property
    def image_labels(self) -> frozenset[int]:
        return frozenset(v for _, v in self.mapping if v != BASEPOINT)

    @property
    def is_surjective(self) -> bool:
        return self.image_labels == frozenset(self.target.ground)

    @property
    def is_embedding(self) -> bool:
        return _is_embedding(self.source, self.target, dict(self.mapping))

    def image(self) -> AnyMatroid:
        labels = self.image_labels
        if not labels:
            return EMPTY_MATROID
        return self.target.restrict(labels)


def is_strong_map(m1: Matroid, m2: Matroid, mapping: dict[int, int]) -> bool:
    """Check the pointed flat preimage condition for an explicit mapping."""
    if sorted(mapping) != sorted(m1.ground.elements):
        raise ValueError("mapping must be defined on exactly the source ground set")
    allowed = set(m2.ground.elements) | {BASEPOINT}
    if any(v not in allowed for v in mapping.values()):
        raise ValueError("mapping values must be target labels or the basepoint 0")
    flats1 = set(m1.flats().members)
    for g in m2.flats():
        pre = frozenset(x for x, v in mapping.items() if v == BASEPOINT or v in g)
        if pre not in flats1:
            return False
    return True


def _is_embedding(m1: Matroid, m2: Matroid, mapping: dict[int, int]) -> bool:
    # An embedding needs the image restriction isomorphic to the source; for
    # an injective basepoint-free strong map this forces equal ranks, and a
    # strong bijection between equal-rank matroids is itself an isomorphism,
    # so testing isomorphy along the map is equivalent.
    values = list(mapping.values())
    if BASEPOINT in values or len(set(values)) != len(values):
        return False
    return relabel(m1, mapping) == m2.restrict(values)


def strong_maps(m1: Matroid, m2: Matroid) -> Iterator[StrongMap]:
    """All strong maps, by exhaustive search over (n2 + 1)^n1 candidates."""
    src = m1.ground.elements
    codomain = (BASEPOINT,) + m2.ground.elements
    total = len(codomain) ** len(src)
    if total > MAP_ENUMERATION_CAP:
        raise TooLarge(f"{total} candidate maps exceed cap {MAP_ENUMERATION_CAP}")
    flats1 = set(m1.flats().members)
    flats2 = list(m2.flats().members)
    for values in product(codomain, repeat=len(src)):
        mapping = dict(zip(src, values))
        ok = True
        for g in flats2:
            pre = frozenset(x for x, v in mapping.items() if v == BASEPOINT or v in g)
            if pre not in flats1:
                ok = False
                break
        if ok:
            yield StrongMap(m1, m2, tuple(sorted(mapping.items())))


@dataclass(frozen=True)
class HomCounts:
    hom: int
    surj: int
    emb: int
    by_image_class: tuple[tuple[tuple[int, tuple[int, ...]], int], ...]

    def image_class_counts(self) -> dict[tuple[int, tuple[int, ...]], int]:
        return dict(self.by_image_class)


def hom_counts(m1: AnyMatroid, m2: AnyMatroid) -> HomCounts:
    """Count strong maps m1 -> m2, the surjective ones, and the embeddings."""
    if isinstance(m1, _EmptyMatroid):
        surj = 1 if isinstance(m2, _EmptyMatroid) else 0
        return HomCounts(1, surj, 1, ((EMPTY_KEY, 1),))
    if isinstance(m2, _EmptyMatroid):
        # only the all-to-basepoint map; its preimage of the empty flat is E1
        return HomCounts(1, 1, 0, ((EMPTY_KEY, 1),))
    hom = surj = emb = 0
    target_all = frozenset(m2.ground)
    key_cache: dict[frozenset[int], tuple[int, tuple[int, ...]]] = {}
    by_class: dict[tuple[int, tuple[int, ...]], int] = {}
    for f in strong_maps(m1, m2):
        hom += 1
        img = f.image_labels
        if img == target_all:
            surj += 1
        if f.is_embedding:
            emb += 1
        if img not in key_cache:
            key_cache[img] = EMPTY_KEY if not img else iso_key(m2.restrict(img))
        key = key_cache[img]
        by_class[key] = by_class.get(key, 0) + 1
    return HomCounts(hom, surj, emb, tuple(sorted(by_class.items())))


def iso_class_catalog(max_n: int) -> list[AnyMatroid]:
    """One representative per isomorphism class with at most max_n elements."""
    out: list[AnyMatroid] = [EMPTY_MATROID]
    for n in range(1, max_n + 1):
        out.extend(enumerate_all_matroids(n, up_to_iso=True))
    return out


@dataclass(frozen=True)
class DecompositionTerm:
    matroid: AnyMatroid
    surj: int
    emb: int
    aut: int

    @property
    def contribution(self) -> Fraction:
        return Fraction(self.surj * self.emb, self.aut)


@dataclass(frozen=True)
class DecompositionReport:
    hom: int
    total: Fraction
    terms: tuple[DecompositionTerm, ...]

    @property
    def ok(self) -> bool:
        return self.total == self.hom


def verify_decomposition(
    m1: AnyMatroid, m2: AnyMatroid, catalog: list[AnyMatroid]
) -> DecompositionReport:
    """Check hom = sum over classes of surj * emb / aut against a catalog.

    Raises CatalogIncomplete when some image class of an actual strong map has
    no representative in the catalog, since the identity cannot hold then.
    """
    keys = {iso_key(n) for n in catalog}
    direct = hom_counts(m1, m2)
    missing = [k for k, _ in direct.by_image_class if k not in keys]
    if missing:
        raise CatalogIncomplete(f"catalog lacks image classes with keys {missing}")
    terms = []
    total = Fraction(0)
    for n in catalog:
        s = hom_counts(m1, n).surj
        e = hom_counts(n, m2).emb
        if s == 0 or e == 0:
            continue
        term = DecompositionTerm(n, s, e, aut_order(n))
        terms.append(term)
        total += term.contribution
    return DecompositionReport(direct.hom, total, tuple(terms))


def hom_profile(m: AnyMatroid, catalog: list[AnyMatroid]) -> tuple[int, ...]:
    """Vector of hom counts from m into each catalog representative."""
    return tuple(hom_counts(m, n).hom for n in catalog)


def lovasz_isomorphism_test(
    m1: AnyMatroid,
    m2: AnyMatroid,
    catalog: list[AnyMatroid] | None = None,
    return_witness: bool = False,
):
    """Decide isomorphism by comparing hom profiles over a separating catalog.

    Strong-map counts out of the two candidates separate isomorphism classes
    (the direction is opposite to the graph homomorphism count theorem); a
    catalog covering every class up to the larger ground set size suffices,
    since equal counts into each candidate's own class already force mutually
    surjective strong maps.
    """
    if catalog is None:
        catalog = iso_class_catalog(max(m1.n, m2.n))
    for n in catalog:
        a = hom_counts(m1, n).hom
        b = hom_counts(m2, n).hom
        if a != b:
            return (False, (n, a, b)) if return_witness else False
    return (True, None) if return_witness else True
