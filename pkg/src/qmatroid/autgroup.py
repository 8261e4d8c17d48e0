"""Classical automorphisms and isomorphisms of small matroids, by brute force.

Permutations are stored extensionally as tuples of images aligned with the
sorted ground labels; degree is capped at 9 (9! = 362880 candidates).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

from .matroids import Matroid, TooLarge


@dataclass(frozen=True)
class PermGroup:
    """Extensional permutation group on a fixed label tuple."""

    domain: tuple[int, ...]
    perms: frozenset[tuple[int, ...]]

    @property
    def order(self) -> int:
        return len(self.perms)

    def __iter__(self) -> Iterator[dict[int, int]]:
        for images in sorted(self.perms):
            yield dict(zip(self.domain, images))

    def __contains__(self, mapping: object) -> bool:
        if isinstance(mapping, dict):
            try:
                images = tuple(mapping[x] for x in self.domain)
            except KeyError:
                return False
            return images in self.perms
        return False


def _apply_to_mask(images: tuple[int, ...], domain: tuple[int, ...], mask: int) -> int:
    out = 0
    for pos, label in enumerate(domain):
        if mask & (1 << (label - 1)):
            out |= 1 << (images[pos] - 1)
    return out


def automorphism_group(m: Matroid) -> PermGroup:
    """All basis-preserving permutations of the ground set."""
    domain = m.ground.elements
    if len(domain) > 9:
        raise TooLarge(f"automorphism search is guarded to degree 9, got {len(domain)}")
    masks = m.basis_masks
    found = []
    for images in permutations(domain):
        if all(_apply_to_mask(images, domain, b) in masks for b in masks):
            found.append(images)
    return PermGroup(domain, frozenset(found))


def find_isomorphism(m1: Matroid, m2: Matroid) -> dict[int, int] | None:
    """A basis-preserving bijection of ground sets, or None."""
    d1 = m1.ground.elements
    d2 = m2.ground.elements
    if len(d1) != len(d2) or m1.rank != m2.rank or len(m1.basis_masks) != len(m2.basis_masks):
        return None
    if len(d1) > 9:
        raise TooLarge(f"isomorphism search is guarded to degree 9, got {len(d1)}")
    masks2 = m2.basis_masks
    for images in permutations(d2):
        if all(_apply_to_mask(images, d1, b) in masks2 for b in m1.basis_masks):
            return dict(zip(d1, images))
    return None


def is_isomorphic(m1: Matroid, m2: Matroid) -> bool:
    return find_isomorphism(m1, m2) is not None
