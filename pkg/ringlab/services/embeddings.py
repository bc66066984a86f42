"""
Unital ring embeddings R -> Q between catalog rings
"""

from dataclasses import dataclass
from typing import Iterator, List, Optional

import numpy as np

from ringlab.core.bitsets import indices_from_mask, mask_from_indices, popcount
from ringlab.core.fingerprint import additive_orders
from ringlab.core.rings import FinRing
from ringlab.errors import BudgetExceeded, EmbeddingError
from ringlab.services.elements import classify_elements
from ringlab.utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class RingEmbedding:
    source: FinRing
    target: FinRing
    values: np.ndarray

    def image(self, a: int) -> int:
        return int(self.values[a])

    def same_idempotents(self) -> bool:
        """Every idempotent of the target lies in the image"""
        image = set(int(v) for v in self.values)
        return all(int(e) in image for e in classify_elements(self.target).idempotents)

    def same_projections(self) -> bool:
        if self.source.star is None or self.target.star is None:
            return False
        image = set(int(v) for v in self.values)
        return all(int(p) in image for p in classify_elements(self.target).projections)

    def preserves_star(self) -> bool:
        if self.source.star is None or self.target.star is None:
            return False
        return bool(np.array_equal(self.values[self.source.star], self.target.star[self.values]))


def _cyclic_subgroup(add: np.ndarray, zero: int, g: int) -> np.ndarray:
    multiples = [zero]
    current = g
    while current != zero:
        multiples.append(current)
        current = int(add[current, g])
    return np.asarray(multiples, dtype=np.int64)


def additive_generators(ring: FinRing) -> List[int]:
    """Greedy generators of (R, +), starting with the identity"""
    n = ring.order
    span = 1 << ring.zero
    generators: List[int] = []
    candidates = [ring.one] + [a for a in ring.elements() if a != ring.one]
    while popcount(span) < n:
        best, best_mask = -1, span
        span_elements = indices_from_mask(span, n)
        for g in candidates:
            if (span >> g) & 1:
                continue
            multiples = _cyclic_subgroup(ring.add, ring.zero, g)
            grown = mask_from_indices(ring.add[np.ix_(span_elements, multiples)].ravel(), n)
            if popcount(grown) > popcount(best_mask):
                best, best_mask = g, grown
            if g == ring.one and not generators:
                break
        generators.append(best)
        span = best_mask
    return generators


def _embeddings(source: FinRing, target: FinRing, limit: int) -> Iterator[RingEmbedding]:
    generators = additive_generators(source)
    source_orders = additive_orders(source.add, source.zero)
    target_orders = additive_orders(target.add, target.zero)
    assignments = 0

    def search(depth: int, images: np.ndarray) -> Iterator[RingEmbedding]:
        nonlocal assignments
        known = np.flatnonzero(images >= 0)
        if depth == len(generators):
            values = images
            if np.unique(values).size != source.order:
                return
            if not np.array_equal(values[source.mul], target.mul[np.ix_(values, values)]):
                return
            yield RingEmbedding(source, target, values.copy())
            return
        g = generators[depth]
        multiples = _cyclic_subgroup(source.add, source.zero, g)
        if depth == 0 and g == source.one:
            candidates = np.array([target.one])
        else:
            candidates = np.flatnonzero(target_orders == source_orders[g])
        for y in candidates:
            assignments += 1
            if assignments > limit:
                raise BudgetExceeded("embedding search assignments", limit, f"{source.label} -> {target.label}")
            y_multiples = _cyclic_subgroup(target.add, target.zero, int(y))
            if y_multiples.size != multiples.size:
                continue
            keys = source.add[np.ix_(known, multiples)]
            vals = target.add[np.ix_(images[known], y_multiples)]
            extended = images.copy()
            extended[keys.ravel()] = vals.ravel()
            if not np.array_equal(extended[keys], vals):
                continue
            yield from search(depth + 1, extended)

    start = np.full(source.order, -1, dtype=np.int64)
    start[source.zero] = target.zero
    yield from search(0, start)


def find_ring_embedding(
    source: FinRing,
    target: FinRing,
    limit: int,
    same_idempotents: bool = False,
) -> Optional[RingEmbedding]:
    """First unital ring monomorphism source -> target, optionally onto the target's idempotents"""
    if target.order % source.order:
        return None
    for embedding in _embeddings(source, target, limit):
        if same_idempotents and not embedding.same_idempotents():
            continue
        logger.debug("embedding found", source=source.label, target=target.label)
        return embedding
    return None


def require_embedding(source: FinRing, target: FinRing, limit: int) -> RingEmbedding:
    """The embedding a catalog statement asserts; prefers one with the same idempotents"""
    embedding = find_ring_embedding(source, target, limit, same_idempotents=True)
    if embedding is None:
        embedding = find_ring_embedding(source, target, limit)
    if embedding is None:
        raise EmbeddingError(f"{source.label} does not embed in {target.label} as a unital ring")
    return embedding
