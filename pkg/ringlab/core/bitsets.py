"""
Bitmask encoding of element subsets

A subset of {0..n-1} is a Python int whose bit i is set when element i is a
member. Ideals, submodules and annihilators are all interned by this mask.
"""

from typing import Dict, Iterable, List, Sequence

import numpy as np

from ringlab.errors import BudgetExceeded


def mask_from_indices(indices: Iterable[int], n: int) -> int:
    flags = np.zeros(n, dtype=bool)
    idx = np.fromiter(indices, dtype=np.int64) if not isinstance(indices, np.ndarray) else indices
    flags[idx] = True
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def indices_from_mask(mask: int, n: int) -> np.ndarray:
    raw = mask.to_bytes((n + 7) // 8, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n]
    return np.flatnonzero(bits)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def row_masks(table: np.ndarray, n: int) -> List[int]:
    """Mask of the set of values occurring in each row of ``table``"""
    rows = table.shape[0]
    flags = np.zeros((rows, n), dtype=bool)
    flags[np.arange(rows)[:, None], table] = True
    packed = np.packbits(flags, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def coset_union(add: np.ndarray, subgroup: np.ndarray, subgroup_mask: int, others: Iterable[int], n: int) -> int:
    """Mask of subgroup + others, assuming ``subgroup`` is an additive subgroup"""
    result = subgroup_mask
    for c in others:
        if not (result >> int(c)) & 1:
            result |= mask_from_indices(add[subgroup, int(c)], n)
    return result


def sum_closure(
    add: np.ndarray,
    cyclic_masks: Sequence[int],
    zero_mask: int,
    n: int,
    limit: int,
    what: str,
) -> List[int]:
    """All sums of subfamilies of ``cyclic_masks``, each a subgroup containing zero.

    Incremental: after folding in cyclic C the family holds every sum of the
    cyclics seen so far. Raises BudgetExceeded past ``limit`` members.
    """
    members: List[int] = [zero_mask]
    seen = {zero_mask}
    elements: Dict[int, np.ndarray] = {zero_mask: indices_from_mask(zero_mask, n)}
    for cyclic in sorted(set(cyclic_masks), key=lambda m: (popcount(m), m)):
        cyclic_elements = indices_from_mask(cyclic, n)
        fresh: List[int] = []
        for member in members:
            if cyclic & ~member == 0:
                continue
            total = coset_union(add, elements[member], member, cyclic_elements, n)
            if total in seen:
                continue
            seen.add(total)
            fresh.append(total)
            elements[total] = indices_from_mask(total, n)
            if len(seen) > limit:
                raise BudgetExceeded(what, limit)
        members.extend(fresh)
    return members
