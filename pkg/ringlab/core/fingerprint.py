"""
Isomorphism-invariant fingerprints used for catalog de-duplication
"""

import hashlib
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ringlab.core.rings import FinRing


class Fingerprint(BaseModel):
    """Invariant vector of a finite ring; equal for isomorphic rings"""

    model_config = ConfigDict(frozen=True)

    order: int = Field(..., description="Number of elements")
    idempotents: int = Field(..., description="Number of idempotents")
    units: int = Field(..., description="Number of units")
    central: int = Field(..., description="Number of central elements")
    characteristic: int = Field(..., description="Additive order of the identity")
    additive_digest: str = Field(..., description="sha256 of the sorted additive element orders")

    def as_tuple(self) -> Tuple[object, ...]:
        return (self.order, self.idempotents, self.units, self.central, self.characteristic, self.additive_digest)

    def short_hash(self) -> str:
        text = ":".join(str(v) for v in self.as_tuple())
        return hashlib.sha256(text.encode()).hexdigest()[:12]


def additive_orders(add: np.ndarray, zero: int) -> np.ndarray:
    """Order of every element in the additive group"""
    n = add.shape[0]
    index = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    multiple = index.copy()
    for k in range(1, n + 1):
        done = (multiple == zero) & (orders == 0)
        orders[done] = k
        if orders.all():
            break
        multiple = add[multiple, index]
    return orders


def fingerprint(ring: FinRing) -> Fingerprint:
    def compute() -> Fingerprint:
        mul, n = ring.mul, ring.order
        diagonal = mul[np.arange(n), np.arange(n)]
        inverse_hits = (mul == ring.one) & (mul.T == ring.one)
        orders = additive_orders(ring.add, ring.zero)
        digest = hashlib.sha256(",".join(str(v) for v in np.sort(orders)).encode()).hexdigest()
        return Fingerprint(
            order=n,
            idempotents=int((diagonal == np.arange(n)).sum()),
            units=int(inverse_hits.any(axis=1).sum()),
            central=int((mul == mul.T).all(axis=1).sum()),
            characteristic=int(orders[ring.one]),
            additive_digest=digest,
        )

    return ring.cached("fingerprint", compute)
