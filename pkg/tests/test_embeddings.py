"""
Tests for unital ring embeddings
"""

import pytest

from ringlab.errors import EmbeddingError
from ringlab.services.embeddings import find_ring_embedding, require_embedding


class TestEmbeddings:
    """Search for unital monomorphisms"""

    def test_prime_field_in_extension(self, ring_from, f4):
        """Test GF(2) sits in GF(4) with the same idempotents"""
        embedding = require_embedding(ring_from("gf(2)"), f4, 10_000)
        assert [embedding.image(a) for a in (0, 1)] == [0, 1]
        assert embedding.same_idempotents()

    def test_dual_numbers_in_uppertri(self, dual2, t2f2):
        """Test x maps to E12, missing the diagonal idempotents"""
        embedding = require_embedding(dual2, t2f2, 10_000)
        assert embedding.image(1) == t2f2.one
        assert embedding.image(2) == 2
        assert not embedding.same_idempotents()
        assert find_ring_embedding(dual2, t2f2, 10_000, same_idempotents=True) is None

    def test_characteristic_mismatch(self, ring_from, z4):
        """Test GF(2) has no unital embedding into Z/4"""
        source = ring_from("gf(2)")
        assert find_ring_embedding(source, z4, 10_000) is None
        with pytest.raises(EmbeddingError):
            require_embedding(source, z4, 10_000)

    def test_order_must_divide(self, ring_from, z4):
        """Test Z/3 cannot embed in a ring of order 4"""
        assert find_ring_embedding(ring_from("zmod(3)"), z4, 10_000) is None

    def test_star_preservation(self, ring_from, f2f2_swap):
        """Test the diagonal GF(2) -> GF(2)^2 preserves the involution"""
        source = ring_from("ring F = gf(2) with involution identity")
        embedding = require_embedding(source, f2f2_swap, 10_000)
        assert embedding.image(1) == 3
        assert embedding.preserves_star()
        assert embedding.same_projections()
