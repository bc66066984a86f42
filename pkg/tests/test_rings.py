"""
Tests for ring tables, validation and the constructors
"""

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as hs

from ringlab.config import Budgets
from ringlab.core import constructors
from ringlab.core.constructors import attach_involution, gf, matrix_ring, product_ring, smallest_irreducible, zmod
from ringlab.core.rings import RingTables, validate_ring
from ringlab.errors import (
    BadInvolution,
    NoIdentity,
    NonPrimeCharacteristic,
    NotAGroup,
    NotDistributive,
    SizeBudgetExceeded,
    TableShapeError,
)


class TestValidation:
    """Ring axioms are checked by full table scans"""

    def test_zmod_tables(self, z4):
        """Test residue indexing of zmod"""
        assert z4.order == 4
        assert z4.zero == 0
        assert z4.one == 1
        assert z4.plus(3, 2) == 1
        assert z4.times(2, 2) == 0
        assert z4.minus(1, 3) == 2

    def test_missing_additive_identity(self):
        """Test a constant addition table is rejected"""
        with pytest.raises(NotAGroup):
            validate_ring(RingTables(add=[[0, 0], [0, 0]], mul=[[0, 0], [0, 1]]))

    def test_missing_identity(self):
        """Test the zero multiplication has no identity"""
        with pytest.raises(NoIdentity):
            validate_ring(RingTables(add=[[0, 1], [1, 0]], mul=[[0, 0], [0, 0]]))

    def test_non_distributive(self):
        """Test 2*2 = 2 over the integers mod 3 breaks distributivity"""
        add = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
        mul = [[0, 0, 0], [0, 1, 2], [0, 2, 2]]
        with pytest.raises(NotDistributive) as info:
            validate_ring(RingTables(add=add, mul=mul))
        assert len(info.value.witness) == 3

    def test_shape_mismatch(self):
        """Test non-square tables are rejected before any axiom check"""
        with pytest.raises(TableShapeError):
            validate_ring(RingTables(add=[[0, 1, 0], [1, 0, 1]], mul=[[0, 0], [0, 1]]))

    def test_tables_are_read_only(self, z4):
        """Test constructed rings cannot be mutated"""
        with pytest.raises(ValueError):
            z4.mul[0, 0] = 1


class TestConstructors:
    """Canonical index orderings of the constructors"""

    def test_gf4_multiplication(self, f4):
        """Test x * x = x + 1 with x at index 2"""
        assert smallest_irreducible(2, 2) == (1, 1)
        assert f4.order == 4
        assert f4.times(2, 2) == 3
        assert f4.times(2, 3) == 1

    def test_gf_rejects_composite(self, budgets):
        """Test gf needs a prime characteristic"""
        with pytest.raises(NonPrimeCharacteristic):
            gf(4, 1, budgets)

    def test_uppertri_indexing(self, t2f2):
        """Test index 4a + 2b + d for [[a, b], [0, d]]"""
        assert t2f2.order == 8
        assert t2f2.one == 5
        e11, e12 = 4, 2
        assert t2f2.times(e11, e12) == e12
        assert t2f2.times(e12, e11) == 0
        assert not t2f2.is_commutative()

    def test_matrix_indexing(self, m2f2):
        """Test index 8a + 4b + 2c + d for [[a, b], [c, d]]"""
        assert m2f2.order == 16
        assert m2f2.one == 9
        e12, e21 = 4, 2
        assert m2f2.times(e12, e21) == 8
        assert m2f2.times(e21, e12) == 1

    def test_product_is_left_major(self, ring_from):
        """Test index a * |S| + b in product(R, S)"""
        ring = ring_from("product(gf(2), gf(3))")
        assert ring.order == 6
        assert ring.one == 1 * 3 + 1
        assert ring.times(5, 5) == 1 * 3 + 1

    def test_opposite_transposes_multiplication(self, t2f2):
        """Test the opposite ring shares indices and reverses products"""
        op = t2f2.opposite()
        assert op.order == t2f2.order
        assert op.times(2, 4) == t2f2.times(4, 2)
        assert t2f2.opposite() is op

    def test_order_budget(self):
        """Test a constructor refuses rings above the order cap"""
        with pytest.raises(SizeBudgetExceeded) as info:
            matrix_ring(zmod(2, Budgets()), 3, False, Budgets(max_order=100))
        assert info.value.size == 512
        assert info.value.limit == 100


class TestInvolutions:
    """Identity, transpose, swap and raw involutions"""

    def test_swap(self, f2f2_swap):
        """Test swap exchanges the factors"""
        assert f2f2_swap.has_involution
        assert f2f2_swap.adjoint(1) == 2
        assert f2f2_swap.adjoint(3) == 3

    def test_uppertri_anti_transpose(self, t2f2):
        """Test [[a, b], [0, d]] maps to [[d, b], [0, a]]"""
        ring = attach_involution(t2f2, "transpose")
        assert ring.adjoint(4) == 1
        assert ring.adjoint(2) == 2

    def test_identity_needs_commutative(self, t2f2):
        """Test identity is refused on a noncommutative ring"""
        with pytest.raises(BadInvolution):
            attach_involution(t2f2, "identity")

    def test_swap_needs_equal_factors(self, ring_from):
        """Test swap is refused on product(gf(2), gf(3))"""
        with pytest.raises(BadInvolution):
            ring_from("ring X = product(gf(2), gf(3)) with involution swap")


class TestRingAxioms:
    """Property checks of the constructed tables"""

    @hypothesis_settings(max_examples=60, deadline=None)
    @given(data=hs.data())
    def test_zmod_distributive(self, data):
        """Test a(b + c) = ab + ac and (a + b)c = ac + bc in zmod(n)"""
        n = data.draw(hs.integers(min_value=1, max_value=12))
        ring = zmod(n, Budgets())
        a, b, c = (data.draw(hs.integers(min_value=0, max_value=n - 1)) for _ in range(3))
        assert ring.times(a, ring.plus(b, c)) == ring.plus(ring.times(a, b), ring.times(a, c))
        assert ring.times(ring.plus(a, b), c) == ring.plus(ring.times(a, c), ring.times(b, c))

    @hypothesis_settings(max_examples=30, deadline=None)
    @given(x=hs.integers(min_value=0, max_value=15), y=hs.integers(min_value=0, max_value=15))
    def test_matrix_transpose_reverses_products(self, m2f2, x, y):
        """Test (xy)* = y* x* for the transpose on M2(GF(2))"""
        ring = attach_involution(m2f2, "transpose")
        assert ring.adjoint(ring.times(x, y)) == ring.times(ring.adjoint(y), ring.adjoint(x))

    def test_constructions_are_validated(self, mocker):
        """Test every constructor hands its tables to validate_ring"""
        spy = mocker.spy(constructors, "validate_ring")
        ring = product_ring(zmod(9, Budgets()), gf(2, 1, Budgets()), Budgets())
        assert spy.call_count == 3
        assert spy.spy_return.order == ring.order == 18

    @pytest.mark.slow
    def test_large_constructions_are_validated(self, mocker):
        """Test a ring above 1024 elements still goes through full validation"""
        spy = mocker.spy(constructors, "validate_ring")
        ring = zmod(1031, Budgets())
        assert spy.call_count == 1
        assert spy.spy_return.order == ring.order == 1031

    def test_over_order_cap_is_refused(self):
        """Test a construction above max_order raises instead of returning a ring"""
        with pytest.raises(SizeBudgetExceeded):
            zmod(1025, Budgets(max_order=1024))
