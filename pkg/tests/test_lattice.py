"""
Tests for ideal lattices and the ring-level classes
"""

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as hs

from ringlab.config import Budgets
from ringlab.core.bitsets import indices_from_mask, mask_from_indices
from ringlab.core.constructors import attach_involution
from ringlab.errors import InvariantViolation
from ringlab.services.elements import Ideal
from ringlab.services.lattice import (
    check_lattice,
    is_essential,
    lattice_report,
    right_ideals,
    ring_class,
    singular_ideal,
    summands,
)
from ringlab.services.modules import regular_module

LATTICE_RINGS = [
    "zmod(8)",
    "zmod(12)",
    "gf(2, 2)",
    "uppertri(gf(2), 2)",
    "matrix(gf(2), 2)",
    "product(zmod(4), gf(2))",
    "opposite(uppertri(gf(3), 2))",
]


class TestRingClass:
    """Regularity, Rickart, nonsingular and CS flags"""

    def test_zmod4(self, z4, budgets):
        """Test Z/4: CS and quasi-continuous, but singular and not Rickart at 2"""
        report = ring_class(z4, budgets)
        assert report.vn_regular.holds is False
        assert report.vn_regular.witness == 2
        assert report.rickart_right.holds is False
        assert report.rickart_right.witness == 2
        assert report.right_nonsingular.holds is False
        assert report.singular_ideal == [0, 2]
        assert report.CS.holds is True
        assert report.quasi_continuous.holds is True
        assert report.morphic_right.holds is True
        assert report.reduced.holds is False
        assert report.right_ideal_count == 3
        assert report.summand_count == 2

    def test_uppertri(self, t2f2, budgets):
        """Test T2(GF(2)) is right CS and nonsingular without being quasi-continuous"""
        report = ring_class(t2f2, budgets)
        assert report.CS.holds is True
        assert report.right_nonsingular.holds is True
        assert report.singular_ideal == [0]
        assert report.quasi_continuous.holds is False
        assert report.continuous.holds is False
        assert report.vn_regular.holds is False

    def test_field(self, f4, budgets):
        """Test GF(4) satisfies every class"""
        report = ring_class(f4, budgets)
        for flag in (report.vn_regular, report.unit_regular, report.rickart_right, report.reduced, report.continuous):
            assert flag.holds is True

    def test_semisimple_matrix_ring(self, m2f2, budgets):
        """Test M2(GF(2)) is unit regular and continuous on both sides"""
        report = ring_class(m2f2, budgets)
        assert report.unit_regular.holds is True
        assert report.rickart_right.holds is True
        assert report.rickart_left.holds is True
        assert report.continuous.holds is True
        assert report.star_regular.holds is None

    def test_transpose_is_not_proper(self, m2f2, budgets):
        """Test the all-ones matrix has x* x = 0 over GF(2)"""
        report = ring_class(attach_involution(m2f2, "transpose"), budgets)
        assert report.vn_regular.holds is True
        assert report.star_regular.holds is False

    def test_lattice_budget_skips_cs_flags(self, ring_from):
        """Test a tiny ideal budget leaves the lattice flags undecided"""
        ring = ring_from("zmod(8)")
        report = ring_class(ring, Budgets(max_ideals=2))
        assert report.CS.holds is None
        assert report.CS.note
        assert report.right_ideal_count is None
        assert report.rickart_right.holds is False


class TestLattice:
    """Right ideal enumeration"""

    def test_zmod4_chain(self, z4, budgets):
        """Test 0 < 2R < R with only the ends as summands"""
        report = lattice_report(z4, budgets)
        entries = {tuple(entry.elements): entry for entry in report.ideals}
        assert set(entries) == {(0,), (0, 2), (0, 1, 2, 3)}
        assert entries[(0,)].summand and not entries[(0,)].essential
        assert not entries[(0, 2)].summand and entries[(0, 2)].essential
        assert entries[(0, 1, 2, 3)].idempotents == [1]
        assert report.singular_ideal == [0, 2]

    def test_uppertri_sides_differ(self, t2f2, budgets):
        """Test T2(GF(2)) has different right and left ideal lattices"""
        right = lattice_report(t2f2, budgets, side="right")
        left = lattice_report(t2f2, budgets, side="left")
        assert right.side == "right" and left.side == "left"
        assert {tuple(e.elements) for e in right.ideals} != {tuple(e.elements) for e in left.ideals}

    def test_lattice_is_sorted_by_size(self, z6, budgets):
        """Test ideals come smallest first"""
        sizes = [len(right_ideals(z6, budgets).elements(mask)) for mask in right_ideals(z6, budgets)]
        assert sizes == sorted(sizes)
        assert sizes == [1, 2, 3, 6]

    def test_singular_ideal_of_field(self, f4):
        """Test a field is nonsingular"""
        assert singular_ideal(f4).as_list() == [0]


class TestEssentialAndSummands:
    """Essential right ideals and direct summands of R_R"""

    def test_socle_of_zmod4_is_essential(self, z4):
        """Test {0, 2} is essential in Z/4"""
        whole = Ideal(z4, 0b1111)
        assert is_essential(Ideal(z4, 0b0101), whole) is True

    def test_zero_is_not_essential(self, z4):
        """Test the zero ideal is not essential in a nonzero ring"""
        assert is_essential(Ideal(z4, 0b0001), Ideal(z4, 0b1111)) is False

    def test_ideals_of_different_rings(self, z4, z6):
        """Test mixing rings is rejected"""
        with pytest.raises(ValueError):
            is_essential(Ideal(z4, 1), Ideal(z6, 1))

    def test_zmod6_summands(self, z6):
        """Test Z/6 = 3Z/6 + 2Z/6 gives four summands"""
        found = [ideal.as_list() for ideal in summands(z6)]
        assert found == [[0], [0, 3], [0, 2, 4], [0, 1, 2, 3, 4, 5]]

    def test_uppertri_summands(self, t2f2):
        """Test E11 S and E22 S are summands of T2(GF(2))"""
        found = [ideal.as_list() for ideal in summands(t2f2)]
        assert [0, 2, 4, 6] in found
        assert [0, 1] in found
        assert [0] in found and list(range(8)) in found

    def test_report_marks_summands(self, z6, budgets):
        """Test the lattice report flags match summands()"""
        report = lattice_report(z6, budgets)
        flagged = [entry.elements for entry in report.ideals if entry.summand]
        assert flagged == [ideal.as_list() for ideal in summands(z6)]


class TestLatticeInvariant:
    """0, R, meets and sums stay inside the enumerated lattice"""

    def test_missing_sum_is_rejected(self, z4):
        """Test a lattice without 2Z/4 fails the sum check"""
        with pytest.raises(InvariantViolation, match="sum of two submodules"):
            check_lattice(regular_module(z4), [0b0001, 0b1111])

    def test_missing_zero_is_rejected(self, z4):
        """Test a lattice without the zero ideal fails"""
        with pytest.raises(InvariantViolation, match="lacks 0"):
            check_lattice(regular_module(z4), [0b0101, 0b1111])

    def test_missing_meet_is_rejected(self, ring_from):
        """Test a lattice of Z/12 holding 2Z/12 and 3Z/12 but not their meet 6Z/12 fails"""
        module = regular_module(ring_from("zmod(12)"))
        members = [1, mask_from_indices(range(0, 12, 2), 12), mask_from_indices(range(0, 12, 3), 12), (1 << 12) - 1]
        with pytest.raises(InvariantViolation, match="intersection of two submodules"):
            check_lattice(module, members)

    @pytest.mark.parametrize("text", LATTICE_RINGS)
    def test_enumerated_lattice_passes(self, ring_from, budgets, text):
        """Test every enumerated right ideal lattice satisfies the invariant"""
        lattice = right_ideals(ring_from(text), budgets)
        check_lattice(lattice.module, lattice.members)

    @hypothesis_settings(max_examples=60, deadline=None)
    @given(data=hs.data())
    def test_meets_and_sums_are_members(self, ring_from, data):
        """Test pairwise meets and sums, computed from the addition table, are right ideals"""
        ring = ring_from(data.draw(hs.sampled_from(LATTICE_RINGS)))
        lattice = right_ideals(ring, Budgets())
        n = ring.order
        a = data.draw(hs.sampled_from(lattice.members))
        b = data.draw(hs.sampled_from(lattice.members))
        total = ring.add[np.ix_(indices_from_mask(a, n), indices_from_mask(b, n))].ravel()
        assert a & b in lattice
        assert mask_from_indices(total, n) in lattice
        assert mask_from_indices([ring.zero], n) in lattice
        assert (1 << n) - 1 in lattice


class TestStarRickart:
    """Rickart *-rings"""

    def test_swap_is_rickart_but_not_star_rickart(self, f2f2_swap, budgets):
        """Test the swap on GF(2) x GF(2) leaves annihilators without a generating projection"""
        report = ring_class(f2f2_swap, budgets)
        assert report.rickart_right.holds is True
        assert report.rickart_star.holds is False
        assert "projection" in report.rickart_star.note
