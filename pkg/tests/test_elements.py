"""
Tests for element classification and fingerprints
"""

from ringlab.core.fingerprint import fingerprint
from ringlab.services.elements import (
    abelian_witness,
    element_report,
    finite_regular_collapse,
    is_abelian,
    left_annihilator,
    principal_right_ideal,
    right_annihilator,
)


class TestElementClasses:
    """Idempotents, units, regular elements and annihilators"""

    def test_zmod4(self, z4):
        """Test the element classes of Z/4"""
        report = element_report(z4)
        assert report.idempotents == [0, 1]
        assert report.units == [1, 3]
        assert report.regular == [1, 3]
        assert report.central == [0, 1, 2, 3]
        assert report.inverses == {1: 1, 3: 3}
        assert report.projections is None
        assert report.abelian.holds is True

    def test_zmod4_annihilators(self, z4):
        """Test ann_r(2) = 2R = {0, 2} in Z/4"""
        assert right_annihilator(z4, 2).as_list() == [0, 2]
        assert principal_right_ideal(z4, 2).as_list() == [0, 2]
        assert right_annihilator(z4, 1).is_zero()
        assert principal_right_ideal(z4, 2) <= right_annihilator(z4, 2)

    def test_uppertri_idempotents(self, t2f2):
        """Test [[a, b], [0, d]] is idempotent iff b = 0 or a + d = 1"""
        report = element_report(t2f2)
        assert report.idempotents == [0, 1, 3, 4, 5, 6]
        assert report.units == [5, 7]

    def test_uppertri_not_abelian(self, t2f2):
        """Test E22 does not commute with E12"""
        flag = is_abelian(t2f2)
        assert flag.holds is False
        assert abelian_witness(t2f2) == (1, 2)

    def test_one_sided_annihilators_differ(self, t2f2):
        """Test E12 kills different sides from the left and right"""
        right = right_annihilator(t2f2, 2)
        left = left_annihilator(t2f2, 2)
        assert right.as_list() != left.as_list()
        assert right.as_list() == [0, 2, 4, 6]
        assert left.as_list() == [0, 1, 2, 3]

    def test_projections(self, f2f2_swap):
        """Test only 0 and (1, 1) are self-adjoint under swap"""
        report = element_report(f2f2_swap)
        assert report.idempotents == [0, 1, 2, 3]
        assert report.projections == [0, 3]

    def test_regular_elements_are_units(self, z4, t2f2, m2f2, dual2):
        """Test finite rings have no regular non-units"""
        for ring in (z4, t2f2, m2f2, dual2):
            assert finite_regular_collapse(ring) is None


class TestFingerprint:
    """Isomorphism invariants"""

    def test_distinguishes_small_rings(self, z4, f4, dual2, ring_from):
        """Test Z/4, GF(4), GF(2)[x]/(x^2) and GF(2)^2 get different fingerprints"""
        f2f2 = ring_from("product(gf(2), gf(2))")
        prints = {fingerprint(r).short_hash() for r in (z4, f4, dual2, f2f2)}
        assert len(prints) == 4

    def test_invariant_under_opposite(self, t2f2):
        """Test a ring and its opposite agree"""
        assert fingerprint(t2f2) == fingerprint(t2f2.opposite())

    def test_characteristic(self, z6, dual2):
        """Test the additive order of the identity"""
        assert fingerprint(z6).characteristic == 6
        assert fingerprint(dual2).characteristic == 2
