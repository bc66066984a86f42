"""
Tests for finite modules, their endomorphism rings and the CS level of free modules
"""

import numpy as np
import pytest

from ringlab.config import Budgets
from ringlab.errors import BudgetExceeded, ModuleValidationError, SizeBudgetExceeded
from ringlab.services.endomorphisms import (
    ISOMORPHISM,
    condition_c_flag,
    cs_level,
    endo_decomposition_model,
    endomorphism_ring,
    left_multiplication_map,
    module_class,
)
from ringlab.services.modules import (
    cyclic_module,
    direct_sum,
    free_module,
    generated_submodule,
    regular_module,
    validate_module,
)


class TestConstruction:
    """free, cyclic and sum"""

    def test_cyclic_quotient(self, z4, budgets):
        """Test Z/4 modulo 2Z/4 has two elements"""
        module = cyclic_module(z4, [2], budgets)
        assert module.order == 2
        assert "{0, 2}" in module.label
        assert module.act(1, 3) == 1
        assert module.act(1, 2) == 0

    def test_free_module_coordinates(self, z4, budgets):
        """Test R^2 is indexed with the first coordinate most significant"""
        module = free_module(z4, 2, budgets)
        assert module.order == 16
        assert module.plus(1 * 4 + 3, 0 * 4 + 1) == 1 * 4 + 0
        assert module.act(1 * 4 + 1, 2) == 2 * 4 + 2

    def test_direct_sum_order(self, z4, budgets):
        """Test the orders multiply"""
        parts = [free_module(z4, 1, budgets), cyclic_module(z4, [2], budgets)]
        assert direct_sum(parts, budgets).order == 8

    def test_direct_sum_needs_one_ring(self, z4, z6, budgets):
        """Test summands over different rings are refused"""
        with pytest.raises(ModuleValidationError):
            direct_sum([free_module(z4, 1, budgets), free_module(z6, 1, budgets)], budgets)

    def test_module_order_budget(self, z4):
        """Test free modules respect the module order cap"""
        with pytest.raises(SizeBudgetExceeded):
            free_module(z4, 3, Budgets(max_module_order=20))

    def test_identity_must_act_trivially(self, z4):
        """Test x.1 = x is checked"""
        with pytest.raises(ModuleValidationError):
            validate_module(z4, [[0, 1], [1, 0]], np.zeros((2, 4), dtype=np.int64))

    def test_generated_submodule(self, z4):
        """Test the submodule generated by 2 in R_R"""
        module = regular_module(z4)
        assert generated_submodule(module, [2]) == 0b0101
        assert generated_submodule(module, [2, 3]) == module.full_mask


class TestEndomorphisms:
    """End(M) as a ring"""

    def test_regular_module(self, z4, budgets):
        """Test End(R_R) is R through left multiplications"""
        end = endomorphism_ring(regular_module(z4), budgets)
        assert end.order == 4
        assert list(end.hom(end.identity())) == [0, 1, 2, 3]
        lm = left_multiplication_map(z4, budgets)
        assert lm[2] == end.index_of(np.array([0, 2, 0, 2]))

    def test_endo_decomposition(self, z4, budgets):
        """Test doubling on Z/4 splits as the identity plus an isomorphism"""
        end = endomorphism_ring(regular_module(z4), budgets)
        doubling = end.index_of(np.array([0, 2, 0, 2]))
        model = endo_decomposition_model(end, doubling)
        assert model.kind == ISOMORPHISM
        assert model.idempotent == [0, 1, 2, 3]
        assert model.complement == [0, 1, 2, 3]

    def test_condition_c(self, z4, budgets):
        """Test every essential monomorphism of Z/4 is onto"""
        end = endomorphism_ring(regular_module(z4), budgets)
        assert condition_c_flag(end).holds is True


class TestModuleClass:
    """Module-level flags"""

    def test_simple_quotient(self, z4, budgets):
        """Test Z/4 / 2Z/4 is CS with a singular element"""
        report = module_class(cyclic_module(z4, [2], budgets), budgets)
        assert report.order == 2
        assert report.submodule_count == 2
        assert report.endomorphism_ring_order == 2
        assert report.CS.holds is True
        assert report.clean.holds is True
        assert report.nonsingular.holds is False
        assert report.singular_submodule == [0, 1]

    def test_regular_module_is_continuous(self, z4, budgets):
        """Test Z/4 as a module over itself is continuous"""
        report = module_class(free_module(z4, 1, budgets), budgets)
        assert report.submodule_count == 3
        assert report.continuous.holds is True
        assert report.condition_c.holds is True

    def test_lattice_budget(self, z4):
        """Test a tiny lattice budget skips the C-conditions but keeps End(M)"""
        report = module_class(free_module(z4, 1, Budgets()), Budgets(max_ideals=2))
        assert report.CS.holds is None
        assert report.submodule_count is None
        assert report.notes
        assert report.endomorphism_ring_order is not None


class TestCsLevel:
    """CS flags of R^k"""

    def test_self_injective_ring(self, z4, budgets):
        """Test every free Z/4-module of small rank is CS"""
        report = cs_level(z4, 2, budgets)
        assert report.flags == {1: True, 2: True}
        assert report.level == 2

    def test_first_infeasible_rank(self, z4):
        """Test the budget error names the first rank that could not be decided"""
        with pytest.raises(BudgetExceeded) as info:
            cs_level(z4, 3, Budgets(max_module_order=20))
        assert "k=3" in str(info.value)
