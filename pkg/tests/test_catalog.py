"""
Tests for catalog loading, saving and inline extension
"""

import numpy as np
import pytest

from ringlab.config import Budgets
from ringlab.errors import CatalogError, SizeBudgetExceeded
from ringlab.services.catalog import BUILTIN_DIR, catalog_from_text, load_catalog, save_catalog

DOCUMENT = """
ring A = zmod(4)
ring T = uppertri(A, 2)
ring S = product(gf(2), gf(2)) with involution swap
ring U = product(S, S)
module M over A = sum(free(1), cyclic(2))
embedding E = A into T
"""


class TestLoading:
    """Catalog files and inline text"""

    def test_from_text(self):
        """Test every statement kind lands in the catalog in order"""
        catalog = catalog_from_text(DOCUMENT)
        assert list(catalog.rings) == ["A", "T", "S", "U"]
        assert catalog.rings["T"].order == 64
        assert catalog.modules["M"].order == 8
        assert [e.name for e in catalog.embeddings] == ["E"]
        assert len(catalog) == 5

    def test_directory(self, tmp_path):
        """Test later files in a directory may use names from earlier ones"""
        (tmp_path / "01.ring").write_text("ring A = zmod(3)\n")
        (tmp_path / "02.ring").write_text("ring B = matrix(A, 2)\n")
        catalog = load_catalog(tmp_path)
        assert catalog.rings["B"].order == 81

    def test_line_in_error(self, tmp_path):
        """Test construction errors name the file and statement line"""
        path = tmp_path / "bad.ring"
        path.write_text("ring A = zmod(4)\n\nring B = uppertri(C, 2)\n")
        with pytest.raises(CatalogError) as info:
            load_catalog(path)
        assert info.value.line == 3
        assert "bad.ring:3" in str(info.value)

    def test_duplicate_name(self):
        """Test a name may be defined once"""
        with pytest.raises(CatalogError):
            catalog_from_text("ring A = zmod(2)\nring A = zmod(3)")

    def test_missing_file(self, tmp_path):
        """Test a missing catalog is a catalog error"""
        with pytest.raises(CatalogError):
            load_catalog(tmp_path / "absent.ring")

    def test_corrupt_table(self, tmp_path):
        """Test a raw table that is not a ring fails with its statement line"""
        (tmp_path / "bad.tbl").write_text("add\n0 1\n1 0\nmul\n0 0\n0 0\n")
        path = tmp_path / "raw.ring"
        path.write_text('ring R = raw("bad.tbl")\n')
        with pytest.raises(CatalogError) as info:
            load_catalog(path)
        assert info.value.line == 1

    def test_budget_errors_pass_through(self):
        """Test an oversized ring keeps its budget error instead of becoming an input error"""
        with pytest.raises(SizeBudgetExceeded):
            catalog_from_text("ring A = matrix(gf(2), 3)", budgets=Budgets(max_order=100))

    def test_extend_base(self):
        """Test inline text may refer to the base catalog without changing it"""
        base = catalog_from_text("ring A = zmod(4)")
        extended = catalog_from_text("ring B = product(A, A)", base=base)
        assert list(extended.rings) == ["A", "B"]
        assert list(base.rings) == ["A"]
        assert extended.rings["B"].order == 16

    def test_digest_is_stable(self):
        """Test the same text gives the same digest"""
        assert catalog_from_text(DOCUMENT).digest() == catalog_from_text(DOCUMENT).digest()
        assert catalog_from_text("ring A = zmod(4)").digest() != catalog_from_text("ring A = zmod(5)").digest()


class TestSaving:
    """Self-contained catalog directories"""

    def test_reload_same_tables(self, tmp_path):
        """Test a saved catalog loads back to identical rings and modules"""
        catalog = catalog_from_text(DOCUMENT)
        written = save_catalog(catalog, tmp_path / "out")
        assert [p.name for p in written][:2] == ["001-A.ring", "002-T.ring"]
        reloaded = load_catalog(tmp_path / "out")
        for name, ring in catalog.rings.items():
            assert np.array_equal(reloaded.rings[name].mul, ring.mul)
            assert (reloaded.rings[name].star is None) == (ring.star is None)
        assert np.array_equal(reloaded.modules["M"].action, catalog.modules["M"].action)

    def test_references_inlined(self, tmp_path):
        """Test name references are replaced by their definitions"""
        save_catalog(catalog_from_text(DOCUMENT), tmp_path)
        assert "uppertri(zmod(4), 2)" in (tmp_path / "002-T.ring").read_text()

    def test_starred_reference_written_as_tables(self, tmp_path):
        """Test a ring built from a ring with an involution is saved as raw tables"""
        save_catalog(catalog_from_text(DOCUMENT), tmp_path)
        assert (tmp_path / "U.tbl").exists()
        assert 'raw("U.tbl")' in (tmp_path / "004-U.ring").read_text()

    def test_raw_tables_copied(self, tmp_path, dual2):
        """Test raw rings from the builtin directory are saved with their tables"""
        catalog = catalog_from_text('ring D = raw("dual2.tbl")', base_dir=BUILTIN_DIR)
        save_catalog(catalog, tmp_path)
        reloaded = load_catalog(tmp_path)
        assert np.array_equal(reloaded.rings["D"].mul, dual2.mul)


@pytest.mark.slow
class TestBuiltin:
    """The shipped catalog"""

    def test_contents(self, builtin_catalog):
        """Test the builtin catalog holds its rings, modules and embeddings"""
        assert builtin_catalog.rings["T2T2F2"].order == 512
        assert {"F2inF4", "D2inT2", "F3inM2", "Z6self"} == {e.name for e in builtin_catalog.embeddings}
        assert set(builtin_catalog.star_rings()) == {"Z4s", "Z6s", "M2F3t", "F2F2s"}

    def test_fingerprint_duplicates(self, builtin_catalog):
        """Test isomorphic builtin rings are grouped"""
        groups = [set(g) for g in builtin_catalog.duplicates]
        assert {"Z2", "F2"} in groups
        assert {"Z3", "F3"} in groups
