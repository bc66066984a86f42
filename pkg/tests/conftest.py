"""
Pytest configuration and fixtures
"""

from pathlib import Path
from typing import Optional

import pytest

from ringlab.config import Budgets
from ringlab.core import spec_tree as st
from ringlab.core.constructors import construct
from ringlab.core.dsl import parse_spec
from ringlab.core.rings import FinRing
from ringlab.services.catalog import BUILTIN, Catalog, load_catalog
from ringlab.utils.logging_config import setup_logging

CATALOG_DIR = Path(__file__).resolve().parent.parent / "ringlab" / "catalog"


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    """Keep test output readable"""
    setup_logging("WARNING", "console")


@pytest.fixture(scope="session")
def budgets() -> Budgets:
    """Default budgets, independent of the environment"""
    return Budgets()


def build(text: str, budgets: Optional[Budgets] = None) -> FinRing:
    """Construct a ring from a statement or bare expression"""
    return construct(parse_spec(text), budgets=budgets or Budgets())


@pytest.fixture(scope="session")
def z4() -> FinRing:
    return build("ring Z4 = zmod(4)")


@pytest.fixture(scope="session")
def z6() -> FinRing:
    return build("ring Z6 = zmod(6)")


@pytest.fixture(scope="session")
def f4() -> FinRing:
    return build("ring F4 = gf(2, 2)")


@pytest.fixture(scope="session")
def t2f2() -> FinRing:
    """Upper triangular 2x2 over GF(2): index 4a + 2b + d"""
    return build("ring T2F2 = uppertri(gf(2), 2)")


@pytest.fixture(scope="session")
def m2f2() -> FinRing:
    """Full 2x2 over GF(2): index 8a + 4b + 2c + d"""
    return build("ring M2F2 = matrix(gf(2), 2)")


@pytest.fixture(scope="session")
def f2f2_swap() -> FinRing:
    return build("ring F2F2s = product(gf(2), gf(2)) with involution swap")


@pytest.fixture(scope="session")
def dual2() -> FinRing:
    """GF(2)[x]/(x^2) from the raw table shipped with the builtin catalog"""
    return construct(
        st.RingSpec(name="D2", expr=st.Raw("dual2.tbl")),
        base_dir=CATALOG_DIR,
        budgets=Budgets(),
    )


@pytest.fixture(scope="session")
def builtin_catalog() -> Catalog:
    """The shipped catalog, constructed once"""
    return load_catalog(BUILTIN, Budgets())


@pytest.fixture
def findings_dir(tmp_path: Path) -> Path:
    """Empty findings directory"""
    directory = tmp_path / "findings"
    directory.mkdir()
    return directory


@pytest.fixture(scope="session")
def ring_from():
    """Factory building a ring from DSL text"""
    return build
