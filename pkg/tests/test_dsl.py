"""
Tests for the ring/module specification language and raw table files
"""

import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as hs

from ringlab.core import spec_tree as st
from ringlab.core.dsl import format_expr, parse_document, parse_spec, print_document, split_statements
from ringlab.core.rawtables import format_ring_tables, parse_tables, read_ring_tables, write_ring_tables
from ringlab.core.rings import validate_ring
from ringlab.errors import SpecSyntaxError, TableShapeError, UnknownConstructor

DOCUMENT = """
# two rings, a module and an embedding
ring A = zmod(4)
ring S = uppertri(gf(2), 2) with involution transpose
module M over A = sum(free(1), cyclic(2))
embedding E = A into A
"""


class TestParser:
    """Statements and expressions"""

    def test_document(self):
        """Test every statement kind parses with its line number"""
        statements = parse_document(DOCUMENT)
        assert [s.name for s in statements] == ["A", "S", "M", "E"]
        ring = statements[1]
        assert ring.expr == st.UpperTri(st.GF(2, 1), 2)
        assert ring.involution == st.Involution("transpose")
        assert ring.line == 4
        module = statements[2]
        assert module.expr == st.DirectSum((st.Free(1), st.Cyclic((2,))))
        groups = split_statements(statements)
        assert [len(groups[k]) for k in ("rings", "modules", "embeddings")] == [2, 1, 1]

    def test_bare_expression(self):
        """Test a bare expression is named by its printed form"""
        spec = parse_spec("product(zmod(4),  gf(2))")
        assert spec.name == "product(zmod(4), gf(2))"
        assert spec.involution is None

    def test_name_reference(self):
        """Test names inside expressions become references"""
        spec = parse_spec("ring R = uppertri(S, 2)")
        assert spec.expr == st.UpperTri(st.NameRef("S"), 2)

    def test_error_position(self):
        """Test a syntax error reports line and column"""
        with pytest.raises(SpecSyntaxError) as info:
            parse_document("ring A = zmod(4)\nring B = zmod(4\n")
        assert info.value.line == 2
        assert info.value.column == 16

    def test_unknown_constructor(self):
        """Test an unknown constructor is its own error"""
        with pytest.raises(UnknownConstructor):
            parse_spec("ring A = quaternions(2)")

    def test_zero_size_rejected(self):
        """Test zmod(0) is a syntax error"""
        with pytest.raises(SpecSyntaxError):
            parse_spec("zmod(0)")

    def test_single_statement_only(self):
        """Test parse_spec refuses a document"""
        with pytest.raises(SpecSyntaxError):
            parse_spec("ring A = zmod(2)\nring B = zmod(3)")


atoms = hs.one_of(
    hs.integers(min_value=1, max_value=30).map(st.ZMod),
    hs.tuples(hs.sampled_from([2, 3, 5, 7]), hs.integers(min_value=1, max_value=3)).map(lambda t: st.GF(*t)),
    hs.from_regex(r"[A-Z][A-Za-z0-9_]{0,6}", fullmatch=True).map(st.NameRef),
)

exprs = hs.recursive(
    atoms,
    lambda inner: hs.one_of(
        hs.tuples(inner, hs.integers(min_value=1, max_value=3)).map(lambda t: st.Matrix(*t)),
        hs.tuples(inner, hs.integers(min_value=1, max_value=3)).map(lambda t: st.UpperTri(*t)),
        hs.tuples(inner, inner).map(lambda t: st.Product(*t)),
        inner.map(st.Opposite),
    ),
    max_leaves=6,
)


class TestPrinter:
    """The printer is the inverse of the parser"""

    @hypothesis_settings(max_examples=150, deadline=None)
    @given(expr=exprs, involution=hs.sampled_from([None, "identity", "transpose", "swap"]))
    def test_print_then_parse(self, expr, involution):
        """Test parse(print(spec)) gives back the same tree"""
        spec = st.RingSpec(
            name="R",
            expr=expr,
            involution=st.Involution(involution) if involution else None,
        )
        parsed = parse_document(print_document([spec]))[0]
        assert parsed.expr == spec.expr
        assert parsed.involution == spec.involution
        assert format_expr(parsed.expr) == format_expr(expr)


class TestRawTables:
    """Operation table files"""

    def test_written_tables_reload(self, t2f2, tmp_path):
        """Test a written ring validates back to the same tables"""
        path = write_ring_tables(t2f2, tmp_path / "t2.tbl")
        ring = validate_ring(read_ring_tables(path))
        assert ring.order == 8
        assert (ring.mul == t2f2.mul).all()
        assert path.read_text() == format_ring_tables(t2f2)

    def test_ragged_rows(self):
        """Test rows of different widths are rejected"""
        with pytest.raises(TableShapeError):
            parse_tables("add\n0 1\n1\nmul\n0 0\n0 1\n")

    def test_declared_order_mismatch(self, tmp_path):
        """Test the declared order must match the add table"""
        path = tmp_path / "bad.tbl"
        path.write_text("order 3\nadd\n0 1\n1 0\nmul\n0 0\n0 1\n")
        with pytest.raises(TableShapeError):
            read_ring_tables(path)

    def test_data_before_section(self):
        """Test numbers before a section header are rejected"""
        with pytest.raises(TableShapeError):
            parse_tables("0 1\nadd\n")
