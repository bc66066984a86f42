"""
Tests for the command line front end
"""

import json

import pytest

from ringlab.cli import main
from ringlab.utils.logging_config import setup_logging

INLINE = "ring A = zmod(4)\nmodule Q over A = cyclic(2)"


@pytest.fixture(autouse=True)
def restore_logging():
    """main() points logging at the captured stream; put it back afterwards"""
    yield
    setup_logging("WARNING", "console")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestClassify:
    """classify and lattice"""

    def test_json_report(self, capsys):
        """Test the JSON document carries the flags of Z/4"""
        code, out, _ = run(capsys, "classify", "zmod(4)", "--json")
        assert code == 0
        report = json.loads(out)
        assert report["order"] == 4
        assert report["cleanness"]["clean"]["holds"] is True
        assert report["cleanness"]["special_almost_clean"]["witness"] == 2
        assert report["ring_class"]["singular_ideal"] == [0, 2]

    def test_text_report(self, capsys):
        """Test the text report has a header and the flag table"""
        code, out, _ = run(capsys, "classify", "ring T = uppertri(gf(2), 2)")
        assert code == 0
        assert out.startswith("T  order 8")
        assert "quasi_continuous" in out

    def test_inline_ring(self, capsys):
        """Test the last inline ring is classified when no target is given"""
        code, out, _ = run(capsys, "classify", "--inline", INLINE, "--json")
        assert code == 0
        assert json.loads(out)["name"] == "A"

    def test_lattice(self, capsys):
        """Test the right ideals of Z/4"""
        code, out, _ = run(capsys, "lattice", "zmod(4)", "--json")
        assert code == 0
        assert [entry["elements"] for entry in json.loads(out)["ideals"]] == [[0], [0, 2], [0, 1, 2, 3]]

    def test_bad_spec_exits_1(self, capsys):
        """Test a syntax error is an input error"""
        code, _, err = run(capsys, "classify", "zmod(4")
        assert code == 1
        assert err.startswith("error:")

    def test_error_document(self, capsys):
        """Test --json errors are printed as a document on stdout"""
        code, out, _ = run(capsys, "classify", "quaternions(2)", "--json")
        assert code == 1
        assert json.loads(out)["error"] == "UnknownConstructor"

    def test_order_budget_exits_3(self, capsys):
        """Test a ring above the order cap exits 3"""
        code, _, _ = run(capsys, "classify", "matrix(gf(2), 3)", "--budget-order", "100")
        assert code == 3


class TestDecompose:
    """decompose"""

    def test_clean(self, capsys):
        """Test 2 = 1 + 1 in Z/4"""
        code, out, _ = run(capsys, "decompose", "zmod(4)", "--element", "2")
        assert code == 0
        assert out.strip() == "e=1 u=1  (unit)"

    def test_none(self, capsys):
        """Test an empty listing prints none"""
        code, out, _ = run(capsys, "decompose", "zmod(4)", "--element", "2", "--kind", "special_almost_clean")
        assert code == 0
        assert out.strip() == "none"

    def test_rickart_witness(self, capsys):
        """Test the annihilator witness of 3 in Z/6"""
        code, out, _ = run(capsys, "decompose", "zmod(6)", "--element", "3", "--witness", "rickart")
        assert code == 0
        assert out.startswith("e=4 u=5")

    def test_not_rickart_exits_2(self, capsys):
        """Test a missing annihilator witness exits 2"""
        code, _, err = run(capsys, "decompose", "zmod(4)", "--element", "2", "--witness", "rickart")
        assert code == 2
        assert "right annihilator of 2" in err

    def test_bad_element_exits_1(self, capsys):
        """Test an element outside the ring is an input error"""
        code, _, _ = run(capsys, "decompose", "zmod(4)", "--element", "9")
        assert code == 1

    def test_missing_element_exits_1(self, capsys):
        """Test usage errors exit 1"""
        code, _, err = run(capsys, "decompose", "zmod(4)")
        assert code == 1
        assert "--element" in err


class TestModule:
    """module"""

    def test_inline_module(self, capsys):
        """Test the last inline module is reported"""
        code, out, _ = run(capsys, "module", "--inline", INLINE, "--json")
        assert code == 0
        report = json.loads(out)
        assert report["name"] == "Q"
        assert report["order"] == 2

    def test_cs_level(self, capsys):
        """Test the CS level of Z/4"""
        code, out, _ = run(capsys, "module", "zmod(4)", "--cs-level", "2", "--json")
        assert code == 0
        assert json.loads(out)["level"] == 2


class TestVerify:
    """verify"""

    def test_list(self, capsys):
        """Test the registry listing"""
        code, out, _ = run(capsys, "verify", "--list", "--json")
        assert code == 0
        ids = [claim["id"] for claim in json.loads(out)]
        assert "c2-implies-c3" in ids

    def test_inline_catalog(self, capsys, tmp_path):
        """Test claims over inline rings, with the report written to a file"""
        path = tmp_path / "report.json"
        code, out, _ = run(
            capsys,
            "verify",
            "--claim",
            "rickart-special-almost-clean",
            "--inline",
            "ring A = zmod(4)\nring B = zmod(6)",
            "--report",
            str(path),
        )
        assert code == 0
        assert "abelian-rickart-implies-special-almost-clean" in out
        assert json.loads(path.read_text())["catalog"] == "inline"

    def test_needs_a_selector(self, capsys):
        """Test verify without claims is a usage error"""
        code, _, _ = run(capsys, "verify", "--inline", "ring A = zmod(2)")
        assert code == 1

    def test_metrics_written(self, capsys, tmp_path):
        """Test --metrics writes the exposition file"""
        path = tmp_path / "metrics.prom"
        code, _, _ = run(capsys, "verify", "--claim", "c2-implies-c3", "--inline", "ring A = zmod(3)", "--metrics", str(path))
        assert code == 0
        assert "ringlab_claim_verdicts_total" in path.read_text()

    def test_reference_id(self, capsys):
        """Test --claim accepts a published id and merges its directions"""
        code, out, _ = run(capsys, "verify", "--claim", "T-CK", "--inline", "ring A = zmod(4)", "--json")
        assert code == 0
        claims = [claim["claim"] for claim in json.loads(out)["claims"]]
        assert claims == ["unit-regular-implies-special-clean", "special-clean-implies-unit-regular"]

    def test_list_shows_refs(self, capsys):
        """Test the registry listing carries reference ids"""
        code, out, _ = run(capsys, "verify", "--list", "--json")
        assert code == 0
        refs = {claim["id"]: claim["refs"] for claim in json.loads(out)}
        assert refs["c2-implies-c3"] == ["INV-C2C3"]

    def test_missing_catalog_exits_1(self, capsys, mocker):
        """Test an environment without a catalog is an input error, not a crash"""
        mocker.patch("ringlab.cli.verify.environment", return_value=None)
        code, _, err = run(capsys, "verify", "--claim", "c2-implies-c3")
        assert code == 1
        assert "no catalog to verify" in err


    def test_metrics_follow_settings(self, capsys, mocker):
        """Test the configured metrics path is used when --metrics is absent, even on failure"""
        mocker.patch("ringlab.cli.settings.metrics_path", "from-settings.prom")
        export = mocker.patch("ringlab.cli.export_metrics")
        code, _, _ = run(capsys, "verify", "--inline", "ring A = zmod(2)")
        assert code == 1
        export.assert_called_once_with("from-settings.prom")


class TestCatalogCommand:
    """catalog show and save"""

    def test_show_inline(self, capsys):
        """Test the listing of inline statements"""
        code, out, _ = run(capsys, "catalog", "show", "--inline", INLINE, "--json")
        assert code == 0
        listing = json.loads(out)
        assert [e["kind"] for e in listing["entries"]] == ["ring", "module"]

    def test_save(self, capsys, tmp_path):
        """Test save writes numbered files"""
        code, out, _ = run(capsys, "catalog", "save", str(tmp_path), "--inline", INLINE)
        assert code == 0
        assert (tmp_path / "001-A.ring").exists()
        assert (tmp_path / "002-Q.ring").exists()


class TestSearchCommand:
    """search"""

    def test_store_and_reverify(self, capsys, findings_dir):
        """Test findings are stored and reverify cleanly"""
        code, _, _ = run(
            capsys,
            "search",
            "--where",
            "CS & nonsingular & !quasi_continuous",
            "--max-order",
            "8",
            "--constructors",
            "gf,uppertri",
            "--store",
            str(findings_dir),
            "--json",
        )
        assert code == 0
        assert len(list(findings_dir.glob("*.ring"))) == 1
        code, _, _ = run(capsys, "search", "--reverify", "--store", str(findings_dir))
        assert code == 0


@pytest.mark.slow
class TestSlow:
    """Large rings and the full builtin run"""

    def test_large_triangular_ring(self, capsys):
        """Test T2(T2(GF(2))) is clean but not right CS"""
        code, out, _ = run(capsys, "classify", "uppertri(uppertri(gf(2), 2), 2)", "--json")
        assert code == 0
        report = json.loads(out)
        assert report["order"] == 512
        assert report["cleanness"]["clean"]["holds"] is True
        assert report["ring_class"]["CS"]["holds"] is False

    def test_verify_all_builtin(self, capsys):
        """Test the builtin catalog has no binding violation"""
        code, _, _ = run(capsys, "verify", "--all")
        assert code in (0, 3)
