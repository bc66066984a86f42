"""
Tests for settings, budgets and metrics export
"""

import pytest
from pydantic import ValidationError

from ringlab.config import Budgets, Settings
from ringlab.utils.metrics import export_metrics, record_verdict


class TestSettings:
    """Environment-driven configuration"""

    def test_environment_overrides(self, monkeypatch):
        """Test RINGLAB_ variables reach the settings and the budgets"""
        monkeypatch.setenv("RINGLAB_MAX_ORDER", "64")
        monkeypatch.setenv("RINGLAB_LOG_LEVEL", "debug")
        source = Settings()
        assert source.log_level == "DEBUG"
        assert Budgets.from_settings(source).max_order == 64

    def test_rejects_non_positive_budget(self, monkeypatch):
        """Test a zero budget is refused"""
        monkeypatch.setenv("RINGLAB_MAX_IDEALS", "0")
        with pytest.raises(ValidationError):
            Settings()

    def test_rejects_unknown_log_format(self, monkeypatch):
        """Test only console and json renderers exist"""
        monkeypatch.setenv("RINGLAB_LOG_FORMAT", "xml")
        with pytest.raises(ValidationError):
            Settings()

    def test_budget_override(self):
        """Test budgets copy with a single override"""
        budgets = Budgets().model_copy(update={"max_ideals": 10})
        assert budgets.max_ideals == 10
        assert budgets.max_order == Budgets().max_order


class TestMetrics:
    """Prometheus text export"""

    def test_export(self, tmp_path):
        """Test recorded verdicts appear in the written file"""
        record_verdict("c2-implies-c3", "holds")
        path = tmp_path / "metrics.prom"
        export_metrics(str(path))
        text = path.read_text()
        assert 'ringlab_claim_verdicts_total{claim="c2-implies-c3",verdict="holds"}' in text

    def test_no_path_is_a_no_op(self, tmp_path):
        """Test nothing is written without a path"""
        export_metrics(None)
        assert list(tmp_path.iterdir()) == []
