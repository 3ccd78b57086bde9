"""Unit tests for settings and logging setup."""

import io
import sys

import structlog

from src.config.settings import Settings, configure_logging


class TestSettings:
    """Tests for Settings."""

    def test_env_prefix(self, monkeypatch):
        """Should read OCO_ environment variables."""
        monkeypatch.setenv("OCO_RTOL", "1e-9")
        monkeypatch.setenv("OCO_SEED", "7")
        settings = Settings()
        assert settings.rtol == 1e-9
        assert settings.seed == 7

    def test_defaults(self):
        """Should default outputs under the project root."""
        settings = Settings()
        assert settings.outputs_dir == settings.base_dir / "outputs"
        assert settings.pole_tolerance == 1e-6


class TestConfigureLogging:
    """Tests for configure_logging."""

    def test_follows_replaced_stderr(self, monkeypatch):
        """Should write to the current sys.stderr, not the one seen at setup."""
        first = io.StringIO()
        monkeypatch.setattr(sys, "stderr", first)
        configure_logging(level="INFO")

        second = io.StringIO()
        monkeypatch.setattr(sys, "stderr", second)
        first.close()
        structlog.get_logger().info("stream_switched", step=2)
        assert "stream_switched" in second.getvalue()

    def test_level_filter(self, monkeypatch):
        """Should drop events below the configured level."""
        stream = io.StringIO()
        monkeypatch.setattr(sys, "stderr", stream)
        configure_logging(level="WARNING")
        structlog.get_logger().info("quiet_event")
        structlog.get_logger().warning("loud_event")
        assert "quiet_event" not in stream.getvalue()
        assert "loud_event" in stream.getvalue()

    def test_json_output(self, monkeypatch):
        """Should render JSON lines when asked."""
        stream = io.StringIO()
        monkeypatch.setattr(sys, "stderr", stream)
        configure_logging(level="INFO", json_output=True)
        structlog.get_logger().info("json_event", value=3)
        assert '"event": "json_event"' in stream.getvalue()
