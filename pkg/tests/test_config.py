"""Tests for the configuration module."""

import sys
from pathlib import Path
from unittest.mock import patch

from elastodg.config import Settings


@patch.object(Path, "mkdir")
def test_output_root_default(mock_mkdir):
    """The default output root sits under the working directory."""
    with patch.object(sys, "argv", ["elastodg", "run", "x.toml"]):
        settings = Settings()
        assert settings.OUTPUT_ROOT == (Path.cwd() / "elastodg-output").resolve()
    mock_mkdir.assert_called_once_with(parents=True, exist_ok=True)


def test_output_root_from_args(tmp_path):
    """--output-dir on the command line overrides the default and is created."""
    target = tmp_path / "deeply" / "nested" / "out"
    with patch.object(sys, "argv", ["elastodg", "--output-dir", str(target), "run", "x.toml"]):
        root = Settings().OUTPUT_ROOT
    assert root.is_dir()
    assert root.samefile(target)


def test_output_dir_flag_without_value():
    with patch.object(sys, "argv", ["elastodg", "--output-dir"]):
        assert Settings()._get_output_dir_from_args() is None


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv("SOLVER_THREADS", "6")
    assert Settings().threads == 6
    monkeypatch.setenv("SOLVER_THREADS", "0")
    assert Settings().threads == 1


def test_defaults():
    settings = Settings()
    assert settings.APP_NAME == "elastodg"
    assert settings.ELEMENT_BLOCK == 64
