"""
Tests for the flag-driven application configuration.
"""

import argparse

import pytest

from config.app_config import AppConfig, LogLevel


def test_defaults():
    config = AppConfig()
    assert config.oracle_cap == 26
    assert config.pattern_cap == 10
    assert config.log_level is LogLevel.WARNING
    assert config.to_dict()['log_file'] is None


@pytest.mark.parametrize("overrides", [
    {'oracle_cap': 0},
    {'layout_search_cap': -1},
    {'max_s': -1},
    {'threads': 0},
])
def test_validation(overrides):
    with pytest.raises(ValueError):
        AppConfig(**overrides)


def test_from_args_keeps_defaults_for_missing_flags(tmp_path):
    args = argparse.Namespace(oracle_cap=12, max_s=None, log_level='info', log_file=str(tmp_path / "run.log"),
                              json=True)
    config = AppConfig.from_args(args)
    assert config.oracle_cap == 12
    assert config.max_s == 3
    assert config.log_level is LogLevel.INFO
    assert config.to_dict()['log_file'] == str(tmp_path / "run.log")
