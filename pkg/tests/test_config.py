import logging

import pytest

from app.config import _ENV_FIELDS, LOG_FORMAT, Settings, configure_logging, load_settings


@pytest.fixture
def app_logger(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    for var in ("NMATRIX_LOG_LEVEL", "LOG_LEVEL"):
        monkeypatch.delenv(var, raising=False)
    logger = logging.getLogger("app")
    saved = logger.level
    yield logger
    logger.setLevel(saved)


def test_log_level_from_environment(app_logger, monkeypatch):
    monkeypatch.setenv("NMATRIX_LOG_LEVEL", "debug")
    monkeypatch.setenv("LOG_LEVEL", "ERROR")
    configure_logging()
    assert app_logger.level == logging.DEBUG


def test_generic_log_level_is_the_fallback(app_logger, monkeypatch):
    monkeypatch.setenv("LOG_LEVEL", "warning")
    configure_logging()
    assert app_logger.level == logging.WARNING


def test_explicit_level_and_unknown_names(app_logger):
    configure_logging("error")
    assert app_logger.level == logging.ERROR
    configure_logging("chatty")
    assert app_logger.level == logging.INFO


def test_log_format_names_the_logger():
    assert "[%(name)s]" in LOG_FORMAT


@pytest.fixture
def environment(monkeypatch):
    for var in _ENV_FIELDS:
        monkeypatch.delenv(var, raising=False)
    return monkeypatch


def test_settings_defaults(environment):
    assert load_settings() == Settings()


def test_settings_from_environment(environment):
    environment.setenv("NMATRIX_SYSTEM", "t4m")
    environment.setenv("NMATRIX_MAX_DOMAIN", "2")
    settings = load_settings()
    assert settings.system == "t4m"
    assert settings.max_domain == 2


@pytest.mark.parametrize("var, value", [("NMATRIX_MAX_DOMAIN", "0"), ("NMATRIX_SYSTEM", "s5"), ("NMATRIX_BUDGET", "many")])
def test_bad_settings(environment, var, value):
    environment.setenv(var, value)
    with pytest.raises(ValueError):
        load_settings()
