from configparser import ConfigParser
from importlib import import_module

import pytest

from chebpart.config import config


@pytest.fixture(scope='session', autouse=True)
def ensure_coverage():
    """Coverage cannot automatically discover modules within namespace
    packages, which prevents reporting on unexecuted files and leads to
    an inflated coverage score.

    Any modules within the `chebpart.lib` namespace package that we do
    want covered must be declared in .coveragerc and also imported here.
    """
    coveragerc = ConfigParser()
    coveragerc.read('.coveragerc')
    for module in coveragerc['run']['source'].split():
        import_module(module)


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    """An auto-use, per-test fixture that points the classification cache
    at a fresh directory."""
    monkeypatch.setattr(config.CACHE, 'DIR', tmp_path / 'cache')
    return config.CACHE.DIR


@pytest.fixture(autouse=True)
def census_settings(monkeypatch):
    """Run censuses inline, over small segments, unless a test asks otherwise."""
    monkeypatch.setattr(config.CENSUS, 'THREADS', 1)
    monkeypatch.setattr(config.CENSUS, 'CHUNK_SIZE', 500)
