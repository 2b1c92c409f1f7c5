from chebpart.config import CacheSettings, ChebpartSettings, LimitSettings
from chebpart.dynamics import rotation_orbit


def test_environment_overrides(monkeypatch, tmp_path):
    monkeypatch.setenv('CHEBPART_LIMITS_ORBIT_STEPS', '5')
    monkeypatch.setenv('CHEBPART_CACHE_DIR', str(tmp_path))
    monkeypatch.setenv('CHEBPART_CACHE_ENABLED', 'false')
    assert LimitSettings().ORBIT_STEPS == 5
    assert CacheSettings().DIR == tmp_path
    assert not CacheSettings().ENABLED


def test_defaults():
    settings = ChebpartSettings()
    assert settings.LIMITS.TOLERANCE == 0.015
    assert settings.LIMITS.CHAIN_DEPTH == 64


def test_orbit_steps_default(monkeypatch):
    from chebpart.config import config

    monkeypatch.setattr(config.LIMITS, 'ORBIT_STEPS', 4)
    assert len(rotation_orbit(3)) == 5
