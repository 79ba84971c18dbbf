from fractions import Fraction

import pytest

from app.settings import SettingsManager
from app.utils.errors import DomainError


def test_defaults():
    settings = SettingsManager()
    assert settings.get_setting("q") == Fraction(1, 2)
    assert settings.get_setting("m") == (2, 1)
    assert settings.get_setting("sector") is None
    assert settings.get_setting("format") == "json"


def test_overrides_are_parsed():
    settings = SettingsManager({"q": "2/3", "m": "2, 2,1", "sites": "5", "tau": "0.25", "seed": None})
    assert settings.get_setting("q") == Fraction(2, 3)
    assert settings.get_setting("m") == (2, 2, 1)
    assert settings.get_setting("sites") == 5
    assert settings.get_setting("tau") == 0.25
    assert settings.get_setting("seed") == settings.defaults["seed"]


def test_set_setting_rejects_bad_values():
    settings = SettingsManager()
    with pytest.raises(DomainError):
        settings.set_setting("q", "one half")
    with pytest.raises(DomainError):
        settings.set_setting("sites", 0)
    with pytest.raises(DomainError):
        settings.set_setting("m", "2,x")
    with pytest.raises(DomainError):
        settings.set_setting("format", "xml")
    with pytest.raises(DomainError):
        settings.set_setting("colour", "blue")


def test_params_are_strings():
    params = SettingsManager({"alpha": "5/7"}).as_params(["alpha", "sites"])
    assert params == {"alpha": "5/7", "sites": "4"}
