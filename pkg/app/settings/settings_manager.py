"""
Settings manager holding the parameter set of a suite or simulation run
"""

import logging

import config
from app.qcomb.qnumbers import as_rational
from app.utils.errors import DomainError

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv")


def _int_list(value):
    if isinstance(value, str):
        parts = [p for p in value.replace(" ", "").split(",") if p]
        try:
            return tuple(int(p) for p in parts)
        except ValueError as e:
            raise DomainError(f"Expected a comma-separated list of integers, got {value!r}") from e
    if isinstance(value, int):
        return (value,)
    return tuple(int(v) for v in value)


def _positive_int(value):
    number = int(value)
    if number < 1:
        raise DomainError(f"Expected a positive integer, got {value!r}")
    return number


# Parsers applied by set_setting; rationals stay exact
PARSERS = {
    "q": as_rational,
    "alpha": as_rational,
    "sites": _positive_int,
    "m": _int_list,
    "species": _positive_int,
    "sector": _int_list,
    "l": _positive_int,
    "L": _positive_int,
    "tau": float,
    "chi": float,
    "zeta": float,
    "gamma": float,
    "lambda": float,
    "w": float,
    "eta": float,
    "trials": _positive_int,
    "seed": int,
    "workers": _positive_int,
    "convention": str,
    "format": str,
    "out": str,
}


class SettingsManager:
    """
    Manager class for the parameters of one run. Values passed on the
    command line go through set_setting and are parsed into their exact
    types there.
    """

    def __init__(self, overrides=None):
        """
        Initialize the settings manager

        Args:
            overrides: optional dict of setting values, e.g. parsed CLI flags;
                None values are ignored
        """
        self.defaults = {
            "q": as_rational("1/2"),
            "alpha": as_rational("1/2"),
            "sites": 4,
            "m": (2, 1),
            "species": 2,
            "sector": None,
            "l": 2,
            "L": 200,
            "tau": 0.5,
            "chi": 0.5,
            "zeta": -0.5,
            "gamma": 0.5,
            "lambda": 0.23,
            "w": 0.37,
            "eta": 0.11,
            "trials": 20000,
            "seed": config.get_default_seed(),
            "workers": config.get_thread_count(),
            "convention": "unit_walk",
            "format": "json",
            "out": None,
        }
        self.settings = dict(self.defaults)

        for key, value in (overrides or {}).items():
            if value is not None:
                self.set_setting(key, value)

        self._log_current_settings()

    def get_setting(self, key, default=None):
        """
        Get a setting value

        Args:
            key: Setting key
            default: Default value if setting doesn't exist

        Returns:
            Setting value
        """
        if default is None and key in self.defaults:
            default = self.defaults[key]
        value = self.settings.get(key)
        return default if value is None else value

    def set_setting(self, key, value):
        """
        Set a setting value, parsing strings into the setting's type

        Args:
            key: Setting key
            value: Setting value

        Raises:
            DomainError: unknown key or a value that does not parse
        """
        if key not in self.defaults:
            raise DomainError(f"Unknown setting {key!r}")
        parser = PARSERS.get(key)
        if parser is not None and value is not None:
            try:
                value = parser(value)
            except (TypeError, ValueError) as e:
                raise DomainError(f"Invalid value {value!r} for {key}: {e}") from e
        if key == "format" and value not in FORMATS:
            raise DomainError(f"Unknown report format {value!r}, expected one of {FORMATS}")
        self.settings[key] = value
        logger.debug(f"Set setting {key} = {value} (type: {type(value).__name__})")

    def as_params(self, keys=None):
        """The current values as strings, for embedding in reports"""
        keys = keys or self.settings.keys()
        return {key: str(self.get_setting(key)) for key in keys}

    def _log_current_settings(self):
        """Log all current settings for debugging"""
        logger.debug("Current settings:")
        for key in self.defaults:
            logger.debug(f"  {key}: {self.get_setting(key)}")
