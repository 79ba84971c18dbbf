"""
Run parameters: defaults, parsing of command-line values and logging of
the effective set.
"""

from .settings_manager import SettingsManager, PARSERS, FORMATS
