"""
Base interface for verification suites
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable


@dataclass
class Job:
    """
    One unit of work of a suite. ``run`` returns a CheckReport or a list of
    them. Reports of a ``report_only`` job are written but never decide the
    exit code.
    """
    name: str
    run: Callable
    report_only: bool = False


class BaseSuite(ABC):
    """
    Abstract base class for verification suites.
    All suites read their parameters from a SettingsManager.
    """

    def __init__(self, settings_manager):
        self.settings_manager = settings_manager

    @abstractmethod
    def jobs(self) -> list:
        """
        Build the jobs of this suite from the current settings

        Returns:
            list of Job
        """
        pass

    @property
    def name(self) -> str:
        """Return the name of the suite"""
        return self.__class__.__name__
