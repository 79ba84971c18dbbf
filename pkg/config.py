"""
Configuration utilities for the FusionLab project
"""

import os
import logging
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Constants
APP_NAME = "FusionLab"
VERSION = "1.0.0"


def get_thread_count():
    """
    Get the number of worker threads used by suites and simulations

    Returns:
        int: Worker count, at least 1
    """
    value = os.getenv("FUSIONLAB_THREADS", "1")
    try:
        return max(1, int(value))
    except ValueError:
        print(f"Warning: FUSIONLAB_THREADS={value!r} is not an integer, using 1")
        return 1


def get_output_dir():
    """
    Get the directory where reports and artifacts are written

    Returns:
        str: Output directory path
    """
    return os.getenv("FUSIONLAB_OUTPUT_DIR", os.path.join(os.getcwd(), "reports"))


def get_log_file():
    """
    Get the log file location

    Returns:
        str: Path of the log file
    """
    return os.getenv("FUSIONLAB_LOG_FILE", os.path.join(get_output_dir(), "fusionlab.log"))


def get_log_level():
    """
    Get the logging level

    Returns:
        int: A logging level constant
    """
    name = os.getenv("FUSIONLAB_LOG_LEVEL", "INFO").upper()
    return getattr(logging, name, logging.INFO)


def get_default_seed():
    """
    Get the default seed for Monte Carlo runs

    Returns:
        int: Seed value
    """
    try:
        return int(os.getenv("FUSIONLAB_SEED", "7"))
    except ValueError:
        return 7
