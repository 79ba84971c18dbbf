"""
Utility functions for resolving where reports and artifacts are written.
"""
import os

import config


def get_output_path(relative_path, output_dir=None):
    """
    Get the absolute path of an output artifact, creating its directory

    Args:
        relative_path (str): The path relative to the output directory
        output_dir (str): Override for the configured output directory

    Returns:
        str: The resolved absolute path
    """
    if os.path.isabs(relative_path):
        path = relative_path
    else:
        base_path = output_dir or config.get_output_dir()
        path = os.path.join(base_path, relative_path)
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    return path
