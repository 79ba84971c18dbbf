"""
Utility functions for FusionLab: exact sparse matrices, reports and output paths.
"""
