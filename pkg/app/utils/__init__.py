"""
Utility functions and helpers
"""
from .csv_utils import read_points_csv, write_rows_csv

__all__ = ["read_points_csv", "write_rows_csv"]
