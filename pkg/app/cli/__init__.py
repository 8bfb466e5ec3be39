"""
Command-line interface
"""
from .main import dispatch, main

__all__ = ["dispatch", "main"]
