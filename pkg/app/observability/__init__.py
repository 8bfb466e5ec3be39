"""
Observability helpers: wall-time logging for long-running operations
"""
from .decorators import log_duration

__all__ = ["log_duration"]
