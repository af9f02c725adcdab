"""
Utility functions for the command line
"""

from .formatters import format_records, reports_to_records

__all__ = [
    "format_records",
    "reports_to_records",
]
