"""
API modules for the Bessel-K order-derivative tools
"""

from .derivative_backend import DerivativeBackend

__all__ = ["DerivativeBackend"]
