"""
Bessel-K order derivatives at s = 1/2 - command-line front end
"""

__version__ = "1.0.0"
