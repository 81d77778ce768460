"""
Core arithmetic and infrastructure.

This package contains the exact scalar field Q(x, qt), q-numbers,
cyclotomic arithmetic, exact linear algebra, truncated power series,
configuration management, the exception hierarchy and console output.
"""
