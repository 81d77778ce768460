"""
Visualization modules.

This package contains SVG drawings of Newton-Ramis polygons and of the
growth of size partial sums.
"""
