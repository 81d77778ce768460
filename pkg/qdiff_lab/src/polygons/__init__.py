"""
Newton polygon modules.

This package contains the Newton-Ramis polygons of skew operators in sigma-
and d-form, their slopes at 0 and infinity, and the action of the q-Fourier
transformations on polygons and slopes.
"""
