"""
Borel and Fourier transform modules.

This package contains the formal q-Borel transforms of series, the action
of operators in z on series in 1/z, and the q+ and q# Fourier
transformations of operators with their inverses and their compositions
with the symmetry z -> 1/x.
"""
