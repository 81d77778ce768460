"""
Gevrey modules.

This package contains global q-Gevrey orders, the normalization of a series
by q-powers and q-factorials, the empirical detection of orders over a finite
candidate grid, and the rescaled series used as a counterexample to finite
size.
"""
