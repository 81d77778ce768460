"""
Catalog modules.

This package contains closed-form coefficient generators for the worked
examples (E_q, T_q, B_q, the geometric series, Phi and E_q^2), their known
operators and q-Gevrey orders, the verification of those facts, and the
q^(-1)-adic product and zero checks for E_q.
"""
