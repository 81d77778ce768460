"""
Hermite-Pade modules.

This package contains the auxiliary polynomial g of a solution vector, the
remainder vectors R_n and the matrices R^<n>, the alpha-coefficients of the
G_[n] expansion, and the exact checks tying them together.
"""
