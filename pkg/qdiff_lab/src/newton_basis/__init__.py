"""
Newton basis modules.

This package contains truncated series in the q-Newton basis
T_n(x, xi) = (x - xi)(x - q xi)...(x - q^(n-1) xi), the action of operators
in that basis, local solution bases at nonzero points and Casorati
determinants.
"""
