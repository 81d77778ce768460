"""
Place and size modules.

This package contains the ultrametric places of Q(q), exact log-norms and
Gauss norms, the product formula bookkeeping, and the size functional on
series prefixes.
"""
