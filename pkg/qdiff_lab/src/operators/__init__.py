"""
Skew operator modules.

This package contains operators in K(x)[sigma] and K(x)[d], conversion
between the two forms, their action on series prefixes, the text format,
the bounded annihilator search and the q -> 1/q and q -> q^(1/r)
constructions.
"""
