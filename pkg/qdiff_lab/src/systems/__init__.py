"""
System modules.

This package contains matrix q-difference systems, their iteration tables
A_n, G_n and G_[n], the Galochkin estimators, and nilpotent reduction at
cyclotomic places.
"""
