"""
cuspforge - exact invariants of co-abelian ball-quotient compactifications.
"""

__version__ = "1.0.0"
