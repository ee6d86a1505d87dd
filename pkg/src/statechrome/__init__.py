"""Kauffman state graphs, chromatic graph homology, and girth bounds.

The package computes link-diagram state sums, Khovanov and chromatic
homology tables over exact integers, the closed-form extremal coefficient
and rank formulas that connect them, and the diagram-girth bounds those
formulas imply.
"""

from __future__ import annotations

__version__ = "0.1.0"
