"""Galois action on mod-p homology of Fermat curves.

Exact arithmetic in the group rings F_p[Z/p] and F_p[Z/p x Z/p] (optionally
over an Artin-Schreier extension or a lift mod p^2), the units B_q describing
the action, their invariant subspaces, the low-degree cohomology complex, and
point counts of Fermat curves over finite fields.
"""

from ._kernels import BACKEND
from .group_ring import GroupRingElt, invert_unit, exp0, exp1, dlog, norm
from .modular import ScalarRing, Subspace, artin_schreier

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GroupRingElt",
    "ScalarRing",
    "Subspace",
    "artin_schreier",
    "dlog",
    "exp0",
    "exp1",
    "invert_unit",
    "norm",
]
