"""operad_calc: exact integer computations with planar operads and cooperads.

Tree combinatorics, free operads and cofree conilpotent cooperads on graded
collections, curved (co)operad verification, cobar/bar constructions,
twisting cochains, the homotopy-unital A-infinity generator calculus, and
the comma/bar sequence calculus.
"""

__version__ = "0.1.0"
