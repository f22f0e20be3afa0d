"""Exact linear algebra over GF(p) and Q, the Verlinde fusion category Ver_p
built from Rep(Z/pZ) by killing negligible morphisms, graded invariant
algebras of symmetric algebras in Ver_p, and the characteristic-2
supervector category sVec_2.

All arithmetic is exact: modular residues over prime fields, arbitrary
precision rationals over Q.  No floating point anywhere.
"""

__version__ = "0.1.0"
