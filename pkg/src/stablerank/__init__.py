"""Exact computations around stable rank, power residue symbols and SK1.

Submodules:

    arith         rational-integer utilities (factoring, CRT, modular roots)
    quadratic     Gaussian and Eisenstein integers
    residues      m-th power residue symbols
    bms           Bass-Milnor-Serre divisor r(I) and the SK1 invariant
    intpoly       integer polynomials and unimodularity certificates
    stability     non-stability obstruction for rows of Z[x]
    finite_rings  brute-force stable-range checks over Z/n
    cli           the ``stablerank`` command
"""

from .bms import Mat2, complete_sl2_rel, in_sl2_rel, r_of_ideal, sk1_invariant
from .errors import DomainError, PreconditionError, SymbolUndefined
from .intpoly import IntPoly, parse_poly, parse_row, unimodular_certificate, verify_certificate
from .quadratic import PrincipalIdeal, QuadInt, RingKind, parse_quad
from .residues import RootOfUnity, symbol
from .stability import obstruction, search_stabilizer

__version__ = "0.1.0"
