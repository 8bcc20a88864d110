"""Two-bridge links ``L(p/q)``: group presentations, the Alexander subgroup,
incremental cycle graphs, nested subgraph witnesses and bi-orderability."""

from .alexpoly import IntPolynomial, alexander_polynomial, content
from .cyclegraph import IncrementalCycle, IncrementalPath, build_cycle, build_path, reduction_chain
from .intlinalg import gcd_maximal_minors, index_of_chain_quotient, smith_diagonalize
from .orderability import Status, Verdict, certify, count_real_roots_in
from .pairs import CoprimePair, NotTwoBridgeError, normalize, parse_fraction
from .presentation import chain_presentation, rewrite_R0
from .rtfn import build_witness, derive_nested_words, parafree_chain_report, verify_witness
from .words import SWord

__version__ = "0.1.0"
