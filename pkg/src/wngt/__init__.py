"""Lambda-sequences, Coxeter moves and minimal non-gatherable triples
for the classical affine Weyl groups."""
from .errors import WngtError
from .rootsys import SystemType
from .weyl import AffineElement, AffineRoot, SignedPerm, from_word, lambda_sequence, length
from .words import Triple, is_gatherable, is_minimal_ngt

__version__ = "0.1.0"

__all__ = ["AffineElement", "AffineRoot", "SignedPerm", "SystemType", "Triple", "WngtError",
           "from_word", "is_gatherable", "is_minimal_ngt", "lambda_sequence", "length"]
