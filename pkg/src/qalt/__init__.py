"""Montesinos, pretzel and rational link diagrams, determinants and quasi-alternating certificates."""

from .conway import (MontesinosPresentation, ParseError, RationalTangleWord, designated_slot,
                     load_table, parse_montesinos, parse_tangle_word)
from .determinant import compute_det, det, det_alternating, det_genus1, det_oracle, det_rational
from .dessin import dessin_genus, genus_data
from .diagram import (PlanarDiagram, build_montesinos, build_pretzel, build_rational, resolve)
from .qacert import (QACertificate, Unknown, certify, certify_designated, certify_family,
                     match_family, verify_certificate)
from .tangle import fraction, slot_equivalent, slot_value
from .treecount import Multigraph, count_trees

__version__ = "0.1.0"
