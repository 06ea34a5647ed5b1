"""Exact construction and certification of constant-rank affine matrix subspaces."""

from .aci import AciReport, acify, hz_family_dim, is_aci
from .certifier import (RankCertificate, certify_constant_rank,
                        certify_constant_signature, falsify_random_overdim, intersection_check,
                        maximality_probe)
from .errors import (BadParams, BadRank, ConstRankError, DegreeTooHigh, DimensionMismatch,
                     IdentityFails, IndexOutOfRange, MissingParameter, NoRealRoot, NotSymmetric,
                     ShapeMismatch, SingularA, ZeroPolynomial)
from .formulas import a_rect, a_rect_alt, a_sig, a_sym, formula, hz_dim
from .lemmas import cauchy_binet_certificate, lemma1_check, lemma2_root_exists, lemma3_bordered_det
from .matrix import (PMatrix, QMatrix, Signature, det_exact, matrix_unit, minor, rank_exact,
                     signature, sym_minor_det)
from .poly import MPoly, UPoly, isolate_root, poly_arith, poly_eval, sturm_real_root_count
from .subspace import (AffineSubspace, PatternSpace, construct_rect_witness,
                       construct_signature_witness, construct_sym_witness, pattern_space,
                       to_parametric)

__version__ = "0.1.0"
