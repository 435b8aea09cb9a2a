"""Codes over F_q[u]/(u^2) x F_q from simplicial complexes, their Gray images and applications."""
from .errors import MixedCodeError
from .galois import FieldSpec, make_field
from .complexes import SupportSet, DefiningSetSpec, build_defining_set, defining_set
from .construct import FieldCode, RingCode, code_for_kind, gray_spanning_matrix, projective_representatives
from .analysis import (WeightDistribution, ClosedFormParams, certify, closed_form_distribution,
                       weight_distribution)

__version__ = "0.1.0"
