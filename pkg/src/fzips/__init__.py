"""F-zips over finite fields and their classification by Weyl group cosets."""
from .gf import FieldElement, FieldParams, make_field
from .linalg import Flag, Matrix, Subspace
from .weyl import SimpleSubset, WeylElement, min_coset_reps
from .fzip import FZip, TypeFunction, standard_fzip, validate
from .classify import ClassificationTrace, classify, codim, eo_partition, t_sequence, u_from_sequence
from .forms import BilinearForm, PolarizedFZip, classify_polarized

__all__ = [
    "FieldElement", "FieldParams", "make_field",
    "Flag", "Matrix", "Subspace",
    "SimpleSubset", "WeylElement", "min_coset_reps",
    "FZip", "TypeFunction", "standard_fzip", "validate",
    "ClassificationTrace", "classify", "codim", "eo_partition", "t_sequence", "u_from_sequence",
    "BilinearForm", "PolarizedFZip", "classify_polarized",
]
