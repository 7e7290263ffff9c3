"""Gamma-deformed Cl3, bi-orthogonal Pauli spinors, time reversal and KS maps."""

from .cl3 import (BASIS, E0, E1, E2, E3, E12, E13, E23, E123, InvolutionKind, Multivector,
                  basis_flip, clifford_conjugation, from_matrix, geometric_product,
                  grade_inversion, grade_part, involution, reversion, to_matrix)
from .deformed import DeformationParam, DeformedBasis, deformed_generators, verify_clifford_relations
from .errors import (DegenerateError, GammaMismatchError, InvalidParameterError,
                     PairingViolationError, SingularTransformError)
from .report import SCHEMA, CheckResult, VerificationReport
from .spectral import FieldConfig, build_hamiltonian, eigensystem, projectors, theta_pm
from . import cl3, deformed, ideal, ks, spectral, time_reversal
from .time_reversal import apply_T, conjugate_by_T, evolve, kramers_pairing, time_reversed_generators

__version__ = "0.1.0"
