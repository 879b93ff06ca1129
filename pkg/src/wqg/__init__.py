"""Exact-arithmetic toolkit for weak bialgebras, weak Hopf algebras and
bialgebroids over Frobenius-separable base algebras."""

from .errors import (AxiomFailure, BadBase, BadNormalization, BadTwist, FieldMismatch,
                     IllDefined, InvalidGroupoid, InvalidInput, NonInvertibleT,
                     NotAHomomorphism, NotAssociative, NotCommutative, NotFrobenius,
                     NotInvertible, NotSeparable, ParseError, ProjectorNotIdempotent,
                     SchemaError, Singular, WqgError)
from .fields import GF, QQ, FieldSpec, Scalar
from .linalg import (Matrix, QuotientSpace, RrefResult, SparseEchelon, Subspace,
                     inverse, kernel, quotient_by, rref, solve_linear, solve_vector)
from .report import CheckItem, CheckReport, Witness
from .algcore import (FinDimAlgebra, FinDimCoalgebra, LinearMap, check_algebra,
                      check_algebra_hom, check_coalgebra, generated_subalgebra)
from .frobenius import (FrobeniusSystem, compare_frobenius_systems, find_ifs,
                        frobenius_automorphism, matrix_algebra, matrix_ifs,
                        trace_ifs_commutative, twist_system, verify_frobenius_system,
                        verify_ifs)
from .weakcore import (CounitalData, WeakBialgebra, antiiso_check, check_weak_bialgebra,
                       counital_data, induced_counital_iso, variant,
                       verify_counital_identities)
from .bialgebroid import (FsBialgebroid, TensorOverR, bialgebroid_to_weak,
                          check_bialgebroid, tensor_over_r, twist_weak,
                          weak_to_bialgebroid)
from .hopf import (BetaData, NotHopf, beta_map, check_tak_hopf, solve_antipode,
                   sub_quotient_hopf_criterion, verify_antipode)
from .duality import (BialgebroidPairing, WeakPairing, canonical_pairing_candidate,
                      check_bialgebroid_skew_pairing, check_weak_skew_pairing,
                      descend_pairing, dual_weak_bialgebra, evaluation_pairing)
from .repcat import (BialgebroidComodule, CoalgComodule, HModule,
                     bialgebroid_comodule_to_coalg, check_module,
                     coalg_comodule_to_bialgebroid, comodule_check, comodule_tensor,
                     gamma_monoidal_check, module_tensor, regular_module)
from .zoo import (FiniteGroupoid, check_groupoid, cyclic_group_groupoid,
                  disjoint_union_groupoid, eb2, ebm2, enveloping_bialgebroid,
                  groupoid_algebra, groupoid_function_algebra, k2, m2q,
                  monoid_bialgebra, mx, pair_groupoid, pg2, pg3, r2, r3,
                  scaled_trace_ifs_m2)

__version__ = "0.1.0"
