"""Cluster-algebra y-seed mutation and the dilogarithm identities
attached to mutation periods: classical Rogers sums, exact quantum
dilogarithm identities in a truncated quantum torus, the noncompact
quantum dilogarithm, and the stationary-phase bridge between them."""

__version__ = "0.1.0"

from .errors import (BranchProximity, ClusterDilogError, IncompatibleContexts,
                     MixedSignCVector, NonInvertible, NonTruncating,
                     NotAPeriod, PoleHit, QuadratureFailure, ZeroCVector)
from .exchange import (ExchangeMatrix, MutationSchedule, NumericSeed,
                       PeriodReport, SignSequence, TropicalState,
                       check_period, extend_schedule, mutate_matrix,
                       mutate_tropical, mutate_y_numeric, numeric_trajectory,
                       principal_extension, sign_sequence, tropical_sign)
from .ratfunc import EXACT, QCoefficient, RationalPointField
from .torus import (TorusElement, invert, monomial, multiply, pairing, power,
                    psi_series, unit)
from .qident import (QuantumSeedSeries, Residual, initial_quantum_seed,
                     quantum_mutate, quantum_trajectory, verify_dual_pair,
                     verify_shuffle, verify_tropical_identity,
                     verify_universal_identity)
from .dilog import (ClassicalIdentityReport, li2, log_psiq_numeric,
                    psiq_asymptotics, psiq_numeric, rogers_L,
                    rogers_L_complex, verify_classical_identity)
from .phib import (PhibParams, check_duality, check_phib_asymptotics,
                   log_phib, phib, phipsi_residual, recurrence_residual,
                   unitarity_residual)
from .saddle import (SaddleReport, SaddleState, TransformSpec, action,
                     build_solution, coordinate_maps, newton_refine,
                     residuals)
from .fixtures import builtin_seed, load_seed_file, seed_from_dict
from .search import search_periods

__all__ = [name for name in dir() if not name.startswith("_")]
