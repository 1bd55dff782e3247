"""Brute-force laboratory for entanglement-enhanced stimulated Raman scattering."""

from .analysis import (EnhancementRecord, dicke_pair_correlation, enhancement_bruteforce,
                       enhancement_formula, rate_ratio, scan_partitions, scan_w)
from .collective import (CollectiveKet, CollectiveState, collective_operator_full,
                         commutator_residual, embed_collective, ladder_apply)
from .errors import (DegenerateInputError, InvalidInputError, NoTransitionError,
                     ResourceLimitError, SingularDenominatorError, SuperRamanError)
from .hilbert import (ProductBasisState, StateVector, apply_single_atom_operator, basis_index,
                      basis_from_index, inner_product, norm, normalize)
from .raman import (Geometry, RamanConfig, absorption_operator, emission_operator,
                    phase_factors, raman_amplitude, scattered_state, total_rate)
from .states import dicke_two_level, fidelity, symmetric_state, w_state

__version__ = "0.1.0"
