"""
Service Layer
Field arithmetic, characters, Gauss sums, statevector simulation and reductions
"""

from .ff_arith import (
    FieldCtx, FieldElement, make_field, fld_add, fld_sub, fld_neg, fld_mul, fld_pow, fld_inv,
    trace, discrete_log, field_tables
)
from .char_theory import (
    MultChar, DirichletChar, mult_char_eval, char_mul, quadratic_char, make_dirichlet_char,
    char_from_record, dirichlet_characters, dirichlet_eval, component_chars, conductor,
    closed_form_conductor, is_primitive, primitive_reduction, char_sum
)
from .gauss import (
    GaussMethod, GaussSumResult, JacobiSumResult, gauss_sum_direct_field, beta_factor,
    quadratic_gauss_closed, field_gauss, jacobi_direct, jacobi_via_gauss, jacobi_sum,
    gauss_sum_direct_ring, trivial_ring_closed, ring_gauss_pipeline, wrap_distance
)
from .qsim import (
    StateVector, PhaseEstimate, RelativePhaseSource, StaleComponentSource, qft_field, qft_ring,
    phase_kickback, amplitude_amplify, grover_schedule, prepare_char_state,
    prepare_dirichlet_state, eigenphase_gauss_field, eigenphase_gauss_ring,
    sample_phase_measurement, estimate_phase, estimate_gauss_phase, estimate_ring_gauss_phase
)
from .reductions import (
    GaussOracle, DlogRecovery, WalkOrdering, WalkTrace, dlog_via_gauss_oracle, walk_trace,
    autocorrelation, generator_autocorrelation_readings, walk_csv, export_walk
)

__all__ = [
    'FieldCtx',
    'FieldElement',
    'make_field',
    'fld_add',
    'fld_sub',
    'fld_neg',
    'fld_mul',
    'fld_pow',
    'fld_inv',
    'trace',
    'discrete_log',
    'field_tables',
    'MultChar',
    'DirichletChar',
    'mult_char_eval',
    'char_mul',
    'quadratic_char',
    'make_dirichlet_char',
    'char_from_record',
    'dirichlet_characters',
    'dirichlet_eval',
    'component_chars',
    'conductor',
    'closed_form_conductor',
    'is_primitive',
    'primitive_reduction',
    'char_sum',
    'GaussMethod',
    'GaussSumResult',
    'JacobiSumResult',
    'gauss_sum_direct_field',
    'beta_factor',
    'quadratic_gauss_closed',
    'field_gauss',
    'jacobi_direct',
    'jacobi_via_gauss',
    'jacobi_sum',
    'gauss_sum_direct_ring',
    'trivial_ring_closed',
    'ring_gauss_pipeline',
    'wrap_distance',
    'StateVector',
    'PhaseEstimate',
    'RelativePhaseSource',
    'StaleComponentSource',
    'qft_field',
    'qft_ring',
    'phase_kickback',
    'amplitude_amplify',
    'grover_schedule',
    'prepare_char_state',
    'prepare_dirichlet_state',
    'eigenphase_gauss_field',
    'eigenphase_gauss_ring',
    'sample_phase_measurement',
    'estimate_phase',
    'estimate_gauss_phase',
    'estimate_ring_gauss_phase',
    'GaussOracle',
    'DlogRecovery',
    'WalkOrdering',
    'WalkTrace',
    'dlog_via_gauss_oracle',
    'walk_trace',
    'autocorrelation',
    'generator_autocorrelation_readings',
    'walk_csv',
    'export_walk'
]
