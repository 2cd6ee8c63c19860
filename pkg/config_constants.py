#!/usr/bin/env python3
"""
Configuration Constants
Centralized constants for desk-scale bounds, tolerances, paths and error messages
"""

from pathlib import Path
import math


class BoundsConfig:
    """Desk-scale size bounds"""

    # Field arithmetic and baby-step/giant-step discrete log
    ARITH_MAX_ORDER = 2 ** 22

    # O(N) direct summation of Gauss and Jacobi sums
    DIRECT_SUM_MAX_ORDER = 2 ** 20

    # Dense statevector simulation
    STATEVECTOR_MAX_DIM = 2 ** 14

    # Dense N x N Fourier kernel (the fft path covers the rest)
    DENSE_KERNEL_MAX_DIM = 2 ** 12

    # Rings Z/nZ (trial-division factorization, character tables)
    RING_MAX_MODULUS = 2 ** 20

    # Register-level phase kickback keeps a dim x n joint state
    KICKBACK_REGISTER_MAX = 64


class ToleranceDefaults:
    """Numerical tolerances"""

    # Statevector norm check after each operation
    NORM = 1e-10

    # Eigenvector residual of the prepared character state
    EIGEN_RESIDUAL = 1e-9

    # Exact amplitude amplification fidelity
    FIDELITY = 1e-10

    # Below this modulus, times sqrt of the number of terms, a sum is reported as zero
    ZERO_SUM = 1e-9

    # Exact-mode oracle angle error
    EXACT_ORACLE = 1e-9


class EstimatorDefaults:
    """Phase estimation and reduction defaults"""

    STRATEGIES = ('two-basis', 'adaptive')
    DEFAULT_STRATEGY = 'two-basis'
    DEFAULT_SAMPLES = 10000
    DEFAULT_SEED = 0

    # Adaptive strategy: share of the budget spent on the coarse two-basis pass
    ADAPTIVE_COARSE_FRACTION = 0.25
    ADAPTIVE_ROUNDS = 3

    # Reported error bound for sampled phases, in standard errors
    ERROR_BOUND_SIGMAS = 3.0

    # Dlog reduction: largest oracle epsilon that still narrows
    MAX_ORACLE_EPSILON = 2 * math.pi / 16
    DEFAULT_ORACLE_EPSILON = 2 * math.pi / 64
    DEFAULT_ORACLE_VOTES = 1

    # Exact oracle phases kept per (field, beta)
    ORACLE_CACHE_SIZE = 4096


class PathConfig:
    """File path configuration"""

    # Base directory (script location)
    BASE_DIR = Path(__file__).parent

    # Configuration files
    CONFIG_PATH = BASE_DIR / "config.json"
    SCHEMA_PATH = BASE_DIR / "config_schema.json"

    # Walk exports (walk --export)
    EXPORT_DIR = BASE_DIR / "exports"


class ErrorMessages:
    """Standardized error messages"""

    # Field errors
    NOT_PRIME = "Modulus {p} is not prime"
    BAD_DEGREE = "Extension degree must be >= 1, got {r}"
    ORDER_TOO_LARGE = "Order {order} exceeds the desk-scale bound {bound}"
    NOT_PRIMITIVE = "Element {g} does not generate the multiplicative group of F_{order}"
    ZERO_INVERSE = "Zero has no multiplicative inverse"
    ZERO_LOG = "Discrete logarithm of zero is undefined"
    BAD_ELEMENT = "Element encoding {x} is outside [0, {order})"

    # Character errors
    CONTEXT_MISMATCH = "Characters are defined over different fields"
    BAD_INDICES = "Character indices {indices} do not match the components of n={n}"
    BAD_MODULUS = "Ring modulus must be >= 2, got {n}"
    NO_QUADRATIC = "F_{order} has no quadratic character (p = 2)"
    TRIVIAL_FORBIDDEN = "Operation requires a nontrivial character"
    NOT_PRIMITIVE_CHAR = "Operation requires a primitive character (conductor {c} != {n})"

    # Sum errors
    ZERO_BETA = "beta must be nonzero"
    JACOBI_TRIVIAL = "jacobi_via_gauss requires chi, psi and chi*psi nontrivial"
    BAD_ESTIMATOR = "Unknown estimator '{estimator}'"

    # Quantum simulation errors
    DIM_MISMATCH = "State dimension {dim} does not match expected {expected}"
    NOT_NORMALIZED = "State norm {norm} differs from 1"
    BAD_WEIGHT = "Amplitude amplification weight must be in [1, {dim}], got {weight}"
    FIDELITY_LOW = "Amplitude amplification fidelity {fidelity} below threshold (weight mismatch?)"
    RESIDUAL_HIGH = "Eigenphase residual {residual} exceeds {tolerance}"
    FEW_SAMPLES = "Phase estimation needs t >= 2, got {t}"
    BAD_STRATEGY = "Unknown estimation strategy '{strategy}'"

    # Reduction errors
    NOISY_ORACLE = "Oracle epsilon {epsilon} exceeds the recovery threshold {threshold}"
    NO_NARROWING = "Oracle answers are inconsistent at k={k}; reconstruction interval is empty"
    NO_CANDIDATE = "No candidate logarithm verifies for x={x}"
    ZERO_SHIFT = "Autocorrelation shift must satisfy 0 < s < p-1, got {s}"
    WALK_BASE_FIELD = "Walks are defined over base fields F_p only (r={r})"
    BAD_ORDERING = "Unknown walk ordering '{ordering}'"

    # Config errors
    CONFIG_NOT_FOUND = "Config file not found: {path}"
    CONFIG_INVALID_JSON = "Invalid JSON in config file: {path}"
    CONFIG_VALIDATION_FAILED = "Configuration validation failed"


# Export all for convenience
__all__ = [
    'BoundsConfig',
    'ToleranceDefaults',
    'EstimatorDefaults',
    'PathConfig',
    'ErrorMessages'
]
