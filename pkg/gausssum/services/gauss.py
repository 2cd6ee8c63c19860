"""
Gauss Sums
Exact and closed-form Gauss and Jacobi sums over F_{p^r} and Z/nZ, and the
ring pipeline that splits G(Z/nZ, chi, beta) into prime-power factors,
settles trivial and periodic factors in closed form and evaluates the
remaining primitive factors with a pluggable phase estimator.
"""

import cmath
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from numpy.random import SeedSequence

from config_constants import BoundsConfig, ErrorMessages, EstimatorDefaults, ToleranceDefaults
from gausssum.errors import BoundExceededError, DomainError
from gausssum.services.ff_arith import ElementLike, FieldCtx, _check, field_tables
from gausssum.services.char_theory import (
    DirichletChar, MultChar, char_at_inverse, char_mul, component_chars, conductor, factor_modulus,
    primitive_reduction
)
from gausssum.services.qsim import estimate_ring_gauss_phase

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi


class GaussMethod(str, Enum):
    DIRECT = 'direct'
    QUADRATIC_CLOSED = 'quadratic_closed'
    TRIVIAL_CLOSED = 'trivial_closed'
    PERIODIC_REDUCTION = 'periodic_reduction'
    PRIMITIVE_FACTORED = 'primitive_factored'
    CRT_PRODUCT = 'crt_product'
    QUANTUM_ESTIMATED = 'quantum_estimated'


@dataclass(frozen=True)
class ComponentResult:
    """One prime-power factor G(Z/qZ, chi_i, beta*J_i) of the ring pipeline"""

    modulus: int
    beta: int
    value: complex
    method: GaussMethod
    reduced_modulus: int
    error_bound: float = 0.0

    def to_record(self) -> Dict:
        return {
            "modulus": self.modulus,
            "beta": self.beta,
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "method": self.method.value,
            "reduced_modulus": self.reduced_modulus,
            "error_bound": self.error_bound
        }


@dataclass(frozen=True)
class GaussSumResult:
    """value = norm * exp(i*gamma); gamma in [0, 2*pi), 0 with zero_sum set when the sum vanishes"""

    value: complex
    norm: float
    gamma: float
    method: GaussMethod
    error_bound: float = 0.0
    zero_sum: bool = False
    components: Tuple[ComponentResult, ...] = field(default_factory=tuple)

    @classmethod
    def from_value(cls, value: complex, method: GaussMethod, error_bound: float = 0.0,
                   components: Tuple[ComponentResult, ...] = (), order: int = 1) -> "GaussSumResult":
        """order: number of summed terms; the zero threshold scales with sqrt(order)"""
        value = complex(value)
        norm = abs(value)
        if norm < ToleranceDefaults.ZERO_SUM * math.sqrt(max(order, 1)):
            logger.warning("Sum vanishes; phase is undefined and reported as 0")
            return cls(0j, 0.0, 0.0, method, error_bound, True, tuple(components))
        return cls(value, norm, phase(value), method, error_bound, False, tuple(components))

    @property
    def gamma_turns(self) -> float:
        return self.gamma / TWO_PI

    def to_record(self) -> Dict:
        record = {
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "norm": self.norm,
            "gamma_rad": self.gamma,
            "gamma_turns": self.gamma_turns,
            "method": self.method.value,
            "error_bound": self.error_bound,
            "zero_sum": self.zero_sum
        }
        if self.components:
            record["components"] = [c.to_record() for c in self.components]
        return record


def phase(value: complex) -> float:
    """arg(value) mapped to [0, 2*pi)"""
    gamma = cmath.phase(value) % TWO_PI
    return 0.0 if gamma >= TWO_PI else gamma


def wrap_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


# ---------------------------------------------------------------------------
# Finite fields

def _check_direct_bound(order: int):
    if order > BoundsConfig.DIRECT_SUM_MAX_ORDER:
        raise BoundExceededError(ErrorMessages.ORDER_TOO_LARGE.format(
            order=order, bound=BoundsConfig.DIRECT_SUM_MAX_ORDER))


def gauss_sum_direct_field(ctx: FieldCtx, chi: MultChar, beta: ElementLike) -> complex:
    """G(F_{p^r}, chi, beta) = sum_x chi(x) zeta_p^{Tr(beta*x)} by direct summation"""
    beta = _check(ctx, beta)
    _check_direct_bound(ctx.order)
    tables = field_tables(ctx)
    n = ctx.order - 1
    j = np.arange(n, dtype=np.int64)
    char_turns = (chi.alpha * j) % n / n
    if beta == 0:
        add_turns = np.zeros(n)
    else:
        add_turns = tables.trace[tables.exp[(tables.log[beta] + j) % n]] / ctx.p
    return complex(np.sum(np.exp(2j * np.pi * (char_turns + add_turns))))


def beta_factor(ctx: FieldCtx, chi: MultChar, beta: ElementLike, delta: ElementLike = 1) -> complex:
    """chi(beta^{-1}), so that G(chi, beta*delta) = chi(beta^{-1}) * G(chi, delta)"""
    if _check(ctx, beta) == 0:
        raise DomainError(ErrorMessages.ZERO_BETA)
    _check(ctx, delta)
    return char_at_inverse(chi, beta)


def quadratic_gauss_closed(p: int, r: int) -> complex:
    """G(F_{p^r}, chi_quadratic, 1): -(-1)^r sqrt(p^r) if p = 1 mod 4, -(-i)^r sqrt(p^r) if p = 3 mod 4"""
    if p == 2:
        raise DomainError(ErrorMessages.NO_QUADRATIC.format(order=p ** r))
    root = math.sqrt(p ** r)
    if p % 4 == 1:
        return complex(-((-1) ** r) * root)
    return -((-1j) ** r) * root


def field_gauss(ctx: FieldCtx, chi: MultChar, beta: ElementLike) -> GaussSumResult:
    """G(F_{p^r}, chi, beta) with the cheapest exact method available"""
    beta = _check(ctx, beta)
    if chi.is_trivial:
        value = complex(ctx.order - 1) if beta == 0 else complex(-1)
        return GaussSumResult.from_value(value, GaussMethod.TRIVIAL_CLOSED)
    if beta == 0:
        return GaussSumResult.from_value(0j, GaussMethod.TRIVIAL_CLOSED)
    if chi.is_quadratic:
        value = beta_factor(ctx, chi, beta) * quadratic_gauss_closed(ctx.p, ctx.r)
        return GaussSumResult.from_value(value, GaussMethod.QUADRATIC_CLOSED)
    return GaussSumResult.from_value(gauss_sum_direct_field(ctx, chi, beta), GaussMethod.DIRECT,
                                     order=ctx.order)


def jacobi_direct(ctx: FieldCtx, chi: MultChar, psi: MultChar) -> complex:
    """J(chi, psi) = sum_x chi(x) psi(1 - x)"""
    if chi.ctx != psi.ctx:
        raise DomainError(ErrorMessages.CONTEXT_MISMATCH)
    _check_direct_bound(ctx.order)
    one_minus = field_tables(ctx).one_minus
    return complex(np.sum(chi.values() * psi.values()[one_minus]))


def jacobi_via_gauss(ctx: FieldCtx, chi: MultChar, psi: MultChar) -> complex:
    """J(chi, psi) = G(chi, 1) G(psi, 1) / G(chi*psi, 1) for chi, psi, chi*psi nontrivial"""
    prod = char_mul(chi, psi)
    if chi.is_trivial or psi.is_trivial or prod.is_trivial:
        raise DomainError(ErrorMessages.JACOBI_TRIVIAL)
    g_chi = gauss_sum_direct_field(ctx, chi, 1)
    g_psi = gauss_sum_direct_field(ctx, psi, 1)
    return g_chi * g_psi / gauss_sum_direct_field(ctx, prod, 1)


@dataclass(frozen=True)
class JacobiSumResult:
    direct: complex
    via_gauss: Optional[complex]

    @property
    def norm(self) -> float:
        return abs(self.direct)

    @property
    def discrepancy(self) -> Optional[float]:
        return None if self.via_gauss is None else abs(self.direct - self.via_gauss)

    def to_record(self) -> Dict:
        return {
            "value_re": self.direct.real,
            "value_im": self.direct.imag,
            "norm": self.norm,
            "via_gauss_re": None if self.via_gauss is None else self.via_gauss.real,
            "via_gauss_im": None if self.via_gauss is None else self.via_gauss.imag,
            "discrepancy": self.discrepancy
        }


def jacobi_sum(ctx: FieldCtx, chi: MultChar, psi: MultChar) -> JacobiSumResult:
    """Direct Jacobi sum, cross-checked through Gauss sums when chi, psi and chi*psi are nontrivial"""
    direct = jacobi_direct(ctx, chi, psi)
    try:
        via = jacobi_via_gauss(ctx, chi, psi)
    except DomainError:
        logger.debug("Gauss-sum route skipped: a trivial character is involved")
        via = None
    return JacobiSumResult(direct, via)


# ---------------------------------------------------------------------------
# Rings

def gauss_sum_direct_ring(n: int, chi: DirichletChar, beta: int) -> complex:
    """G(Z/nZ, chi, beta) = sum_x chi(x) zeta_n^{beta*x}, the beta-th Fourier coefficient of chi"""
    if n != chi.n:
        raise DomainError(ErrorMessages.DIM_MISMATCH.format(dim=chi.n, expected=n))
    _check_direct_bound(n)
    num = chi.numerators()
    x = np.arange(n, dtype=np.int64)
    turns = num / chi.denominator + (beta % n) * x % n / n
    terms = np.exp(2j * np.pi * turns)
    terms[num < 0] = 0
    return complex(np.sum(terms))


def crt_coefficients(n: int) -> List[int]:
    """J_i with J_i * n / q_i = 1 mod q_i for each prime-power component q_i"""
    out = []
    for p, e in factor_modulus(n):
        q = p ** e
        out.append(pow(n // q, -1, q))
    return out


def trivial_ring_closed(p: int, r: int, beta: int) -> int:
    """G(Z/p^rZ, chi0, beta) by the p-adic valuation j of beta"""
    q = p ** r
    beta %= q
    j = r if beta == 0 else _valuation(p, beta)
    if j >= r:
        return p ** (r - 1) * (p - 1)
    if j == r - 1:
        return -p ** (r - 1)
    return 0


def _valuation(p: int, x: int) -> int:
    j = 0
    while x % p == 0:
        x //= p
        j += 1
    return j


class _ComponentEvaluator:
    """Evaluates one prime-power factor for the ring pipeline"""

    def __init__(self, estimator: str, samples: int, strategy: str):
        self.estimator = estimator
        self.samples = samples
        self.strategy = strategy

    def __call__(self, args: Tuple[DirichletChar, int, int]) -> ComponentResult:
        chi, beta, seed = args
        comp = chi.components[0]
        q, p, r = chi.n, comp.prime, comp.exponent
        beta %= q

        if chi.is_trivial:
            value = complex(trivial_ring_closed(p, r, beta))
            return ComponentResult(q, beta, value, GaussMethod.TRIVIAL_CLOSED, q)

        c = conductor(chi)
        factor = 1
        method = GaussMethod.PRIMITIVE_FACTORED
        prim, b = chi, beta
        if c < q:
            # periodic: units mod q cover units mod c exactly p^s times
            ps = q // c
            if beta % ps != 0:
                return ComponentResult(q, beta, 0j, GaussMethod.PERIODIC_REDUCTION, c)
            factor, prim, b = ps, primitive_reduction(chi), beta // ps
            method = GaussMethod.PERIODIC_REDUCTION

        if math.gcd(b, c) != 1:
            return ComponentResult(q, beta, 0j, method, c)

        unit_value, bound = self._primitive_at_one(prim, seed)
        value = factor * prim.evaluate(b).conjugate() * unit_value
        if self.estimator == 'quantum':
            method = GaussMethod.QUANTUM_ESTIMATED
        return ComponentResult(q, beta, value, method, c, bound)

    def _primitive_at_one(self, prim: DirichletChar, seed: int) -> Tuple[complex, float]:
        if self.estimator == 'exact':
            return gauss_sum_direct_ring(prim.n, prim, 1), 0.0
        estimate = estimate_ring_gauss_phase(prim, self.samples, self.strategy, seed)
        bound = EstimatorDefaults.ERROR_BOUND_SIGMAS * math.sqrt(2.0 / self.samples)
        return math.sqrt(prim.n) * cmath.exp(1j * estimate.gamma_hat), bound


def ring_gauss_pipeline(n: int, chi: DirichletChar, beta: int, estimator: str = 'exact',
                        samples: Optional[int] = None, strategy: Optional[str] = None,
                        seed: int = EstimatorDefaults.DEFAULT_SEED,
                        parallel: bool = False) -> GaussSumResult:
    """
    G(Z/nZ, chi, beta) through the CRT pipeline

    Args:
        n: Modulus
        chi: Dirichlet character mod n
        beta: Additive character index
        estimator: 'exact' (direct sums for the primitive base values) or
            'quantum' (simulated eigenphase estimation, norm sqrt(modulus))
        samples: Sample budget per primitive component (quantum only)
        strategy: Phase estimation strategy (quantum only)
        seed: Root seed; each component gets its own spawned stream
        parallel: Evaluate components in a thread pool

    Returns:
        GaussSumResult with per-component breakdown
    """
    if chi.n != n:
        raise DomainError(ErrorMessages.DIM_MISMATCH.format(dim=chi.n, expected=n))
    if estimator not in ('exact', 'quantum'):
        raise DomainError(ErrorMessages.BAD_ESTIMATOR.format(estimator=estimator))
    samples = EstimatorDefaults.DEFAULT_SAMPLES if samples is None else samples
    strategy = EstimatorDefaults.DEFAULT_STRATEGY if strategy is None else strategy

    parts = component_chars(chi)
    coefficients = crt_coefficients(n)
    seeds = [int(s.generate_state(1)[0]) for s in SeedSequence(seed).spawn(len(parts))]
    jobs = [(part, beta * j, s) for part, j, s in zip(parts, coefficients, seeds)]
    evaluate = _ComponentEvaluator(estimator, samples, strategy)

    if parallel and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
            results = list(pool.map(evaluate, jobs))
    else:
        results = [evaluate(job) for job in jobs]

    value = 1 + 0j
    for res in results:
        value *= res.value
    bound = sum(res.error_bound for res in results)
    if estimator == 'quantum' and any(r.method == GaussMethod.QUANTUM_ESTIMATED for r in results):
        method = GaussMethod.QUANTUM_ESTIMATED
    elif len(results) > 1:
        method = GaussMethod.CRT_PRODUCT
    else:
        method = results[0].method

    logger.info(f"Ring pipeline n={n}, beta={beta}: {len(results)} component(s), method={method.value}")
    return GaussSumResult.from_value(value, method, bound, tuple(results), order=n)


__all__ = [
    'GaussMethod',
    'ComponentResult',
    'GaussSumResult',
    'phase',
    'wrap_distance',
    'gauss_sum_direct_field',
    'beta_factor',
    'quadratic_gauss_closed',
    'field_gauss',
    'jacobi_direct',
    'jacobi_via_gauss',
    'JacobiSumResult',
    'jacobi_sum',
    'gauss_sum_direct_ring',
    'crt_coefficients',
    'trivial_ring_closed',
    'ring_gauss_pipeline'
]
