"""
Reductions
Classical consequences of a Gauss-sum phase oracle: discrete logarithms by
arc narrowing over a doubling sequence, and the character-sum walks with
their autocorrelation.
"""

import csv
import io
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np

from config_constants import ErrorMessages, EstimatorDefaults, ToleranceDefaults
from gausssum.errors import DomainError, ReconstructionError
from gausssum.services.ff_arith import ElementLike, FieldCtx, _check, field_tables, fld_mul, fld_pow
from gausssum.services.char_theory import MultChar, root_of_unity
from gausssum.services.gauss import TWO_PI, gauss_sum_direct_field, phase

logger = logging.getLogger(__name__)


class OracleMode(str, Enum):
    EXACT = 'exact'
    NOISY = 'noisy'


@lru_cache(maxsize=EstimatorDefaults.ORACLE_CACHE_SIZE)
def _oracle_phase(ctx: FieldCtx, beta: int) -> float:
    return phase(gauss_sum_direct_field(ctx, MultChar(ctx, 1), beta))


@dataclass
class GaussOracle:
    """
    Answers arg G(F, chi_1, beta) for the character chi_1(g^j) = zeta^j

    Noisy mode adds a uniform perturbation in [-epsilon, epsilon] drawn from a
    generator seeded once per oracle, so a sequence of queries is reproducible.
    """

    mode: OracleMode = OracleMode.EXACT
    epsilon: float = 0.0
    seed: int = EstimatorDefaults.DEFAULT_SEED
    calls: int = 0
    _rng: Optional[np.random.Generator] = field(init=False, repr=False, default=None)

    def __post_init__(self):
        self.mode = OracleMode(self.mode)
        if self.mode == OracleMode.EXACT:
            self.epsilon = 0.0
        elif self.epsilon < 0:
            raise DomainError(f"Oracle epsilon must be >= 0, got {self.epsilon}")
        self._rng = np.random.default_rng(self.seed)

    @property
    def angle_error(self) -> float:
        """Largest error of a single answer"""
        return self.epsilon if self.mode == OracleMode.NOISY else ToleranceDefaults.EXACT_ORACLE

    def true_phase(self, ctx: FieldCtx, beta: ElementLike) -> float:
        return _oracle_phase(ctx, _check(ctx, beta))

    def query(self, ctx: FieldCtx, beta: ElementLike) -> float:
        self.calls += 1
        gamma = self.true_phase(ctx, beta)
        if self.mode == OracleMode.NOISY:
            gamma += self._rng.uniform(-self.epsilon, self.epsilon)
        return gamma % TWO_PI


@dataclass(frozen=True)
class DlogRecovery:
    x: int
    ell: int
    oracle_calls: int
    mode: str

    def to_record(self) -> Dict:
        return {"x": self.x, "ell": self.ell, "oracle_calls": self.oracle_calls, "mode": self.mode}


def _wrap(turns: float) -> float:
    """Representative of turns mod 1 in [-1/2, 1/2)"""
    return (turns + 0.5) % 1.0 - 0.5


def _circular_median(angles: List[float]) -> float:
    """Angle minimizing the summed wrap distance, chosen among the samples"""
    if len(angles) == 1:
        return angles[0]
    costs = [sum(abs(_wrap((a - b) / TWO_PI)) for b in angles) for a in angles]
    return angles[int(np.argmin(costs))]


def dlog_via_gauss_oracle(ctx: FieldCtx, g: Optional[int], x: ElementLike, oracle: GaussOracle,
                          votes: int = EstimatorDefaults.DEFAULT_ORACLE_VOTES) -> DlogRecovery:
    """
    Recover l with g^l = x from Gauss-sum phases alone

    G(chi_1, x^k) = conj(chi_1(x))^k G(chi_1, 1), so the phase shift of the
    query at x^k against the reference query at 1 is -2*pi*k*l/M, M = p^r - 1.
    With u = l/M each answer pins k*u mod 1 to within delta = 2*epsilon/(2*pi);
    doubling k halves the arc of candidate u until it isolates one integer.

    Args:
        ctx: Field context
        g: Generator to take logs to (None keeps ctx.g)
        x: Nonzero element
        oracle: Phase oracle
        votes: Queries per beta in noisy mode, combined by circular median

    Returns:
        DlogRecovery with the verified logarithm
    """
    if g is not None and g != ctx.g:
        ctx = ctx.with_generator(g)
    x = _check(ctx, x)
    if x == 0:
        raise DomainError(ErrorMessages.ZERO_LOG)
    if oracle.angle_error > EstimatorDefaults.MAX_ORACLE_EPSILON:
        raise DomainError(ErrorMessages.NOISY_ORACLE.format(
            epsilon=oracle.angle_error, threshold=EstimatorDefaults.MAX_ORACLE_EPSILON))

    modulus = ctx.order - 1
    start_calls = oracle.calls
    if modulus == 1:
        return DlogRecovery(x, 0, 0, oracle.mode.value)

    repeats = votes if oracle.mode == OracleMode.NOISY else 1

    def ask(beta: int) -> float:
        return _circular_median([oracle.query(ctx, beta) for _ in range(repeats)])

    delta = 2 * oracle.angle_error / TWO_PI
    reference = ask(1)

    def turns(beta: int) -> float:
        # k*u mod 1, up to delta
        return (-(ask(beta) - reference) / TWO_PI) % 1.0

    center, half = turns(x), delta
    beta, k = x, 1
    while half >= 1 / (2 * modulus):
        beta = fld_mul(ctx, beta, beta)
        k *= 2
        # k*half <= 2*delta keeps the lift of k*(u - center) unambiguous
        d = _wrap(k * center - turns(beta))
        lo = max(-half, (-d - delta) / k)
        hi = min(half, (-d + delta) / k)
        if lo > hi:
            raise ReconstructionError(ErrorMessages.NO_NARROWING.format(k=k))
        center = (center + (lo + hi) / 2) % 1.0
        half = (hi - lo) / 2

    guess = round(center * modulus) % modulus
    for ell in (guess, (guess + 1) % modulus, (guess - 1) % modulus):
        if fld_pow(ctx, ctx.g, ell) == x:
            calls = oracle.calls - start_calls
            logger.debug(f"log_{ctx.g}({x}) = {ell} in {ctx} after {calls} oracle calls")
            return DlogRecovery(x, ell, calls, oracle.mode.value)
    raise ReconstructionError(ErrorMessages.NO_CANDIDATE.format(x=x))


# ---------------------------------------------------------------------------
# Walks

class WalkOrdering(str, Enum):
    SEQUENTIAL = 'sequential'
    GENERATOR = 'generator'


def _ordering(ordering: Union[str, WalkOrdering]) -> WalkOrdering:
    try:
        return WalkOrdering(ordering)
    except ValueError:
        raise DomainError(ErrorMessages.BAD_ORDERING.format(ordering=ordering)) from None


@dataclass(frozen=True)
class WalkTrace:
    """Partial sums R(t) of chi(x) e(beta*x) with x = t+1 (sequential) or x = g^t (generator)"""

    ordering: WalkOrdering
    steps: np.ndarray
    points: np.ndarray
    p: int
    alpha: int
    g: int
    beta: int = 1

    @property
    def endpoint(self) -> complex:
        return complex(self.points[-1])

    def to_record(self) -> Dict:
        return {
            "ordering": self.ordering.value,
            "p": self.p,
            "alpha": self.alpha,
            "g": self.g,
            "beta": self.beta,
            "steps": len(self.points),
            "endpoint_re": self.endpoint.real,
            "endpoint_im": self.endpoint.imag,
            "endpoint_norm": abs(self.endpoint)
        }


def _walk_terms(chi: MultChar, ordering: WalkOrdering, beta: int = 1) -> np.ndarray:
    ctx = chi.ctx
    if ctx.r != 1:
        raise DomainError(ErrorMessages.WALK_BASE_FIELD.format(r=ctx.r))
    p = ctx.p
    if ordering == WalkOrdering.SEQUENTIAL:
        xs = np.arange(1, p, dtype=np.int64)
    else:
        xs = field_tables(ctx).exp
    values = chi.values()[xs]
    return values * np.exp(2j * np.pi * ((beta % p) * xs % p) / p)


def walk_trace(p: int, chi: MultChar, ordering: Union[str, WalkOrdering] = WalkOrdering.SEQUENTIAL,
               beta: int = 1) -> WalkTrace:
    """Walk of p-1 unit steps ending at G(F_p, chi, beta)"""
    ordering = _ordering(ordering)
    if chi.ctx.p != p:
        raise DomainError(ErrorMessages.CONTEXT_MISMATCH)
    steps = _walk_terms(chi, ordering, beta)
    points = np.cumsum(steps)
    steps.setflags(write=False)
    points.setflags(write=False)
    return WalkTrace(ordering, steps, points, p, chi.alpha, chi.g, beta % p)


def autocorrelation(p: int, chi: MultChar, ordering: Union[str, WalkOrdering], s: int) -> complex:
    """
    Mean of term(j) * conj(term(j+s)) over a full period

    Sequential terms are indexed by j in F_p with term(0) = 0; generator terms
    are indexed by the exponent j in Z/(p-1)Z.
    """
    ordering = _ordering(ordering)
    if chi.ctx.p != p:
        raise DomainError(ErrorMessages.CONTEXT_MISMATCH)
    if not 0 < s < p - 1:
        raise DomainError(ErrorMessages.ZERO_SHIFT.format(s=s))
    terms = _walk_terms(chi, ordering)
    if ordering == WalkOrdering.SEQUENTIAL:
        terms = np.concatenate(([0j], terms))
    return complex(np.sum(terms * np.roll(terms, -s).conj()) / (p - 1))


def sequential_autocorrelation_closed(p: int, s: int) -> complex:
    """-e(-s)/(p-1)"""
    return -np.exp(-2j * np.pi * s / p) / (p - 1)


def generator_autocorrelation_readings(p: int, chi: MultChar, s: int) -> Dict:
    """
    Empirical generator-ordering autocorrelation next to both readings of
    -chi(-s)/(p-1): chi on the exponent shift (chi(g^{-s})) and chi on the
    field element -s
    """
    empirical = autocorrelation(p, chi, WalkOrdering.GENERATOR, s)
    exponent_reading = -root_of_unity(Fraction(-chi.alpha * s, p - 1)) / (p - 1)
    field_reading = -chi.evaluate((-s) % p) / (p - 1)
    tol = ToleranceDefaults.EIGEN_RESIDUAL
    return {
        "s": s,
        "empirical_re": empirical.real,
        "empirical_im": empirical.imag,
        "exponent_reading_re": exponent_reading.real,
        "exponent_reading_im": exponent_reading.imag,
        "field_reading_re": field_reading.real,
        "field_reading_im": field_reading.imag,
        "matches_exponent_reading": abs(empirical - exponent_reading) <= tol,
        "matches_field_reading": abs(empirical - field_reading) <= tol
    }


def walk_csv(trace: WalkTrace) -> str:
    """CSV text with header t,re,im and one row per partial sum"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['t', 're', 'im'])
    for t, point in enumerate(trace.points):
        writer.writerow([t, repr(float(point.real)), repr(float(point.imag))])
    return buffer.getvalue()


def export_walk(trace: WalkTrace, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', newline='') as f:
        f.write(walk_csv(trace))
    logger.info(f"Exported {trace.ordering.value} walk over F_{trace.p} to {path}")
    return path


__all__ = [
    'OracleMode',
    'GaussOracle',
    'DlogRecovery',
    'dlog_via_gauss_oracle',
    'WalkOrdering',
    'WalkTrace',
    'walk_trace',
    'autocorrelation',
    'sequential_autocorrelation_closed',
    'generator_autocorrelation_readings',
    'walk_csv',
    'export_walk'
]
