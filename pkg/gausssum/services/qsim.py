"""
Quantum Simulation
Dense statevector simulation of the subroutines behind the Gauss-sum phase
estimator: QFTs over F_{p^r} and Z/nZ, phase kickback, exact amplitude
amplification, character-state preparation, the eigenphase transform and
sampling-based phase estimation.

Amplitudes are indexed by canonical element encodings, so index 0 is the
field (or ring) zero.
"""

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional, Protocol, Sequence, Tuple, Union

import numpy as np

from config_constants import BoundsConfig, ErrorMessages, EstimatorDefaults, ToleranceDefaults
from gausssum.errors import BoundExceededError, DomainError, EstimatorError
from gausssum.services.ff_arith import ElementLike, FieldCtx, _check, field_tables, trace, fld_mul
from gausssum.services.char_theory import DirichletChar, MultChar, conductor

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi

ElementMap = Union[Sequence[int], np.ndarray, Mapping[int, int], Callable[[int], int]]


@dataclass(frozen=True)
class StateVector:
    """Unit vector of complex amplitudes, one per basis index"""

    amps: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if amps.size > BoundsConfig.STATEVECTOR_MAX_DIM:
            raise BoundExceededError(ErrorMessages.ORDER_TOO_LARGE.format(
                order=amps.size, bound=BoundsConfig.STATEVECTOR_MAX_DIM))
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > ToleranceDefaults.NORM:
            raise DomainError(ErrorMessages.NOT_NORMALIZED.format(norm=norm))
        amps.setflags(write=False)
        object.__setattr__(self, 'amps', amps)

    @classmethod
    def from_unnormalized(cls, values) -> "StateVector":
        values = np.asarray(values, dtype=np.complex128)
        norm = np.linalg.norm(values)
        if norm == 0:
            raise DomainError(ErrorMessages.NOT_NORMALIZED.format(norm=0.0))
        return cls(values / norm)

    @property
    def dim(self) -> int:
        return self.amps.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def inner(self, other: "StateVector") -> complex:
        """<self|other>"""
        _require_dim(other, self.dim)
        return complex(np.vdot(self.amps, other.amps))

    def fidelity(self, other: "StateVector") -> float:
        return abs(self.inner(other)) ** 2

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def to_rows(self) -> List[Tuple[int, float, float]]:
        return [(i, float(a.real), float(a.imag)) for i, a in enumerate(self.amps)]

    def to_csv(self, path: Union[str, Path]) -> Path:
        """Dump as (index, re, im) rows"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(['index', 're', 'im'])
            for i, re, im in self.to_rows():
                writer.writerow([i, repr(re), repr(im)])
        logger.debug(f"Wrote {self.dim}-dimensional state to {path}")
        return path


def _require_dim(state: StateVector, expected: int):
    if state.dim != expected:
        raise DomainError(ErrorMessages.DIM_MISMATCH.format(dim=state.dim, expected=expected))


def _check_dim_bound(dim: int):
    if dim > BoundsConfig.STATEVECTOR_MAX_DIM:
        raise BoundExceededError(ErrorMessages.ORDER_TOO_LARGE.format(
            order=dim, bound=BoundsConfig.STATEVECTOR_MAX_DIM))


def basis_state(dim: int, index: int) -> StateVector:
    _check_dim_bound(dim)
    amps = np.zeros(dim, dtype=np.complex128)
    amps[index] = 1
    return StateVector(amps)


def uniform_state(dim: int) -> StateVector:
    _check_dim_bound(dim)
    return StateVector(np.full(dim, 1 / math.sqrt(dim), dtype=np.complex128))


def char_state(chi: MultChar) -> StateVector:
    """|chi> = sum_x chi(x)|x> / sqrt(p^r - 1), built directly from the character table"""
    _check_dim_bound(chi.ctx.order)
    return StateVector.from_unnormalized(chi.values())


def dirichlet_state(chi: DirichletChar) -> StateVector:
    _check_dim_bound(chi.n)
    return StateVector.from_unnormalized(chi.values())


def _as_table(f: ElementMap, dim: int) -> np.ndarray:
    if callable(f):
        return np.fromiter((f(x) for x in range(dim)), dtype=np.int64, count=dim)
    if isinstance(f, Mapping):
        return np.array([f.get(x, 0) for x in range(dim)], dtype=np.int64)
    table = np.asarray(f, dtype=np.int64)
    if table.shape != (dim,):
        raise DomainError(ErrorMessages.DIM_MISMATCH.format(dim=table.size, expected=dim))
    return table


# ---------------------------------------------------------------------------
# Fourier transforms

def trace_form_matrix(ctx: FieldCtx, beta: ElementLike) -> np.ndarray:
    """B[i][j] = Tr(beta * t^i * t^j), so Tr(beta*x*y) = x^T B y on coefficient vectors"""
    beta = _check(ctx, beta)
    basis = [ctx.p ** i for i in range(ctx.r)]
    return np.array([[trace(ctx, fld_mul(ctx, beta, fld_mul(ctx, a, b))) for b in basis]
                     for a in basis], dtype=np.int64)


def _qft_field_fft(state: StateVector, ctx: FieldCtx, beta: int) -> np.ndarray:
    # x -> z = x^T B is a bijection when beta != 0; after it the kernel is a
    # product of r independent p-point DFTs
    p, r, order = ctx.p, ctx.r, ctx.order
    tables = field_tables(ctx)
    powers = p ** np.arange(r, dtype=np.int64)
    z = ((tables.digits @ trace_form_matrix(ctx, beta)) % p) @ powers
    moved = np.zeros(order, dtype=np.complex128)
    moved[z] = state.amps
    out = np.fft.ifftn(moved.reshape((p,) * r)) * math.sqrt(order)
    return out.reshape(-1)


def _qft_field_dense(state: StateVector, ctx: FieldCtx, beta: int) -> np.ndarray:
    order = ctx.order
    if order > BoundsConfig.DENSE_KERNEL_MAX_DIM:
        raise BoundExceededError(ErrorMessages.ORDER_TOO_LARGE.format(
            order=order, bound=BoundsConfig.DENSE_KERNEL_MAX_DIM))
    tables = field_tables(ctx)
    log = tables.log
    exps = (log[:, None] + log[None, :] + log[beta]) % (order - 1)
    tr = tables.trace[tables.exp[exps]]
    tr[0, :] = 0
    tr[:, 0] = 0
    kernel = np.exp(2j * np.pi * tr / ctx.p) / math.sqrt(order)
    return kernel @ state.amps


def qft_field(state: StateVector, ctx: FieldCtx, beta: ElementLike = 1,
              method: str = 'fft') -> StateVector:
    """
    F_beta|x> = (1/sqrt(p^r)) sum_y zeta_p^{Tr(beta*x*y)} |y>

    Args:
        state: State of dimension p^r
        ctx: Field context
        beta: Nonzero field element
        method: 'fft' (basis change plus r-dimensional FFT) or 'dense' (explicit kernel)

    Returns:
        Transformed state
    """
    _require_dim(state, ctx.order)
    beta = _check(ctx, beta)
    if beta == 0:
        raise DomainError(ErrorMessages.ZERO_BETA)
    if method == 'fft':
        out = _qft_field_fft(state, ctx, beta)
    elif method == 'dense':
        out = _qft_field_dense(state, ctx, beta)
    else:
        raise DomainError(f"Unknown QFT method '{method}'")
    return StateVector(out)


def qft_ring(state: StateVector, n: int) -> StateVector:
    """Standard DFT over Z/nZ: |x> -> (1/sqrt(n)) sum_y zeta_n^{xy} |y>"""
    _require_dim(state, n)
    return StateVector(np.fft.ifft(state.amps) * math.sqrt(n))


# ---------------------------------------------------------------------------
# Phase kickback

def fourier_ancilla(n: int) -> np.ndarray:
    """QFT_n|1> = (1/sqrt(n)) sum_k zeta_n^k |k>, an eigenvector of every shift"""
    return np.exp(2j * np.pi * np.arange(n) / n) / math.sqrt(n)


def phase_kickback(state: StateVector, f: ElementMap, n: int, mode: str = 'amplitude') -> StateVector:
    """
    |x> -> zeta_n^{f(x)} |x>

    mode='amplitude' multiplies amplitudes directly. mode='register' keeps an
    n-dimensional ancilla in QFT_n|1>, subtracts f(x) mod n from it and reads
    the phase back off the unchanged ancilla (n <= KICKBACK_REGISTER_MAX).
    """
    table = _as_table(f, state.dim) % n
    if mode == 'amplitude':
        return StateVector(state.amps * np.exp(2j * np.pi * table / n))
    if mode != 'register':
        raise DomainError(f"Unknown kickback mode '{mode}'")
    if n > BoundsConfig.KICKBACK_REGISTER_MAX:
        raise BoundExceededError(ErrorMessages.ORDER_TOO_LARGE.format(
            order=n, bound=BoundsConfig.KICKBACK_REGISTER_MAX))

    ancilla = fourier_ancilla(n)
    joint = np.outer(state.amps, ancilla)
    # |x>|k> -> |x>|k - f(x)>
    shifted = (np.arange(n)[None, :] + table[:, None]) % n
    joint = joint[np.arange(state.dim)[:, None], shifted]

    system = joint @ ancilla.conj()
    residual = float(np.linalg.norm(joint - np.outer(system, ancilla)))
    if residual > ToleranceDefaults.EIGEN_RESIDUAL:
        raise EstimatorError(ErrorMessages.RESIDUAL_HIGH.format(
            residual=residual, tolerance=ToleranceDefaults.EIGEN_RESIDUAL))
    return StateVector(system)


# ---------------------------------------------------------------------------
# Amplitude amplification

def grover_schedule(dim: int, weight: int) -> Tuple[int, float]:
    """
    Iteration count and reflection phase for exact amplification

    The minimal J with sin(pi/(4J+2)) <= sin(theta), theta = asin(sqrt(weight/dim)),
    and the phase phi with sin(pi/(4J+2)) = sin(theta) * sin(phi/2).
    """
    if not 1 <= weight <= dim:
        raise DomainError(ErrorMessages.BAD_WEIGHT.format(dim=dim, weight=weight))
    if weight == dim:
        return 0, 0.0
    theta = math.asin(math.sqrt(weight / dim))
    iterations = max(1, math.ceil(math.pi / (4 * theta) - 0.5 - 1e-9))
    ratio = math.sin(math.pi / (4 * iterations + 2)) / math.sin(theta)
    return iterations, 2 * math.asin(min(1.0, ratio))


def amplitude_amplify(dim: int, indicator: ElementMap, weight: int) -> StateVector:
    """
    Exact preparation of the uniform superposition over {x : indicator(x) = 1}

    Runs phase-adjusted Grover iterations G = -I_s(phi) I_marked(phi) from the
    uniform state, with the schedule derived from the trusted weight. A wrong
    weight shows up as a fidelity shortfall.
    """
    _check_dim_bound(dim)
    marked = _as_table(indicator, dim) != 0
    iterations, phi = grover_schedule(dim, weight)
    target = marked / math.sqrt(max(int(marked.sum()), 1))

    start = np.full(dim, 1 / math.sqrt(dim), dtype=np.complex128)
    amps = start.copy()
    rotate = np.exp(1j * phi) - 1
    for _ in range(iterations):
        amps = amps + rotate * marked * amps
        amps = amps + rotate * start * np.vdot(start, amps)
        amps = -amps

    overlap = complex(np.vdot(target, amps))
    fidelity = abs(overlap) ** 2
    if fidelity < 1 - ToleranceDefaults.FIDELITY:
        raise EstimatorError(ErrorMessages.FIDELITY_LOW.format(fidelity=fidelity))
    logger.debug(f"Amplified weight {weight}/{dim} in {iterations} iteration(s), phi={phi:.6f}")
    # drop the global phase
    return StateVector(amps * (abs(overlap) / overlap))


# ---------------------------------------------------------------------------
# Character states and eigenphases

def prepare_char_state(chi: MultChar, kickback_mode: str = 'amplitude') -> StateVector:
    """Amplify to |F*>, then kick back the phase zeta^{alpha*log_g(x)}"""
    order = chi.ctx.order
    _check_dim_bound(order)
    units = np.arange(order) != 0
    state = amplitude_amplify(order, units, order - 1)
    f = np.maximum(chi.numerators(), 0)
    return phase_kickback(state, f, order - 1, mode=kickback_mode)


def prepare_dirichlet_state(chi: DirichletChar, kickback_mode: str = 'amplitude') -> StateVector:
    n = chi.n
    _check_dim_bound(n)
    num = chi.numerators()
    units = num >= 0
    state = amplitude_amplify(n, units, int(units.sum()))
    return phase_kickback(state, np.maximum(num, 0), chi.denominator, mode=kickback_mode)


def _eigen_scalar(chi_state: StateVector, out: StateVector) -> complex:
    scalar = chi_state.inner(out)
    residual = float(np.linalg.norm(out.amps - scalar * chi_state.amps))
    if residual > ToleranceDefaults.EIGEN_RESIDUAL:
        raise EstimatorError(ErrorMessages.RESIDUAL_HIGH.format(
            residual=residual, tolerance=ToleranceDefaults.EIGEN_RESIDUAL))
    return scalar


def eigen_transform_field(chi: MultChar, beta: ElementLike = 1,
                          qft_method: str = 'fft') -> Tuple[StateVector, StateVector]:
    """(|chi>, chi^2 . F_beta |chi>); the second is G(chi, beta)/sqrt(p^r) times the first"""
    if chi.is_trivial:
        raise DomainError(ErrorMessages.TRIVIAL_FORBIDDEN)
    ctx = chi.ctx
    chi_state = prepare_char_state(chi)
    transformed = qft_field(chi_state, ctx, beta, method=qft_method)
    # the phase change acts on the unit support only; amplitude at 0 is already 0
    squared = np.exp(2j * np.pi * 2 * chi.numerators() / chi.group_order)
    squared[0] = 1
    return chi_state, StateVector(transformed.amps * squared)


def eigenphase_gauss_field(chi: MultChar, beta: ElementLike = 1, qft_method: str = 'fft') -> float:
    """Phase gamma in [0, 2*pi) of G(F_{p^r}, chi, beta) = sqrt(p^r) e^{i gamma}"""
    chi_state, out = eigen_transform_field(chi, beta, qft_method)
    return float(np.angle(_eigen_scalar(chi_state, out)) % TWO_PI)


def eigen_transform_ring(chi: DirichletChar) -> Tuple[StateVector, StateVector]:
    """(|chi>, chi^2 . QFT_n |chi>) for a primitive character mod n"""
    c = conductor(chi)
    if c != chi.n:
        raise DomainError(ErrorMessages.NOT_PRIMITIVE_CHAR.format(c=c, n=chi.n))
    chi_state = prepare_dirichlet_state(chi)
    transformed = qft_ring(chi_state, chi.n)
    num = chi.numerators()
    squared = np.exp(2j * np.pi * 2 * num / chi.denominator)
    squared[num < 0] = 1
    return chi_state, StateVector(transformed.amps * squared)


def eigenphase_gauss_ring(chi: DirichletChar) -> float:
    """Phase of G(Z/nZ, chi, 1) = sqrt(n) e^{i gamma} for primitive chi"""
    chi_state, out = eigen_transform_ring(chi)
    return float(np.angle(_eigen_scalar(chi_state, out)) % TWO_PI)


# ---------------------------------------------------------------------------
# Phase estimation

def measurement_probability(gamma: float, phi: float) -> float:
    """P(m_phi) for the relative-phase qubit; the orthogonal outcome takes the rest"""
    return min(1.0, max(0.0, 0.5 + 0.5 * math.cos(gamma - phi)))


def sample_phase_measurement(gamma: float, phi: float, rng: np.random.Generator) -> int:
    """1 for outcome m_phi, 0 for the orthogonal outcome"""
    return int(rng.random() < measurement_probability(gamma, phi))


class PhaseSource(Protocol):
    def measure(self, phi: float, shots: int, rng: np.random.Generator) -> int:
        """Number of m_phi outcomes in `shots` fresh samples"""


@dataclass(frozen=True)
class RelativePhaseSource:
    """Copies of (|0> + e^{i gamma}|1>)/sqrt(2) for a known gamma"""

    gamma: float

    def measure(self, phi: float, shots: int, rng: np.random.Generator) -> int:
        return int(rng.binomial(shots, measurement_probability(self.gamma, phi)))


@dataclass(frozen=True)
class StaleComponentSource:
    """
    Copies of (|stale> + U|chi>)/sqrt(2), with |stale> one extra basis
    dimension orthogonal to the system

    Measuring along (|stale> + e^{i phi}|chi>)/sqrt(2) succeeds with
    probability 1/2 + 1/2 cos(gamma - phi) when U|chi> = e^{i gamma}|chi>.
    """

    reference: StateVector
    transformed: StateVector

    def _embedded(self, amps: np.ndarray, stale: complex) -> np.ndarray:
        return np.append(amps, stale)

    def probability(self, phi: float) -> float:
        prepared = self._embedded(self.transformed.amps, 1) / math.sqrt(2)
        basis = self._embedded(np.exp(1j * phi) * self.reference.amps, 1) / math.sqrt(2)
        return min(1.0, abs(np.vdot(basis, prepared)) ** 2)

    def measure(self, phi: float, shots: int, rng: np.random.Generator) -> int:
        return int(rng.binomial(shots, self.probability(phi)))


@dataclass(frozen=True)
class BasisTally:
    phi: float
    shots: int
    hits: int

    def to_record(self) -> Dict:
        return {"phi": self.phi, "shots": self.shots, "hits": self.hits}


@dataclass(frozen=True)
class PhaseEstimate:
    gamma_hat: float
    samples_used: int
    per_basis_counts: Tuple[BasisTally, ...]
    seed: int
    strategy: str

    @property
    def error_bound(self) -> float:
        return EstimatorDefaults.ERROR_BOUND_SIGMAS * math.sqrt(2.0 / self.samples_used)

    def to_record(self) -> Dict:
        return {
            "gamma_hat": self.gamma_hat,
            "gamma_hat_turns": self.gamma_hat / TWO_PI,
            "samples_used": self.samples_used,
            "per_basis_counts": [b.to_record() for b in self.per_basis_counts],
            "seed": self.seed,
            "strategy": self.strategy,
            "error_bound": self.error_bound
        }


def _two_basis(source: PhaseSource, t: int, rng: np.random.Generator,
               offset: float = 0.0) -> Tuple[float, List[BasisTally]]:
    shots_cos = t // 2
    shots_sin = t - shots_cos
    phi_cos, phi_sin = offset % TWO_PI, (offset + math.pi / 2) % TWO_PI
    hits_cos = source.measure(phi_cos, shots_cos, rng)
    hits_sin = source.measure(phi_sin, shots_sin, rng)
    cos_est = 2 * hits_cos / shots_cos - 1
    sin_est = 2 * hits_sin / shots_sin - 1
    gamma = (offset + math.atan2(sin_est, cos_est)) % TWO_PI
    return gamma, [BasisTally(phi_cos, shots_cos, hits_cos), BasisTally(phi_sin, shots_sin, hits_sin)]


def _adaptive(source: PhaseSource, t: int, rng: np.random.Generator) -> Tuple[float, List[BasisTally]]:
    coarse = max(2, int(t * EstimatorDefaults.ADAPTIVE_COARSE_FRACTION))
    gamma, tallies = _two_basis(source, coarse, rng)
    remaining = t - coarse
    rounds = min(EstimatorDefaults.ADAPTIVE_ROUNDS, remaining)
    for i in range(rounds):
        shots = remaining // (rounds - i)
        remaining -= shots
        # P(m_phi) at phi = gamma_hat + pi/2 is 1/2 + 1/2 sin(gamma - gamma_hat)
        phi = (gamma + math.pi / 2) % TWO_PI
        hits = source.measure(phi, shots, rng)
        delta = math.asin(min(1.0, max(-1.0, 2 * hits / shots - 1)))
        gamma = (gamma + delta) % TWO_PI
        tallies.append(BasisTally(phi, shots, hits))
    return gamma, tallies


def estimate_phase(source: PhaseSource, t: int, strategy: Optional[str] = None,
                   seed: int = EstimatorDefaults.DEFAULT_SEED) -> PhaseEstimate:
    """
    Estimate the relative phase of a source from t measurement samples

    Args:
        source: Anything with measure(phi, shots, rng)
        t: Sample budget (>= 2)
        strategy: 'two-basis' (cos/sin halves) or 'adaptive' (recenter on the running estimate)
        seed: Seed for the numpy Generator driving every sample

    Returns:
        PhaseEstimate, bit-reproducible for a given (source, t, strategy, seed)
    """
    strategy = EstimatorDefaults.DEFAULT_STRATEGY if strategy is None else strategy
    if t < 2:
        raise DomainError(ErrorMessages.FEW_SAMPLES.format(t=t))
    if strategy not in EstimatorDefaults.STRATEGIES:
        raise DomainError(ErrorMessages.BAD_STRATEGY.format(strategy=strategy))
    rng = np.random.default_rng(seed)
    if strategy == 'two-basis':
        gamma, tallies = _two_basis(source, t, rng)
    else:
        gamma, tallies = _adaptive(source, t, rng)
    gamma = 0.0 if gamma >= TWO_PI else gamma
    return PhaseEstimate(gamma, sum(b.shots for b in tallies), tuple(tallies), seed, strategy)


def estimate_gauss_phase(chi: MultChar, beta: ElementLike = 1,
                         t: int = EstimatorDefaults.DEFAULT_SAMPLES, strategy: Optional[str] = None,
                         seed: int = EstimatorDefaults.DEFAULT_SEED) -> PhaseEstimate:
    """Sampled estimate of arg G(F_{p^r}, chi, beta) through the simulated eigenvector"""
    chi_state, out = eigen_transform_field(chi, beta)
    _eigen_scalar(chi_state, out)
    estimate = estimate_phase(StaleComponentSource(chi_state, out), t, strategy, seed)
    logger.info(f"Estimated phase for {chi}, beta={int(beta)}: {estimate.gamma_hat:.6f} rad from {t} samples")
    return estimate


def estimate_ring_gauss_phase(chi: DirichletChar, t: int = EstimatorDefaults.DEFAULT_SAMPLES,
                              strategy: Optional[str] = None,
                              seed: int = EstimatorDefaults.DEFAULT_SEED) -> PhaseEstimate:
    """Sampled estimate of arg G(Z/nZ, chi, 1) for primitive chi"""
    chi_state, out = eigen_transform_ring(chi)
    _eigen_scalar(chi_state, out)
    return estimate_phase(StaleComponentSource(chi_state, out), t, strategy, seed)


__all__ = [
    'StateVector',
    'basis_state',
    'uniform_state',
    'char_state',
    'dirichlet_state',
    'trace_form_matrix',
    'qft_field',
    'qft_ring',
    'fourier_ancilla',
    'phase_kickback',
    'grover_schedule',
    'amplitude_amplify',
    'prepare_char_state',
    'prepare_dirichlet_state',
    'eigen_transform_field',
    'eigenphase_gauss_field',
    'eigen_transform_ring',
    'eigenphase_gauss_ring',
    'measurement_probability',
    'sample_phase_measurement',
    'PhaseSource',
    'RelativePhaseSource',
    'StaleComponentSource',
    'BasisTally',
    'PhaseEstimate',
    'estimate_phase',
    'estimate_gauss_phase',
    'estimate_ring_gauss_phase'
]
