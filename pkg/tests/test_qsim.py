import csv
import math

import numpy as np
import pytest
from sympy import primerange

from gausssum.errors import BoundExceededError, DomainError, EstimatorError
from gausssum.services.ff_arith import make_field
from gausssum.services.char_theory import (
    MultChar, dirichlet_characters, field_characters, is_primitive, make_dirichlet_char, quadratic_char
)
from gausssum.services.gauss import gauss_sum_direct_field, gauss_sum_direct_ring, phase, wrap_distance
from gausssum.services.qsim import (
    RelativePhaseSource, StaleComponentSource, StateVector, amplitude_amplify, basis_state, char_state,
    dirichlet_state, eigen_transform_field, eigenphase_gauss_field, eigenphase_gauss_ring,
    estimate_gauss_phase, estimate_phase, estimate_ring_gauss_phase, grover_schedule,
    measurement_probability, phase_kickback, prepare_char_state, prepare_dirichlet_state, qft_field,
    qft_ring, sample_phase_measurement, uniform_state
)

TWO_PI = 2 * math.pi
TOL = 1e-9


def _random_state(dim, rng):
    return StateVector.from_unnormalized(rng.normal(size=dim) + 1j * rng.normal(size=dim))


# ---------------------------------------------------------------------------
# StateVector

def test_state_must_be_normalized():
    with pytest.raises(DomainError):
        StateVector(np.array([1.0, 1.0]))
    with pytest.raises(DomainError):
        StateVector.from_unnormalized(np.zeros(3))


def test_state_dimension_bound():
    with pytest.raises(BoundExceededError):
        StateVector(np.zeros(2 ** 14 + 1))
    with pytest.raises(BoundExceededError):
        uniform_state(2 ** 15)


def test_state_is_read_only():
    state = basis_state(3, 1)
    with pytest.raises(ValueError):
        state.amps[0] = 1


def test_state_csv(tmp_path):
    state = StateVector(np.array([0.6, 0.8j]))
    path = state.to_csv(tmp_path / "out" / "state.csv")
    with open(path, newline='') as f:
        rows = list(csv.reader(f))
    assert rows[0] == ['index', 're', 'im']
    assert len(rows) == 3
    assert float(rows[2][2]) == 0.8
    assert float(rows[1][1]) == 0.6


# ---------------------------------------------------------------------------
# Fourier transforms

def test_qft_of_zero_is_uniform(f5):
    out = qft_field(basis_state(5, 0), f5)
    assert np.allclose(out.amps, uniform_state(5).amps, atol=1e-12)


def test_qft_of_one_over_f5(f5):
    out = qft_field(basis_state(5, 1), f5)
    expected = np.exp(2j * np.pi * np.arange(5) / 5) / math.sqrt(5)
    assert np.allclose(out.amps, expected, atol=1e-12)


@pytest.mark.parametrize('p, r, beta', [(3, 2, 1), (3, 2, 5), (2, 3, 6), (3, 3, 14), (7, 1, 3)])
def test_fft_and_dense_kernels_agree(p, r, beta, rng):
    ctx = make_field(p, r)
    state = _random_state(ctx.order, rng)
    fast = qft_field(state, ctx, beta, method='fft')
    dense = qft_field(state, ctx, beta, method='dense')
    assert np.allclose(fast.amps, dense.amps, atol=1e-10)


def test_qft_preserves_inner_products(f9, rng):
    u, v = _random_state(9, rng), _random_state(9, rng)
    fu, fv = qft_field(u, f9, 2), qft_field(v, f9, 2)
    assert abs(fu.inner(fv) - u.inner(v)) < 1e-10
    assert abs(qft_ring(u, 9).inner(qft_ring(v, 9)) - u.inner(v)) < 1e-10


def test_qft_maps_character_to_conjugate(f5, chi_f5):
    out = qft_field(char_state(chi_f5), f5)
    g = gauss_sum_direct_field(f5, chi_f5, 1)
    expected = g / math.sqrt(5) * char_state(chi_f5.inverse()).amps
    assert np.allclose(out.amps, expected, atol=1e-12)


def test_qft_field_rejects_bad_input(f5, f9):
    with pytest.raises(DomainError):
        qft_field(basis_state(5, 1), f5, 0)
    with pytest.raises(DomainError):
        qft_field(basis_state(5, 1), f9)
    with pytest.raises(DomainError):
        qft_field(basis_state(5, 1), f5, method='slow')


def test_qft_ring_of_one_mod_4():
    out = qft_ring(basis_state(4, 1), 4)
    assert np.allclose(out.amps, [0.5, 0.5j, -0.5, -0.5j], atol=1e-12)


@pytest.mark.parametrize('n', [3, 4, 8, 12, 15, 21, 30])
def test_ring_qft_of_character_gives_gauss_sums(n):
    for chi in dirichlet_characters(n):
        state = dirichlet_state(chi)
        scale = math.sqrt(n) * np.linalg.norm(chi.values())
        amps = qft_ring(state, n).amps * scale
        for y in range(n):
            assert abs(amps[y] - gauss_sum_direct_ring(n, chi, y)) < TOL


# ---------------------------------------------------------------------------
# Kickback and amplification

def test_kickback_parity():
    out = phase_kickback(uniform_state(6), lambda x: x % 2, 2)
    assert np.allclose(out.amps * math.sqrt(6), [1, -1, 1, -1, 1, -1], atol=1e-12)


def test_kickback_register_matches_amplitude(rng):
    state = _random_state(10, rng)
    f = rng.integers(0, 12, size=10)
    direct = phase_kickback(state, f, 12)
    register = phase_kickback(state, f, 12, mode='register')
    assert np.allclose(direct.amps, register.amps, atol=1e-10)


def test_kickback_accepts_mapping():
    out = phase_kickback(basis_state(3, 2), {2: 1}, 4)
    assert np.allclose(out.amps, [0, 0, 1j], atol=1e-12)


def test_kickback_errors():
    with pytest.raises(BoundExceededError):
        phase_kickback(uniform_state(4), [0, 1, 2, 3], 65, mode='register')
    with pytest.raises(DomainError):
        phase_kickback(uniform_state(4), [0, 1, 2], 4)
    with pytest.raises(DomainError):
        phase_kickback(uniform_state(4), [0, 1, 2, 3], 4, mode='wire')


def test_grover_schedule():
    iterations, phi = grover_schedule(4, 1)
    assert iterations == 1
    assert phi == pytest.approx(math.pi)
    assert grover_schedule(5, 5) == (0, 0.0)
    with pytest.raises(DomainError):
        grover_schedule(5, 0)
    with pytest.raises(DomainError):
        grover_schedule(5, 6)


@pytest.mark.parametrize('dim, modulus', [(16, 3), (241, 2), (100, 7), (9, 9)])
def test_amplify_is_exact(dim, modulus):
    marked = np.array([x % modulus == 0 for x in range(dim)])
    state = amplitude_amplify(dim, marked, int(marked.sum()))
    expected = marked / math.sqrt(marked.sum())
    assert np.allclose(state.amps, expected, atol=1e-9)


def test_amplify_wrong_weight():
    marked = [x % 3 == 0 for x in range(16)]
    with pytest.raises(EstimatorError):
        amplitude_amplify(16, marked, 1)


def test_prepare_char_state_f5(chi_f5):
    state = prepare_char_state(chi_f5)
    assert np.allclose(state.amps, np.array([0, 1, 1j, -1j, -1]) / 2, atol=1e-12)


@pytest.mark.parametrize('p, r, alpha', [(5, 1, 1), (3, 2, 3), (2, 4, 7), (241, 1, 10)])
def test_prepared_state_matches_table(p, r, alpha):
    ctx = make_field(p, r)
    chi = MultChar(ctx, alpha)
    assert prepare_char_state(chi).fidelity(char_state(chi)) > 1 - 1e-10


def _prime_powers(limit):
    for p in primerange(2, limit + 1):
        r = 1
        while p ** r <= limit:
            yield p, r
            r += 1


@pytest.mark.slow
def test_prepared_state_fidelity_every_character():
    for p, r in _prime_powers(343):
        ctx = make_field(p, r)
        for chi in field_characters(ctx):
            assert prepare_char_state(chi).fidelity(char_state(chi)) > 1 - 1e-10


@pytest.mark.slow
def test_amplify_every_weight():
    rng = np.random.default_rng(11)
    for dim in range(2, 130):
        for weight in range(1, dim + 1):
            marked = np.zeros(dim, dtype=bool)
            marked[rng.choice(dim, size=weight, replace=False)] = True
            state = amplitude_amplify(dim, marked, weight)
            assert np.allclose(state.amps, marked / math.sqrt(weight), atol=1e-9)


def test_prepare_char_state_register_mode(f9):
    chi = MultChar(f9, 5)
    state = prepare_char_state(chi, kickback_mode='register')
    assert np.allclose(state.amps, char_state(chi).amps, atol=1e-10)


def test_prepare_dirichlet_state():
    chi = make_dirichlet_char(15, [1, 3])
    assert prepare_dirichlet_state(chi).fidelity(dirichlet_state(chi)) > 1 - 1e-10


# ---------------------------------------------------------------------------
# Eigenphases

def test_eigenphase_worked_examples(chi_f5, chi_f241):
    assert eigenphase_gauss_field(chi_f5) / TWO_PI == pytest.approx(0.338, abs=1e-3)
    assert eigenphase_gauss_field(chi_f241) / TWO_PI == pytest.approx(0.6772, abs=5e-4)


def test_eigenphase_quadratic_f7():
    ctx = make_field(7)
    assert eigenphase_gauss_field(quadratic_char(ctx)) == pytest.approx(math.pi / 2, abs=TOL)


def test_eigen_transform_is_eigenvector(f9):
    chi = MultChar(f9, 1)
    chi_state, out = eigen_transform_field(chi, 4, qft_method='dense')
    scalar = gauss_sum_direct_field(f9, chi, 4) / 3
    assert np.allclose(out.amps, scalar * chi_state.amps, atol=1e-10)


def test_eigen_transform_rejects_trivial(f9):
    with pytest.raises(DomainError):
        eigen_transform_field(MultChar(f9, 0))


@pytest.mark.parametrize('p, r', [(5, 1), (2, 3), (3, 2), (13, 1), (5, 2)])
def test_eigenphase_matches_direct_sum(p, r):
    ctx = make_field(p, r)
    for chi in field_characters(ctx):
        if chi.is_trivial:
            continue
        for beta in (1, ctx.order - 1):
            expected = phase(gauss_sum_direct_field(ctx, chi, beta))
            assert wrap_distance(eigenphase_gauss_field(chi, beta), expected) < TOL


@pytest.mark.slow
def test_eigenphase_matches_direct_sum_exhaustive():
    for p, r in [(7, 3), (3, 5), (2, 8), (17, 2), (337, 1)]:
        ctx = make_field(p, r)
        for chi in field_characters(ctx):
            if chi.is_trivial:
                continue
            expected = phase(gauss_sum_direct_field(ctx, chi, 1))
            assert wrap_distance(eigenphase_gauss_field(chi), expected) < TOL


@pytest.mark.parametrize('n', [4, 5, 8, 9, 15, 16, 21, 24, 27])
def test_ring_eigenphase(n):
    for chi in dirichlet_characters(n):
        if not is_primitive(chi):
            continue
        expected = phase(gauss_sum_direct_ring(n, chi, 1))
        assert wrap_distance(eigenphase_gauss_ring(chi), expected) < TOL


def test_ring_eigenphase_requires_primitive():
    with pytest.raises(DomainError):
        eigenphase_gauss_ring(make_dirichlet_char(9, [3]))


# ---------------------------------------------------------------------------
# Sampling and estimation

def test_measurement_probability():
    assert measurement_probability(0.3, 0.3) == 1.0
    assert measurement_probability(math.pi, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert measurement_probability(1.0, 0.0) == pytest.approx(0.5 + 0.5 * math.cos(1.0))


def test_sample_phase_measurement_frequency(rng):
    draws = [sample_phase_measurement(1.0, 0.0, rng) for _ in range(20000)]
    assert set(draws) <= {0, 1}
    assert np.mean(draws) == pytest.approx(0.5 + 0.5 * math.cos(1.0), abs=0.015)


def test_stale_component_probability(chi_f5):
    chi_state, out = eigen_transform_field(chi_f5)
    source = StaleComponentSource(chi_state, out)
    gamma = eigenphase_gauss_field(chi_f5)
    for phi in np.linspace(0, TWO_PI, 9):
        assert source.probability(phi) == pytest.approx(measurement_probability(gamma, phi), abs=1e-10)


@pytest.mark.parametrize('gamma', [0.0, math.pi, 1.0, TWO_PI * 0.6772])
def test_estimate_phase_accuracy(gamma):
    estimate = estimate_phase(RelativePhaseSource(gamma), 10000, 'two-basis', seed=3)
    assert 0 <= estimate.gamma_hat < TWO_PI
    assert wrap_distance(estimate.gamma_hat, gamma) < 0.05
    assert estimate.samples_used == 10000


@pytest.mark.parametrize('gamma', [0.0, math.pi, 1.0, TWO_PI * 0.6772])
def test_adaptive_estimate_accuracy(gamma):
    estimate = estimate_phase(RelativePhaseSource(gamma), 40000, 'adaptive', seed=3)
    assert wrap_distance(estimate.gamma_hat, gamma) < 0.05
    assert estimate.samples_used == 40000
    assert estimate.strategy == 'adaptive'
    # coarse pass on two bases, then three recentred rounds
    assert len(estimate.per_basis_counts) == 5


def test_estimate_phase_error_shrinks_with_samples():
    gamma = TWO_PI * 0.6772
    source = RelativePhaseSource(gamma)

    def mean_error(t):
        return np.mean([wrap_distance(estimate_phase(source, t, seed=s).gamma_hat, gamma)
                        for s in range(200)])

    errors = [mean_error(t) for t in (100, 1000, 10000)]
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] <= 0.05


def test_estimate_phase_is_reproducible():
    source = RelativePhaseSource(2.5)
    first = estimate_phase(source, 500, 'adaptive', seed=11)
    second = estimate_phase(source, 500, 'adaptive', seed=11)
    assert first.gamma_hat == second.gamma_hat
    assert first.per_basis_counts == second.per_basis_counts
    assert first.to_record() == second.to_record()


def test_estimate_phase_rejects_bad_input():
    with pytest.raises(DomainError):
        estimate_phase(RelativePhaseSource(1.0), 1)
    with pytest.raises(DomainError):
        estimate_phase(RelativePhaseSource(1.0), 100, strategy='bisect')


def test_estimate_record():
    record = estimate_phase(RelativePhaseSource(1.0), 100, seed=2).to_record()
    assert record["samples_used"] == 100
    assert len(record["per_basis_counts"]) == 2
    assert record["per_basis_counts"][0]["shots"] == 50
    assert record["error_bound"] == pytest.approx(3 * math.sqrt(2 / 100))


def test_estimate_gauss_phase_f241(chi_f241):
    estimate = estimate_gauss_phase(chi_f241, 1, t=10000, seed=1)
    assert wrap_distance(estimate.gamma_hat, TWO_PI * 0.6772) < 0.05


def test_estimate_ring_gauss_phase():
    chi = make_dirichlet_char(9, [1])
    expected = phase(gauss_sum_direct_ring(9, chi, 1))
    estimate = estimate_ring_gauss_phase(chi, 10000, seed=5)
    assert wrap_distance(estimate.gamma_hat, expected) < 0.05
