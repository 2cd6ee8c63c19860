import math

import numpy as np
import pytest
from sympy import primerange

from config_constants import EstimatorDefaults
from gausssum.errors import DomainError, ReconstructionError
from gausssum.services.ff_arith import fld_pow, make_field
from gausssum.services.char_theory import MultChar
from gausssum.services.gauss import gauss_sum_direct_field
from gausssum.services.reductions import (
    GaussOracle, OracleMode, WalkOrdering, autocorrelation, dlog_via_gauss_oracle, export_walk,
    _oracle_phase, generator_autocorrelation_readings, sequential_autocorrelation_closed, walk_csv,
    walk_trace
)

TWO_PI = 2 * math.pi


def _budget(ctx):
    return 2 * math.ceil(math.log2(ctx.order)) + 4


def _prime_powers(limit):
    for p in primerange(2, limit + 1):
        r = 1
        while p ** r <= limit:
            yield p, r
            r += 1


class ConstantOracle(GaussOracle):
    """Answers the same phase for every query"""

    def query(self, ctx, beta):
        self.calls += 1
        return 0.0


# ---------------------------------------------------------------------------
# Discrete logarithms

def test_dlog_of_one(f241):
    result = dlog_via_gauss_oracle(f241, None, 1, GaussOracle())
    assert result.ell == 0


def test_dlog_worked_field(f241):
    x = pow(7, 100, 241)
    result = dlog_via_gauss_oracle(f241, 7, x, GaussOracle())
    assert result.ell == 100
    assert result.mode == 'exact'
    assert result.oracle_calls <= _budget(f241)


@pytest.mark.parametrize('p, r', [(5, 1), (13, 1), (2, 3), (3, 2), (2, 5), (5, 2)])
def test_dlog_exhaustive_exact(p, r):
    ctx = make_field(p, r)
    oracle = GaussOracle()
    for x in range(1, ctx.order):
        result = dlog_via_gauss_oracle(ctx, None, x, oracle)
        assert fld_pow(ctx, ctx.g, result.ell) == x
        assert result.oracle_calls <= _budget(ctx)


@pytest.mark.parametrize('p, r', [(13, 1), (3, 3), (2, 6), (101, 1)])
def test_dlog_exhaustive_noisy(p, r):
    ctx = make_field(p, r)
    oracle = GaussOracle(OracleMode.NOISY, epsilon=TWO_PI / 16, seed=5)
    for x in range(1, ctx.order):
        result = dlog_via_gauss_oracle(ctx, None, x, oracle)
        assert fld_pow(ctx, ctx.g, result.ell) == x
        assert result.oracle_calls <= _budget(ctx)


def test_dlog_noisy_large_prime(rng):
    ctx = make_field(10007)
    oracle = GaussOracle(OracleMode.NOISY, epsilon=TWO_PI / 64, seed=2)
    for x in rng.integers(1, ctx.order, size=100):
        result = dlog_via_gauss_oracle(ctx, None, int(x), oracle)
        assert fld_pow(ctx, ctx.g, result.ell) == x
        assert result.oracle_calls <= _budget(ctx)


@pytest.mark.slow
@pytest.mark.parametrize('p, r', [(4093, 1), (2, 12), (3, 7), (61, 2)])
def test_dlog_desk_scale_fields(p, r, rng):
    ctx = make_field(p, r)
    exact = GaussOracle()
    noisy = GaussOracle(OracleMode.NOISY, epsilon=TWO_PI / 20, seed=8)
    for x in rng.integers(1, ctx.order, size=50):
        for oracle in (exact, noisy):
            result = dlog_via_gauss_oracle(ctx, None, int(x), oracle)
            assert fld_pow(ctx, ctx.g, result.ell) == x


@pytest.mark.slow
def test_dlog_every_field_up_to_4096():
    for p, r in _prime_powers(2 ** 12):
        ctx = make_field(p, r)
        oracle = GaussOracle()
        for x in range(1, ctx.order):
            result = dlog_via_gauss_oracle(ctx, None, x, oracle)
            assert fld_pow(ctx, ctx.g, result.ell) == x
            assert result.oracle_calls <= _budget(ctx)


def test_dlog_other_generator(f241):
    # 46 = 7^7 is primitive since gcd(7, 240) = 1
    result = dlog_via_gauss_oracle(f241, 46, 5, GaussOracle())
    assert pow(46, result.ell, 241) == 5


def test_dlog_rejects_noisy_oracle(f241):
    oracle = GaussOracle(OracleMode.NOISY, epsilon=TWO_PI / 15)
    with pytest.raises(DomainError):
        dlog_via_gauss_oracle(f241, None, 3, oracle)
    assert oracle.calls == 0


def test_dlog_rejects_zero(f241):
    with pytest.raises(DomainError):
        dlog_via_gauss_oracle(f241, None, 0, GaussOracle())


def test_negative_epsilon():
    with pytest.raises(DomainError):
        GaussOracle(OracleMode.NOISY, epsilon=-0.1)


def test_inconsistent_oracle_is_detected(f241):
    with pytest.raises(ReconstructionError):
        dlog_via_gauss_oracle(f241, None, pow(7, 100, 241), ConstantOracle())
    with pytest.raises(ReconstructionError):
        dlog_via_gauss_oracle(f241, None, pow(7, 100, 241),
                              ConstantOracle(OracleMode.NOISY, epsilon=0.1))


def test_noisy_dlog_is_reproducible():
    ctx = make_field(1009)
    first = [dlog_via_gauss_oracle(ctx, None, x, GaussOracle('noisy', 0.2, seed=4)) for x in (3, 77, 500)]
    second = [dlog_via_gauss_oracle(ctx, None, x, GaussOracle('noisy', 0.2, seed=4)) for x in (3, 77, 500)]
    assert first == second


def test_votes_combine_repeated_queries():
    ctx = make_field(257)
    oracle = GaussOracle(OracleMode.NOISY, epsilon=TWO_PI / 16, seed=1)
    result = dlog_via_gauss_oracle(ctx, None, 200, oracle, votes=3)
    assert fld_pow(ctx, ctx.g, result.ell) == 200
    assert result.oracle_calls % 3 == 0


def test_exact_oracle_phase(f241, chi_f241):
    oracle = GaussOracle()
    value = gauss_sum_direct_field(f241, MultChar(f241, 1), 3)
    assert oracle.query(f241, 3) == pytest.approx(np.angle(value) % TWO_PI)
    assert oracle.calls == 1


def test_oracle_phase_cache_is_bounded(f241):
    _oracle_phase.cache_clear()
    oracle = GaussOracle()
    for beta in range(1, 241):
        oracle.query(f241, beta)
    GaussOracle(OracleMode.NOISY, epsilon=0.1).query(f241, 5)
    info = _oracle_phase.cache_info()
    assert info.maxsize == EstimatorDefaults.ORACLE_CACHE_SIZE
    assert info.currsize == 240
    assert info.hits == 1


# ---------------------------------------------------------------------------
# Walks

@pytest.mark.parametrize('ordering', ['sequential', 'generator'])
def test_worked_walk_endpoint(chi_f241, f241, ordering):
    trace = walk_trace(241, chi_f241, ordering)
    assert len(trace.points) == 240
    assert abs(trace.endpoint.real + 6.85) < 0.05
    assert abs(trace.endpoint.imag + 13.9) < 0.05
    assert abs(trace.endpoint - gauss_sum_direct_field(f241, chi_f241, 1)) < 1e-9


def test_walk_steps_are_unit_and_reordered(chi_f241):
    seq = walk_trace(241, chi_f241, WalkOrdering.SEQUENTIAL)
    gen = walk_trace(241, chi_f241, WalkOrdering.GENERATOR)
    assert np.allclose(np.abs(seq.steps), 1)
    assert np.allclose(np.abs(gen.steps), 1)
    assert np.array_equal(np.sort_complex(seq.steps.round(9)), np.sort_complex(gen.steps.round(9)))
    assert np.allclose(np.cumsum(gen.steps), gen.points)
    # generator ordering visits x = 7^t
    assert abs(gen.steps[1] - chi_f241.evaluate(7) * np.exp(2j * np.pi * 7 / 241)) < 1e-12


def test_trivial_character_walk():
    ctx = make_field(31)
    trace = walk_trace(31, MultChar(ctx, 0))
    assert abs(trace.endpoint + 1) < 1e-9


@pytest.mark.parametrize('p', [7, 101, 241])
def test_walk_endpoint_norm(p):
    ctx = make_field(p)
    for alpha in (1, 2, p - 2):
        trace = walk_trace(p, MultChar(ctx, alpha), 'generator', beta=3)
        assert abs(abs(trace.endpoint) - math.sqrt(p)) < 1e-9


def test_walk_requires_prime_field(f9):
    with pytest.raises(DomainError):
        walk_trace(3, MultChar(f9, 1))
    with pytest.raises(DomainError):
        walk_trace(5, MultChar(f9, 1))


def test_walk_rejects_ordering(chi_f5):
    with pytest.raises(DomainError):
        walk_trace(5, chi_f5, 'spiral')


def test_walk_record(chi_f241):
    record = walk_trace(241, chi_f241, 'generator').to_record()
    assert record["steps"] == 240
    assert record["ordering"] == 'generator'
    assert record["endpoint_norm"] == pytest.approx(math.sqrt(241))


@pytest.mark.parametrize('p', [113, 241, 257])
def test_sequential_autocorrelation_closed_form(p):
    ctx = make_field(p)
    for alpha in (1, 10):
        chi = MultChar(ctx, alpha)
        for s in range(1, p - 1):
            value = autocorrelation(p, chi, 'sequential', s)
            assert abs(value - sequential_autocorrelation_closed(p, s)) < 1e-9


def test_sequential_autocorrelation_conjugate_symmetry(chi_f241):
    for s in range(2, 240):
        forward = autocorrelation(241, chi_f241, 'sequential', s)
        backward = autocorrelation(241, chi_f241, 'sequential', 241 - s)
        assert abs(forward - backward.conjugate()) < 1e-9


def test_generator_autocorrelation(chi_f241):
    value = autocorrelation(241, chi_f241, WalkOrdering.GENERATOR, 1)
    assert abs(abs(value) - 1 / 240) < 1e-9
    for s in (1, 2, 17, 239):
        readings = generator_autocorrelation_readings(241, chi_f241, s)
        assert readings["matches_exponent_reading"]
        empirical = complex(readings["empirical_re"], readings["empirical_im"])
        assert abs(abs(empirical) - 1 / 240) < 1e-9


@pytest.mark.parametrize('s', [0, 240, -1])
def test_autocorrelation_shift_bounds(chi_f241, s):
    with pytest.raises(DomainError):
        autocorrelation(241, chi_f241, 'sequential', s)


def test_export_walk(tmp_path, chi_f241):
    trace = walk_trace(241, chi_f241, 'generator')
    path = export_walk(trace, tmp_path / "walks" / "f241.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == 't,re,im'
    assert len(lines) == 241
    t, re, im = lines[-1].split(',')
    assert int(t) == 239
    assert abs(float(re) + 6.85) < 0.05 and abs(float(im) + 13.9) < 0.05

    again = export_walk(walk_trace(241, chi_f241, 'generator'), tmp_path / "again.csv")
    assert again.read_bytes() == path.read_bytes()


def test_walk_csv_smallest_field():
    ctx = make_field(2)
    text = walk_csv(walk_trace(2, MultChar(ctx, 0)))
    lines = text.splitlines()
    assert len(lines) == 2
    assert lines[1].startswith('0,-1.0,')
