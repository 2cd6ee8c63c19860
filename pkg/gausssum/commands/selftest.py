"""
Self Test
Runs the invariant suite at small scale and reports pass/fail counts
"""

import argparse
import cmath
import logging
import math
from typing import Callable, Dict, List, Tuple

import numpy as np

from gausssum.errors import GaussSumError
from gausssum.services.ff_arith import fld_neg, fld_pow, make_field
from gausssum.services.char_theory import MultChar, dirichlet_characters, field_characters, quadratic_char
from gausssum.services.gauss import (
    TWO_PI, gauss_sum_direct_field, gauss_sum_direct_ring, jacobi_direct, jacobi_via_gauss,
    phase, quadratic_gauss_closed, ring_gauss_pipeline, wrap_distance
)
from gausssum.services.qsim import (
    StateVector, char_state, eigen_transform_field, estimate_gauss_phase, prepare_char_state, qft_field, qft_ring
)
from gausssum.services.reductions import (
    GaussOracle, autocorrelation, dlog_via_gauss_oracle, sequential_autocorrelation_closed
)

logger = logging.getLogger(__name__)

TOL = 1e-9

Check = Callable[[], Tuple[bool, str]]


def _worked_example_f5() -> Tuple[bool, str]:
    ctx = make_field(5)
    value = gauss_sum_direct_field(ctx, MultChar(ctx, 1), 1)
    turns = phase(value) / TWO_PI
    ok = abs(turns - 0.338) < 0.001 and abs(abs(value) - math.sqrt(5)) < TOL
    return ok, f"gamma_turns={turns:.6f}"


def _worked_example_f241() -> Tuple[bool, str]:
    ctx = make_field(241, generator=7)
    value = gauss_sum_direct_field(ctx, MultChar(ctx, 10), 1)
    turns = phase(value) / TWO_PI
    ok = abs(value.real + 6.85) < 0.05 and abs(value.imag + 13.9) < 0.05 and abs(turns - 0.6772) < 0.0005
    return ok, f"value={value:.4f}"


def _quadratic_closed_forms() -> Tuple[bool, str]:
    worst = 0.0
    for p, r in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (7, 2), (3, 3), (11, 1), (13, 1)]:
        ctx = make_field(p, r)
        direct = gauss_sum_direct_field(ctx, quadratic_char(ctx), 1)
        worst = max(worst, abs(direct - quadratic_gauss_closed(p, r)))
    return worst < TOL, f"max_error={worst:.3e}"


def _norm_and_conjugate_laws() -> Tuple[bool, str]:
    worst = 0.0
    for p, r in [(5, 1), (2, 3), (3, 2)]:
        ctx = make_field(p, r)
        minus_one = fld_neg(ctx, 1)
        for chi in field_characters(ctx):
            if chi.is_trivial:
                continue
            for beta in range(1, ctx.order):
                g1 = gauss_sum_direct_field(ctx, chi, beta)
                g2 = gauss_sum_direct_field(ctx, chi.inverse(), beta)
                worst = max(worst, abs(abs(g1) - math.sqrt(ctx.order)),
                            abs(g1 * g2 - chi.evaluate(minus_one) * ctx.order))
    return worst < TOL, f"max_error={worst:.3e}"


def _eigenvector_identity() -> Tuple[bool, str]:
    worst = 0.0
    for p, r in [(5, 1), (7, 1), (3, 2), (2, 3)]:
        ctx = make_field(p, r)
        for chi in field_characters(ctx):
            if chi.is_trivial:
                continue
            for beta in range(1, ctx.order):
                chi_state, out = eigen_transform_field(chi, beta)
                gamma = phase(gauss_sum_direct_field(ctx, chi, beta))
                residual = np.linalg.norm(out.amps - cmath.exp(1j * gamma) * chi_state.amps)
                worst = max(worst, float(residual))
    return worst < TOL, f"max_residual={worst:.3e}"


def _jacobi_consistency() -> Tuple[bool, str]:
    ctx = make_field(5, 2)
    worst = 0.0
    for a in range(1, ctx.order - 1):
        for b in range(1, ctx.order - 1):
            if (a + b) % (ctx.order - 1) == 0:
                continue
            chi, psi = MultChar(ctx, a), MultChar(ctx, b)
            direct = jacobi_direct(ctx, chi, psi)
            worst = max(worst, abs(direct - jacobi_via_gauss(ctx, chi, psi)),
                        abs(abs(direct) - math.sqrt(ctx.order)))
    return worst < TOL, f"max_error={worst:.3e}"


def _ring_pipeline() -> Tuple[bool, str]:
    worst = 0.0
    for n in (8, 9, 12, 16, 18, 20):
        for chi in dirichlet_characters(n):
            for beta in range(n):
                pipeline = ring_gauss_pipeline(n, chi, beta).value
                worst = max(worst, abs(pipeline - gauss_sum_direct_ring(n, chi, beta)))
    return worst < TOL, f"max_error={worst:.3e}"


def _phase_estimation() -> Tuple[bool, str]:
    ctx = make_field(241, generator=7)
    chi = MultChar(ctx, 10)
    truth = phase(gauss_sum_direct_field(ctx, chi, 1))
    errors = [wrap_distance(estimate_gauss_phase(chi, 1, t=10000, seed=s).gamma_hat, truth) for s in range(10)]
    mean = float(np.mean(errors))
    return mean <= 0.05, f"mean_error={mean:.4f}"


def _dlog_reduction() -> Tuple[bool, str]:
    failures = 0
    for p, r in [(2, 5), (3, 3), (31, 1)]:
        ctx = make_field(p, r)
        oracle = GaussOracle()
        for x in range(1, ctx.order):
            ell = dlog_via_gauss_oracle(ctx, None, x, oracle).ell
            failures += fld_pow(ctx, ctx.g, ell) != x
    noisy = GaussOracle(mode='noisy', epsilon=TWO_PI / 64, seed=7)
    ctx = make_field(1009)
    for x in range(2, 1009, 97):
        failures += fld_pow(ctx, ctx.g, dlog_via_gauss_oracle(ctx, None, x, noisy).ell) != x
    return failures == 0, f"failures={failures}"


def _sequential_autocorrelation() -> Tuple[bool, str]:
    ctx = make_field(113)
    chi = MultChar(ctx, 5)
    worst = max(abs(autocorrelation(113, chi, 'sequential', s) - sequential_autocorrelation_closed(113, s))
                for s in range(1, 112))
    return worst < TOL, f"max_error={worst:.3e}"


def _state_preparation_and_unitarity() -> Tuple[bool, str]:
    worst_fidelity, worst_norm = 0.0, 0.0
    for p, r in [(5, 1), (3, 2), (2, 4)]:
        ctx = make_field(p, r)
        for chi in field_characters(ctx):
            fidelity = abs(char_state(chi).inner(prepare_char_state(chi)))
            worst_fidelity = max(worst_fidelity, 1 - fidelity)
    rng = np.random.default_rng(0)
    for p, r in [(2, 6), (7, 2)]:
        ctx = make_field(p, r)
        state = StateVector.from_unnormalized(rng.normal(size=ctx.order) + 1j * rng.normal(size=ctx.order))
        worst_norm = max(worst_norm, abs(qft_field(state, ctx, 1).norm - 1))
        worst_norm = max(worst_norm, abs(qft_ring(state, ctx.order).norm - 1))
    return worst_fidelity <= 1e-10 and worst_norm <= 1e-12, \
        f"fidelity_gap={worst_fidelity:.3e}, norm_error={worst_norm:.3e}"


CHECKS: List[Tuple[str, Check]] = [
    ("worked_example_f5", _worked_example_f5),
    ("worked_example_f241", _worked_example_f241),
    ("quadratic_closed_forms", _quadratic_closed_forms),
    ("norm_and_conjugate_laws", _norm_and_conjugate_laws),
    ("eigenvector_identity", _eigenvector_identity),
    ("jacobi_consistency", _jacobi_consistency),
    ("ring_pipeline", _ring_pipeline),
    ("phase_estimation", _phase_estimation),
    ("dlog_reduction", _dlog_reduction),
    ("sequential_autocorrelation", _sequential_autocorrelation),
    ("state_preparation_and_unitarity", _state_preparation_and_unitarity),
]


def run_checks() -> Dict:
    checks = []
    for name, check in CHECKS:
        try:
            passed, detail = check()
        except GaussSumError as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        logger.info(f"selftest {name}: {'PASS' if passed else 'FAIL'} ({detail})")
        checks.append({"name": name, "passed": bool(passed), "detail": detail})
    passed = sum(c["passed"] for c in checks)
    return {"passed": passed, "failed": len(checks) - passed, "checks": checks}


def selftest_command(args: argparse.Namespace, config: Dict) -> Dict:
    """Small-scale invariant suite"""
    result = run_checks()
    return {"success": result["failed"] == 0, "result": result}


def register(subparsers, parents):
    parser = subparsers.add_parser('selftest', parents=parents, help="Run the invariant suite at small scale")
    parser.set_defaults(handler=selftest_command)
