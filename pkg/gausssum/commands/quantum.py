"""
Quantum Commands
eigenphase and phase-estimate on the simulated statevector
"""

import argparse
import math
from typing import Dict

from gausssum.commands.common import (
    add_estimation_arguments, add_field_arguments, context_record, field_character, parse_ring_indices
)
from gausssum.errors import UsageError
from gausssum.services.char_theory import make_dirichlet_char
from gausssum.services.gauss import TWO_PI, gauss_sum_direct_field, gauss_sum_direct_ring, phase, wrap_distance
from gausssum.services.qsim import eigenphase_gauss_field, eigenphase_gauss_ring, estimate_gauss_phase


def _phase_record(gamma: float, reference: float) -> Dict:
    return {
        "gamma_rad": gamma,
        "gamma_turns": gamma / TWO_PI,
        "direct_gamma_rad": reference,
        "discrepancy_rad": wrap_distance(gamma, reference)
    }


def eigenphase_command(args: argparse.Namespace, config: Dict) -> Dict:
    """Phase of the eigenvalue of chi^2 . QFT on |chi>"""
    if args.n is not None:
        chi = make_dirichlet_char(args.n, parse_ring_indices(args.ring_alpha))
        gamma = eigenphase_gauss_ring(chi)
        reference = phase(gauss_sum_direct_ring(args.n, chi, 1))
        return {"success": True, "character": chi.to_record(), "result": _phase_record(gamma, reference)}

    if args.p is None or args.alpha is None:
        raise UsageError("eigenphase needs --p and --alpha (or --n and --ring-alpha)")
    ctx, chi = field_character(args)
    gamma = eigenphase_gauss_field(chi, args.beta, qft_method=args.qft_method)
    reference = phase(gauss_sum_direct_field(ctx, chi, args.beta))
    return {"success": True, "field": context_record(ctx), "result": _phase_record(gamma, reference)}


def phase_estimate_command(args: argparse.Namespace, config: Dict) -> Dict:
    """Sampled estimate of arg G(F_{p^r}, chi, beta)"""
    ctx, chi = field_character(args)
    estimate = estimate_gauss_phase(chi, args.beta, t=args.t, strategy=args.strategy, seed=args.seed)
    reference = phase(gauss_sum_direct_field(ctx, chi, args.beta))
    record = estimate.to_record()
    record["direct_gamma_rad"] = reference
    record["error_rad"] = wrap_distance(estimate.gamma_hat, reference)
    record["norm"] = math.sqrt(ctx.order)
    return {"success": True, "field": context_record(ctx), "result": record}


def register(subparsers, parents):
    parser = subparsers.add_parser('eigenphase', parents=parents,
                                   help="Eigenphase of the simulated Gauss-sum transform")
    parser.add_argument('--p', type=int, default=None)
    parser.add_argument('--r', type=int, default=1)
    parser.add_argument('--g', type=int, default=None)
    parser.add_argument('--alpha', type=int, default=None)
    parser.add_argument('--beta', type=int, default=1)
    parser.add_argument('--qft-method', choices=('fft', 'dense'), default='fft')
    parser.add_argument('--n', type=int, default=None, help="Ring modulus (primitive characters)")
    parser.add_argument('--ring-alpha', default='1', help="Ring character indices")
    parser.set_defaults(handler=eigenphase_command)

    parser = subparsers.add_parser('phase-estimate', parents=parents,
                                   help="Sampling-based Gauss-sum phase estimation")
    add_field_arguments(parser)
    parser.add_argument('--beta', type=int, default=1)
    add_estimation_arguments(parser)
    parser.set_defaults(handler=phase_estimate_command)
