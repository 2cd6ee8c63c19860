"""
Ring Commands
ring-gauss over Z/nZ through the CRT pipeline
"""

import argparse
from typing import Dict

from gausssum.commands.common import add_estimation_arguments, parse_ring_indices
from gausssum.services.char_theory import conductor, make_dirichlet_char
from gausssum.services.gauss import gauss_sum_direct_ring, ring_gauss_pipeline


def ring_gauss_command(args: argparse.Namespace, config: Dict) -> Dict:
    """G(Z/nZ, chi, beta)"""
    indices = parse_ring_indices(args.alpha) if args.alpha else None
    chi = make_dirichlet_char(args.n, indices)
    result = ring_gauss_pipeline(
        args.n, chi, args.beta,
        estimator=args.estimator,
        samples=args.t,
        strategy=args.strategy,
        seed=args.seed,
        parallel=args.parallel
    )
    record = result.to_record()
    if args.cross_check:
        record["direct_discrepancy"] = abs(gauss_sum_direct_ring(args.n, chi, args.beta) - result.value)
    return {
        "success": True,
        "character": chi.to_record(),
        "conductor": conductor(chi),
        "result": record
    }


def register(subparsers, parents):
    parser = subparsers.add_parser('ring-gauss', parents=parents, help="Gauss sum over Z/nZ")
    parser.add_argument('--n', type=int, required=True, help="Modulus")
    parser.add_argument('--alpha', default=None,
                        help="Per-component indices in factorization order, e.g. '1,2' or '1:3' for 2^e")
    parser.add_argument('--beta', type=int, default=1)
    parser.add_argument('--estimator', choices=('exact', 'quantum'), default=None)
    parser.add_argument('--parallel', action='store_true', default=None,
                        help="Evaluate components in a thread pool")
    parser.add_argument('--cross-check', action='store_true',
                        help="Compare against direct summation over Z/nZ")
    add_estimation_arguments(parser)
    parser.set_defaults(handler=ring_gauss_command)
