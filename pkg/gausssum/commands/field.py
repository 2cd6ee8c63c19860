"""
Field Commands
field-gauss and jacobi over F_{p^r}
"""

import argparse
import logging
from typing import Dict

from gausssum.commands.common import add_field_arguments, context_record, field_character
from gausssum.services.char_theory import MultChar
from gausssum.services.gauss import field_gauss, gauss_sum_direct_field, jacobi_sum

logger = logging.getLogger(__name__)


def field_gauss_command(args: argparse.Namespace, config: Dict) -> Dict:
    """G(F_{p^r}, chi, beta)"""
    ctx, chi = field_character(args)
    result = field_gauss(ctx, chi, args.beta)
    record = result.to_record()
    if args.cross_check and result.method.value != 'direct':
        direct = gauss_sum_direct_field(ctx, chi, args.beta)
        record["direct_discrepancy"] = abs(direct - result.value)
    logger.info(f"G({chi}, {args.beta}) = {result.value:.6f} via {result.method.value}")
    return {"success": True, "field": context_record(ctx), "result": record}


def jacobi_command(args: argparse.Namespace, config: Dict) -> Dict:
    """J(chi, psi) directly and through Gauss sums"""
    ctx, chi = field_character(args)
    psi = MultChar(ctx, args.psi_alpha)
    result = jacobi_sum(ctx, chi, psi)
    return {"success": True, "field": context_record(ctx), "result": result.to_record()}


def register(subparsers, parents):
    parser = subparsers.add_parser('field-gauss', parents=parents,
                                   help="Gauss sum over a finite field")
    add_field_arguments(parser)
    parser.add_argument('--beta', type=int, default=1, help="Additive character index (encoding)")
    parser.add_argument('--cross-check', action='store_true',
                        help="Compare closed forms against direct summation")
    parser.set_defaults(handler=field_gauss_command)

    parser = subparsers.add_parser('jacobi', parents=parents, help="Jacobi sum over a finite field")
    add_field_arguments(parser)
    parser.add_argument('--psi-alpha', type=int, required=True, help="Second character index")
    parser.set_defaults(handler=jacobi_command)
