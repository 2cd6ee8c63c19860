"""
Reduction Commands
dlog-reduce, walk and autocorr
"""

import argparse
import logging
from typing import Dict

from config_constants import PathConfig
from gausssum.commands.common import (
    add_field_arguments, complex_record, context_record, field_character, field_context
)
from gausssum.services.gauss import gauss_sum_direct_field
from gausssum.services.reductions import (
    GaussOracle, WalkOrdering, autocorrelation, dlog_via_gauss_oracle, export_walk,
    generator_autocorrelation_readings, sequential_autocorrelation_closed, walk_csv, walk_trace
)

logger = logging.getLogger(__name__)


def dlog_reduce_command(args: argparse.Namespace, config: Dict) -> Dict:
    """log_g(x) from Gauss-sum phase queries"""
    ctx = field_context(args)
    oracle = GaussOracle(mode=args.oracle, epsilon=args.epsilon, seed=args.seed)
    recovery = dlog_via_gauss_oracle(ctx, None, args.x, oracle, votes=args.votes)
    logger.info(f"Recovered log_{ctx.g}({args.x}) = {recovery.ell} with {recovery.oracle_calls} oracle calls")
    return {"success": True, "field": context_record(ctx), "result": recovery.to_record()}


def walk_command(args: argparse.Namespace, config: Dict) -> Dict:
    """Partial sums of chi(x) e(beta*x) in sequential or generator order"""
    ctx, chi = field_character(args)
    trace = walk_trace(ctx.p, chi, args.ordering, beta=args.beta)
    direct = gauss_sum_direct_field(ctx, chi, args.beta % ctx.p)
    record = trace.to_record()
    record["direct_discrepancy"] = abs(trace.endpoint - direct)
    if args.export:
        name = f"walk_p{ctx.p}_a{chi.alpha}_g{ctx.g}_{trace.ordering.value}.csv"
        record["export_path"] = str(export_walk(trace, PathConfig.EXPORT_DIR / name))
    return {
        "success": True,
        "field": context_record(ctx),
        "result": record,
        "points": [complex_record(complex(z)) for z in trace.points],
        "csv": walk_csv(trace)
    }


def autocorr_command(args: argparse.Namespace, config: Dict) -> Dict:
    """Autocorrelation of the walk steps at shift s"""
    ctx, chi = field_character(args)
    value = autocorrelation(ctx.p, chi, args.ordering, args.s)
    record = {"s": args.s, "ordering": args.ordering, "value": complex_record(value), "norm": abs(value)}
    if args.ordering == WalkOrdering.SEQUENTIAL.value:
        closed = sequential_autocorrelation_closed(ctx.p, args.s)
        record["closed_form"] = complex_record(complex(closed))
        record["discrepancy"] = abs(value - closed)
    else:
        readings = generator_autocorrelation_readings(ctx.p, chi, args.s)
        if not readings["matches_field_reading"]:
            logger.warning("Generator-ordering autocorrelation disagrees with the field-element reading")
        record["readings"] = readings
    return {"success": True, "field": context_record(ctx), "result": record}


def register(subparsers, parents):
    parser = subparsers.add_parser('dlog-reduce', parents=parents,
                                   help="Discrete logarithm from a Gauss-sum phase oracle")
    add_field_arguments(parser, alpha=False)
    parser.add_argument('--x', type=int, required=True, help="Element to take the log of (encoding)")
    parser.add_argument('--oracle', choices=('exact', 'noisy'), default=None)
    parser.add_argument('--epsilon', type=float, default=None, help="Noisy oracle angle bound (radians)")
    parser.add_argument('--votes', type=int, default=None)
    parser.set_defaults(handler=dlog_reduce_command)

    parser = subparsers.add_parser('walk', parents=parents, help="Character-sum walk over F_p")
    add_field_arguments(parser)
    parser.add_argument('--beta', type=int, default=1)
    parser.add_argument('--ordering', choices=[o.value for o in WalkOrdering], default='sequential')
    parser.add_argument('--export', action='store_true', help="Also write the trace CSV under exports/")
    parser.set_defaults(handler=walk_command, csv_key='csv')

    parser = subparsers.add_parser('autocorr', parents=parents, help="Walk-step autocorrelation")
    add_field_arguments(parser)
    parser.add_argument('--s', type=int, required=True, help="Shift, 0 < s < p-1")
    parser.add_argument('--ordering', choices=[o.value for o in WalkOrdering], default='sequential')
    parser.set_defaults(handler=autocorr_command)
