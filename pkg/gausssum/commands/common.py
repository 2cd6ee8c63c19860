"""
Common Command Helpers
Shared argument groups and parsers for the command modules
"""

import argparse
from typing import Dict, List, Tuple, Union

from gausssum.errors import DomainError
from gausssum.services.ff_arith import FieldCtx, make_field
from gausssum.services.char_theory import MultChar

RingIndex = Union[int, Tuple[int, int]]


def common_parent() -> argparse.ArgumentParser:
    """Flags every subcommand accepts"""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--config', default=None, help="Path to config.json with run defaults")
    parent.add_argument('--output', default=None, help="Write the record to this path instead of stdout")
    parent.add_argument('--format', choices=('json', 'csv'), default='json', help="Output format")
    parent.add_argument('--timings', action='store_true', help="Include wall-clock timings")
    parent.add_argument('--log-level', default=None, choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'))
    parent.add_argument('--seed', type=int, default=None, help="Root RNG seed")
    return parent


def add_field_arguments(parser: argparse.ArgumentParser, alpha: bool = True):
    parser.add_argument('--p', type=int, required=True, help="Prime characteristic")
    parser.add_argument('--r', type=int, default=1, help="Extension degree")
    parser.add_argument('--g', type=int, default=None, help="Primitive element (encoding)")
    if alpha:
        parser.add_argument('--alpha', type=int, required=True, help="Character index")


def add_estimation_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('--t', type=int, default=None, help="Sample budget")
    parser.add_argument('--strategy', choices=('two-basis', 'adaptive'), default=None)


def field_context(args: argparse.Namespace) -> FieldCtx:
    return make_field(args.p, args.r, generator=args.g)


def field_character(args: argparse.Namespace) -> Tuple[FieldCtx, MultChar]:
    ctx = field_context(args)
    return ctx, MultChar(ctx, args.alpha)


def context_record(ctx: FieldCtx) -> Dict:
    return {"p": ctx.p, "r": ctx.r, "order": ctx.order, "modpoly": list(ctx.modpoly), "g": ctx.g}


def parse_ring_indices(text: str) -> List[RingIndex]:
    """'1,0,2:3' -> [1, 0, (2, 3)]: one entry per prime-power component, pairs for 2^e with e >= 3"""
    out: List[RingIndex] = []
    for part in text.split(','):
        part = part.strip()
        try:
            if ':' in part:
                a, b = part.split(':')
                out.append((int(a), int(b)))
            else:
                out.append(int(part))
        except ValueError:
            raise DomainError(f"Cannot parse character index '{part}'") from None
    return out


def complex_record(value: complex) -> Dict:
    return {"re": value.real, "im": value.imag}


__all__ = [
    'common_parent',
    'add_field_arguments',
    'add_estimation_arguments',
    'field_context',
    'field_character',
    'context_record',
    'parse_ring_indices',
    'complex_record'
]
