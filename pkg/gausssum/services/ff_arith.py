"""
Finite Field Arithmetic
Exact arithmetic in F_{p^r} over a polynomial basis, the trace map, primitive
element discovery and a baby-step/giant-step discrete logarithm.

Elements are handled as canonical integer encodings idx = sum(coeffs[i] * p**i),
so idx 0 is the field zero and idx 1 is the field one. The same encoding indexes
statevector amplitudes in the quantum simulation layer.
"""

import logging
import math
import operator
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_gcd, gf_mul, gf_pow_mod, gf_rem, gf_strip, gf_sub

from config_constants import BoundsConfig, ErrorMessages
from gausssum.errors import BoundExceededError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldCtx:
    """A finite field F_{p^r}: prime p, degree r, monic modulus (low to high) and generator g"""

    p: int
    r: int
    modpoly: Tuple[int, ...]
    g: int
    order: int

    def element(self, x: "ElementLike") -> "FieldElement":
        """Wrap an encoding as a FieldElement with its coefficient vector"""
        idx = _check(self, x)
        return FieldElement(idx, tuple(_to_coeffs(self, idx)))

    def with_generator(self, g: int) -> "FieldCtx":
        """Same field, different primitive element (validated)"""
        return make_field(self.p, self.r, generator=g)

    def __str__(self) -> str:
        return f"F_{self.order}"


class FieldElement(NamedTuple):
    """Element of F_{p^r}: canonical encoding plus coefficient vector (length r)"""

    idx: int
    coeffs: Tuple[int, ...]

    def __index__(self) -> int:
        return self.idx

    def __int__(self) -> int:
        return self.idx


ElementLike = Union[int, FieldElement]


class FieldTables(NamedTuple):
    """Vectorized lookup tables for one field (all arrays int64)"""

    digits: np.ndarray     # (order, r) coefficient vectors
    exp: np.ndarray        # exp[j] = g^j, j in [0, order-1)
    log: np.ndarray        # log[x] = j with g^j = x, log[0] = -1
    trace: np.ndarray      # trace[x] in [0, p)
    neg: np.ndarray        # neg[x] = -x
    one_minus: np.ndarray  # one_minus[x] = 1 - x


# ---------------------------------------------------------------------------
# Encoding helpers

def _check(ctx: FieldCtx, x: ElementLike) -> int:
    idx = operator.index(x)
    if not 0 <= idx < ctx.order:
        raise DomainError(ErrorMessages.BAD_ELEMENT.format(x=idx, order=ctx.order))
    return idx


def _to_coeffs(ctx: FieldCtx, idx: int) -> List[int]:
    coeffs = []
    for _ in range(ctx.r):
        idx, c = divmod(idx, ctx.p)
        coeffs.append(c)
    return coeffs


def _from_coeffs(ctx: FieldCtx, coeffs: Sequence[int]) -> int:
    idx = 0
    for c in reversed(coeffs):
        idx = idx * ctx.p + int(c) % ctx.p
    return idx


def _to_gf(coeffs: Sequence[int]) -> list:
    # galoistools wants dense lists, highest degree first
    return gf_strip([ZZ(int(c)) for c in reversed(coeffs)])


def _from_gf(ctx: FieldCtx, poly: list) -> int:
    coeffs = [int(c) for c in reversed(poly)]
    return _from_coeffs(ctx, coeffs + [0] * (ctx.r - len(coeffs)))


def _digits(value: int, p: int, r: int) -> List[int]:
    out = []
    for _ in range(r):
        value, c = divmod(value, p)
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# Field construction

def _is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """gcd(x^{p^i} - x, f) = 1 for 0 < i < r and f | x^{p^r} - x"""
    r = len(coeffs) - 1
    if r == 1:
        return True
    f = _to_gf(coeffs)
    x = [ZZ(1), ZZ(0)]
    h = x
    for _ in range(1, r):
        h = gf_pow_mod(h, p, f, p, ZZ)
        if gf_gcd(gf_sub(h, x, p, ZZ), f, p, ZZ) != [1]:
            return False
    h = gf_pow_mod(h, p, f, p, ZZ)
    return not gf_sub(h, x, p, ZZ)


def _first_irreducible(p: int, r: int) -> Tuple[int, ...]:
    for tail in range(p ** r):
        coeffs = _digits(tail, p, r) + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise DomainError(f"No irreducible polynomial of degree {r} over F_{p}")  # unreachable


def _has_full_order(ctx: FieldCtx, x: int, prime_factors: Sequence[int]) -> bool:
    n = ctx.order - 1
    if x == 0:
        return False
    return all(fld_pow(ctx, x, n // q) != 1 for q in prime_factors)


@lru_cache(maxsize=None)
def make_field(p: int, r: int = 1, generator: Optional[int] = None,
               max_order: Optional[int] = None) -> FieldCtx:
    """
    Build F_{p^r} deterministically

    Args:
        p: Prime characteristic
        r: Extension degree (>= 1)
        generator: Optional primitive-element override (canonical encoding)
        max_order: Size bound (defaults to BoundsConfig.ARITH_MAX_ORDER)

    Returns:
        FieldCtx with the first monic irreducible modulus in lexicographic
        coefficient order and the smallest primitive element (unless overridden)
    """
    if not isinstance(r, int) or r < 1:
        raise DomainError(ErrorMessages.BAD_DEGREE.format(r=r))
    if not isprime(p):
        raise DomainError(ErrorMessages.NOT_PRIME.format(p=p))
    bound = BoundsConfig.ARITH_MAX_ORDER if max_order is None else max_order
    order = p ** r
    if order > bound:
        raise BoundExceededError(ErrorMessages.ORDER_TOO_LARGE.format(order=order, bound=bound))

    modpoly = _first_irreducible(p, r)
    provisional = FieldCtx(p=p, r=r, modpoly=modpoly, g=1, order=order)
    prime_factors = sorted(factorint(order - 1))

    if generator is not None:
        g = operator.index(generator)
        if not (0 < g < order and _has_full_order(provisional, g, prime_factors)):
            raise DomainError(ErrorMessages.NOT_PRIMITIVE.format(g=generator, order=order))
    else:
        g = next(x for x in range(1, order) if _has_full_order(provisional, x, prime_factors))

    ctx = FieldCtx(p=p, r=r, modpoly=modpoly, g=g, order=order)
    logger.debug(f"Constructed {ctx}: modpoly={modpoly}, g={g}")
    return ctx


# ---------------------------------------------------------------------------
# Arithmetic

def fld_add(ctx: FieldCtx, a: ElementLike, b: ElementLike) -> int:
    a, b = _check(ctx, a), _check(ctx, b)
    if ctx.r == 1:
        return (a + b) % ctx.p
    return _from_coeffs(ctx, [x + y for x, y in zip(_to_coeffs(ctx, a), _to_coeffs(ctx, b))])


def fld_neg(ctx: FieldCtx, a: ElementLike) -> int:
    a = _check(ctx, a)
    if ctx.r == 1:
        return (-a) % ctx.p
    return _from_coeffs(ctx, [-c for c in _to_coeffs(ctx, a)])


def fld_sub(ctx: FieldCtx, a: ElementLike, b: ElementLike) -> int:
    return fld_add(ctx, a, fld_neg(ctx, b))


def fld_mul(ctx: FieldCtx, a: ElementLike, b: ElementLike) -> int:
    a, b = _check(ctx, a), _check(ctx, b)
    if ctx.r == 1:
        return (a * b) % ctx.p
    mod = _to_gf(ctx.modpoly)
    prod = gf_mul(_to_gf(_to_coeffs(ctx, a)), _to_gf(_to_coeffs(ctx, b)), ctx.p, ZZ)
    return _from_gf(ctx, gf_rem(prod, mod, ctx.p, ZZ))


def fld_pow(ctx: FieldCtx, a: ElementLike, k: int) -> int:
    """a^k by square-and-multiply; negative k inverts first"""
    a = _check(ctx, a)
    if a == 0:
        if k < 0:
            raise DomainError(ErrorMessages.ZERO_INVERSE)
        return 1 if k == 0 else 0
    k %= ctx.order - 1
    if ctx.r == 1:
        return pow(a, k, ctx.p)
    mod = _to_gf(ctx.modpoly)
    return _from_gf(ctx, gf_pow_mod(_to_gf(_to_coeffs(ctx, a)), k, mod, ctx.p, ZZ))


def fld_inv(ctx: FieldCtx, a: ElementLike) -> int:
    if _check(ctx, a) == 0:
        raise DomainError(ErrorMessages.ZERO_INVERSE)
    return fld_pow(ctx, a, ctx.order - 2) if ctx.order > 2 else 1


def trace(ctx: FieldCtx, x: ElementLike) -> int:
    """Tr(x) = sum of the Frobenius conjugates x^{p^j}, returned as an integer in [0, p)"""
    x = _check(ctx, x)
    if ctx.r == 1:
        return x
    acc, y = 0, x
    for _ in range(ctx.r):
        acc = fld_add(ctx, acc, y)
        y = fld_pow(ctx, y, ctx.p)
    # the sum is fixed by Frobenius, so only the constant coefficient survives
    assert acc < ctx.p, f"trace of {x} left the base field"
    return acc


# ---------------------------------------------------------------------------
# Discrete logarithm

@lru_cache(maxsize=64)
def _baby_steps(ctx: FieldCtx) -> Tuple[int, Dict[int, int], int]:
    n = ctx.order - 1
    m = math.isqrt(n - 1) + 1
    table: Dict[int, int] = {}
    e = 1
    for j in range(m):
        table.setdefault(e, j)
        e = fld_mul(ctx, e, ctx.g)
    giant = fld_inv(ctx, fld_pow(ctx, ctx.g, m))
    return m, table, giant


def discrete_log(ctx: FieldCtx, x: ElementLike) -> int:
    """j in [0, p^r - 1) with g^j = x (baby-step/giant-step)"""
    x = _check(ctx, x)
    if x == 0:
        raise DomainError(ErrorMessages.ZERO_LOG)
    m, table, giant = _baby_steps(ctx)
    y = x
    for i in range(m):
        j = table.get(y)
        if j is not None:
            return (i * m + j) % (ctx.order - 1)
        y = fld_mul(ctx, y, giant)
    raise DomainError(ErrorMessages.NOT_PRIMITIVE.format(g=ctx.g, order=ctx.order))


# ---------------------------------------------------------------------------
# Vectorized tables

def _mult_matrix(ctx: FieldCtx, a: int) -> np.ndarray:
    """Matrix of y -> a*y on coefficient vectors (column i = coeffs of a * t^i)"""
    cols = [_to_coeffs(ctx, fld_mul(ctx, a, ctx.p ** i)) for i in range(ctx.r)]
    return np.array(cols, dtype=np.int64).T


@lru_cache(maxsize=32)
def field_tables(ctx: FieldCtx) -> FieldTables:
    """
    Exp/log/trace tables for vectorized sums and transforms

    The exp table is filled by doubling: the block g^[size, 2*size) is the block
    g^[0, size) multiplied by g^size, one integer matmul per doubling.
    """
    if ctx.order > BoundsConfig.DIRECT_SUM_MAX_ORDER:
        raise BoundExceededError(ErrorMessages.ORDER_TOO_LARGE.format(
            order=ctx.order, bound=BoundsConfig.DIRECT_SUM_MAX_ORDER))
    p, r, order = ctx.p, ctx.r, ctx.order
    n = order - 1
    powers = p ** np.arange(r, dtype=np.int64)
    idx = np.arange(order, dtype=np.int64)
    digits = (idx[:, None] // powers[None, :]) % p

    exp_digits = np.zeros((n, r), dtype=np.int64)
    exp_digits[0, 0] = 1
    size = 1
    while size < n:
        step = min(size, n - size)
        m = _mult_matrix(ctx, fld_pow(ctx, ctx.g, size))
        exp_digits[size:size + step] = (exp_digits[:step] @ m.T) % p
        size += step
    exp = exp_digits @ powers

    log = np.full(order, -1, dtype=np.int64)
    log[exp] = np.arange(n, dtype=np.int64)

    tr_basis = np.array([trace(ctx, p ** i) for i in range(r)], dtype=np.int64)
    tr = (digits @ tr_basis) % p

    neg = ((-digits) % p) @ powers
    one_digits = (-digits) % p
    one_digits[:, 0] = (one_digits[:, 0] + 1) % p
    one_minus = one_digits @ powers

    logger.debug(f"Built lookup tables for {ctx}")
    return FieldTables(digits=digits, exp=exp, log=log, trace=tr, neg=neg, one_minus=one_minus)


def scale_table(ctx: FieldCtx, beta: ElementLike) -> np.ndarray:
    """Array mapping every encoding x to the encoding of beta*x"""
    beta = _check(ctx, beta)
    tables = field_tables(ctx)
    out = np.zeros(ctx.order, dtype=np.int64)
    if beta == 0:
        return out
    units = tables.log >= 0
    out[units] = tables.exp[(tables.log[units] + tables.log[beta]) % (ctx.order - 1)]
    return out


__all__ = [
    'FieldCtx',
    'FieldElement',
    'FieldTables',
    'ElementLike',
    'make_field',
    'fld_add',
    'fld_neg',
    'fld_sub',
    'fld_mul',
    'fld_pow',
    'fld_inv',
    'trace',
    'discrete_log',
    'field_tables',
    'scale_table'
]
