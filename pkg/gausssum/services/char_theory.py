"""
Character Theory
Multiplicative characters of F_{p^r} and Dirichlet characters of Z/nZ,
with conductor and primitivity analysis.

Character values are kept as exact rational angles (turns); conversion to
complex floating point happens only when a value is evaluated.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from jsonschema import ValidationError, validate
from sympy import divisors, factorint, is_primitive_root, multiplicity, totient

from config_constants import BoundsConfig, ErrorMessages
from gausssum.errors import BoundExceededError, DomainError
from gausssum.services.ff_arith import (
    ElementLike, FieldCtx, _check, discrete_log, field_tables, fld_inv, fld_neg
)

logger = logging.getLogger(__name__)


def root_of_unity(turns: Fraction) -> complex:
    """exp(2*pi*i*turns) for an exact rational angle"""
    turns = turns % 1
    if turns == 0:
        return 1 + 0j
    if turns == Fraction(1, 2):
        return -1 + 0j
    if turns == Fraction(1, 4):
        return 1j
    if turns == Fraction(3, 4):
        return -1j
    return cmath.exp(2j * math.pi * turns.numerator / turns.denominator)


# ---------------------------------------------------------------------------
# Multiplicative characters of finite fields

@dataclass(frozen=True)
class MultChar:
    """chi(g^j) = zeta_{p^r-1}^{alpha*j}, chi(0) = 0; alpha = 0 is the trivial character"""

    ctx: FieldCtx
    alpha: int

    def __post_init__(self):
        object.__setattr__(self, 'alpha', self.alpha % (self.ctx.order - 1))

    @property
    def g(self) -> int:
        return self.ctx.g

    @property
    def group_order(self) -> int:
        return self.ctx.order - 1

    @property
    def is_trivial(self) -> bool:
        return self.alpha == 0

    @property
    def is_quadratic(self) -> bool:
        n = self.group_order
        return n % 2 == 0 and self.alpha == n // 2

    def angle(self, x: ElementLike) -> Optional[Fraction]:
        """Exact angle of chi(x) in turns, None at x = 0"""
        x = _check(self.ctx, x)
        if x == 0:
            return None
        return Fraction(self.alpha * discrete_log(self.ctx, x) % self.group_order, self.group_order)

    def evaluate(self, x: ElementLike) -> complex:
        turns = self.angle(x)
        return 0j if turns is None else root_of_unity(turns)

    def inverse(self) -> "MultChar":
        return MultChar(self.ctx, -self.alpha)

    def numerators(self) -> np.ndarray:
        """alpha*log_g(x) mod (p^r-1) for every encoding x (-1 at x = 0)"""
        log = field_tables(self.ctx).log
        out = (self.alpha * log) % self.group_order
        out[0] = -1
        return out

    def values(self) -> np.ndarray:
        """chi(x) for every encoding x"""
        nums = self.numerators()
        vals = np.exp(2j * np.pi * nums / self.group_order)
        vals[0] = 0
        return vals

    def __str__(self) -> str:
        return f"chi[{self.ctx}, g={self.g}, alpha={self.alpha}]"


def mult_char_eval(chi: MultChar, x: ElementLike) -> complex:
    """chi(x) = zeta_{p^r-1}^{alpha*log_g(x)}, 0 at x = 0"""
    return chi.evaluate(x)


def char_mul(chi1: MultChar, chi2: MultChar) -> MultChar:
    """Pointwise product; indices add mod p^r - 1"""
    if chi1.ctx != chi2.ctx:
        raise DomainError(ErrorMessages.CONTEXT_MISMATCH)
    return MultChar(chi1.ctx, chi1.alpha + chi2.alpha)


def quadratic_char(ctx: FieldCtx) -> MultChar:
    """chi(g^j) = (-1)^j"""
    if ctx.p == 2:
        raise DomainError(ErrorMessages.NO_QUADRATIC.format(order=ctx.order))
    return MultChar(ctx, (ctx.order - 1) // 2)


def field_characters(ctx: FieldCtx) -> Iterator[MultChar]:
    for alpha in range(ctx.order - 1):
        yield MultChar(ctx, alpha)


def char_at_minus_one(chi: MultChar) -> complex:
    return chi.evaluate(fld_neg(chi.ctx, 1))


def char_at_inverse(chi: MultChar, beta: ElementLike) -> complex:
    return chi.evaluate(fld_inv(chi.ctx, beta))


# ---------------------------------------------------------------------------
# Dirichlet characters

@dataclass(frozen=True)
class UnitComponent:
    """
    One prime-power factor q = p^e of (Z/nZ)^* with its generators

    Odd p and q = 4 are cyclic (one generator); q = 2^e with e >= 3 uses the
    pair (-1, 5) with orders (2, 2^{e-2}); q = 2 has the trivial unit group.
    """

    prime: int
    exponent: int
    generators: Tuple[int, ...]
    orders: Tuple[int, ...]

    @property
    def modulus(self) -> int:
        return self.prime ** self.exponent

    @property
    def phi(self) -> int:
        return (self.prime - 1) * self.prime ** (self.exponent - 1)


@lru_cache(maxsize=None)
def unit_component(prime: int, exponent: int) -> UnitComponent:
    q = prime ** exponent
    if prime == 2:
        if exponent == 1:
            return UnitComponent(2, 1, (), ())
        if exponent == 2:
            return UnitComponent(2, 2, (3,), (2,))
        return UnitComponent(2, exponent, (q - 1, 5), (2, q // 4))
    phi = (prime - 1) * prime ** (exponent - 1)
    g = next(a for a in range(2, q) if math.gcd(a, prime) == 1 and is_primitive_root(a, q))
    return UnitComponent(prime, exponent, (g,), (phi,))


@lru_cache(maxsize=64)
def component_log_table(component: UnitComponent) -> np.ndarray:
    """
    Exponent vectors of every residue mod q (-1 rows for non-units)

    Built by enumerating products of generator powers, which at desk scale
    replaces a p-adic or 2-adic logarithm.
    """
    q = component.modulus
    k = len(component.generators)
    table = np.full((q, max(k, 1)), -1, dtype=np.int64)
    if k == 0:
        table[1 % q, 0] = 0
        return table
    if k == 1:
        (g,), (order,) = component.generators, component.orders
        x = 1
        for j in range(order):
            table[x, 0] = j
            x = x * g % q
        return table
    (g0, g1), (o0, o1) = component.generators, component.orders
    base = 1
    for i in range(o0):
        x = base
        for j in range(o1):
            table[x] = (i, j)
            x = x * g1 % q
        base = base * g0 % q
    return table


IndexSpec = Union[int, Sequence[int]]


@dataclass(frozen=True)
class DirichletChar:
    """
    Dirichlet character mod n given by (primes, generators, indices)

    components[i] describes (Z/q_iZ)^* and indices[i] holds one index per
    generator of that component, reduced mod the generator order.
    """

    n: int
    components: Tuple[UnitComponent, ...]
    indices: Tuple[Tuple[int, ...], ...]

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(c.prime for c in self.components)

    @property
    def generators(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(c.generators for c in self.components)

    @property
    def is_trivial(self) -> bool:
        return all(a == 0 for idx in self.indices for a in idx)

    @property
    def denominator(self) -> int:
        """lcm of the generator orders: every value is a power of zeta_denominator"""
        orders = [o for c in self.components for o in c.orders]
        return math.lcm(*orders) if orders else 1

    def angle(self, x: int) -> Optional[Fraction]:
        """Exact angle of chi(x) in turns, None when gcd(x, n) != 1"""
        x %= self.n
        if math.gcd(x, self.n) != 1:
            return None
        turns = Fraction(0)
        for comp, idx in zip(self.components, self.indices):
            exps = component_log_table(comp)[x % comp.modulus]
            for a, e, order in zip(idx, exps, comp.orders):
                turns += Fraction(a * int(e), order)
        return turns % 1

    def evaluate(self, x: int) -> complex:
        turns = self.angle(x)
        return 0j if turns is None else root_of_unity(turns)

    def inverse(self) -> "DirichletChar":
        return DirichletChar(self.n, self.components, tuple(
            tuple((-a) % o for a, o in zip(idx, c.orders))
            for c, idx in zip(self.components, self.indices)))

    def numerators(self) -> np.ndarray:
        """chi(x) = zeta_D^{num[x]} with D = denominator; -1 marks non-units"""
        n, big = self.n, self.denominator
        x = np.arange(n, dtype=np.int64)
        num = np.zeros(n, dtype=np.int64)
        unit = np.ones(n, dtype=bool)
        for comp, idx in zip(self.components, self.indices):
            exps = component_log_table(comp)[x % comp.modulus]
            unit &= exps[:, 0] >= 0
            for col, (a, order) in enumerate(zip(idx, comp.orders)):
                num += a * exps[:, col] * (big // order)
        num %= big
        num[~unit] = -1
        return num

    def values(self) -> np.ndarray:
        num = self.numerators()
        vals = np.exp(2j * np.pi * num / self.denominator)
        vals[num < 0] = 0
        return vals

    def to_record(self) -> Dict:
        return {
            "n": self.n,
            "primes": list(self.primes),
            "exponents": [c.exponent for c in self.components],
            "generators": [list(g) for g in self.generators],
            "indices": [list(i) for i in self.indices]
        }

    def __str__(self) -> str:
        return f"dirichlet[n={self.n}, indices={[list(i) for i in self.indices]}]"


CHAR_SPEC_SCHEMA = {
    "type": "object",
    "required": ["n", "indices"],
    "properties": {
        "n": {"type": "integer", "minimum": 2},
        "indices": {
            "type": "array",
            "items": {
                "anyOf": [
                    {"type": "integer", "minimum": 0},
                    {"type": "array", "items": {"type": "integer", "minimum": 0}, "maxItems": 2}
                ]
            }
        }
    }
}


def factor_modulus(n: int) -> List[Tuple[int, int]]:
    """Prime-power factorization of n in ascending prime order"""
    if n < 2:
        raise DomainError(ErrorMessages.BAD_MODULUS.format(n=n))
    if n > BoundsConfig.RING_MAX_MODULUS:
        raise BoundExceededError(ErrorMessages.ORDER_TOO_LARGE.format(
            order=n, bound=BoundsConfig.RING_MAX_MODULUS))
    return sorted(factorint(n).items())


def make_dirichlet_char(n: int, indices: Optional[Sequence[IndexSpec]] = None) -> DirichletChar:
    """
    Build a Dirichlet character from per-component indices in factorization order

    Args:
        n: Modulus (>= 2)
        indices: One entry per prime-power component; an int for cyclic
            components, a pair (alpha_0, alpha_0') for 2^e with e >= 3, and
            0 or an empty sequence for the trivial group mod 2. None gives
            the trivial character.

    Returns:
        DirichletChar
    """
    components = tuple(unit_component(p, e) for p, e in factor_modulus(n))
    if indices is None:
        indices = [()] * len(components)
    if len(indices) != len(components):
        raise DomainError(ErrorMessages.BAD_INDICES.format(indices=list(indices), n=n))

    normalized = []
    for comp, spec in zip(components, indices):
        values = [spec] if isinstance(spec, (int, np.integer)) else list(spec)
        if len(comp.generators) == 0:
            if any(int(v) != 0 for v in values):
                raise DomainError(ErrorMessages.BAD_INDICES.format(indices=list(indices), n=n))
            normalized.append(())
            continue
        if len(values) == 0:
            values = [0] * len(comp.generators)
        if len(values) == 1 and len(comp.generators) == 2:
            values = [values[0], 0]
        if len(values) != len(comp.generators):
            raise DomainError(ErrorMessages.BAD_INDICES.format(indices=list(indices), n=n))
        normalized.append(tuple(int(v) % o for v, o in zip(values, comp.orders)))
    return DirichletChar(n, components, tuple(normalized))


def char_from_record(record: Dict) -> DirichletChar:
    """Build a character from its JSON-shaped record (validated)"""
    try:
        validate(instance=record, schema=CHAR_SPEC_SCHEMA)
    except ValidationError as e:
        raise DomainError(f"Invalid character spec: {e.message}") from e
    return make_dirichlet_char(record["n"], record["indices"])


def dirichlet_characters(n: int) -> Iterator[DirichletChar]:
    """Every character mod n, in lexicographic index order"""
    components = [unit_component(p, e) for p, e in factor_modulus(n)]
    ranges: List[List[Tuple[int, ...]]] = []
    for comp in components:
        if not comp.orders:
            ranges.append([()])
        elif len(comp.orders) == 1:
            ranges.append([(a,) for a in range(comp.orders[0])])
        else:
            ranges.append([(a, b) for a in range(comp.orders[0]) for b in range(comp.orders[1])])

    def _walk(i: int, acc: List[Tuple[int, ...]]):
        if i == len(ranges):
            yield DirichletChar(n, tuple(components), tuple(acc))
            return
        for idx in ranges[i]:
            yield from _walk(i + 1, acc + [idx])

    yield from _walk(0, [])


def dirichlet_eval(chi: DirichletChar, x: int) -> complex:
    """chi(x): 0 when gcd(x, n) != 1, otherwise the product of the component values"""
    return chi.evaluate(x)


def component_chars(chi: DirichletChar) -> List[DirichletChar]:
    """The CRT factors chi_i as characters mod q_i"""
    return [DirichletChar(c.modulus, (c,), (idx,)) for c, idx in zip(chi.components, chi.indices)]


def char_sum(chi: DirichletChar) -> complex:
    """sum over x of chi(x): phi(n) for the trivial character, 0 otherwise"""
    return complex(np.sum(chi.values()))


def conductor(chi: DirichletChar) -> int:
    """
    Smallest divisor c of n such that chi factors through Z/cZ

    Tested from the definition: chi(x) = 1 for every unit x = 1 mod c.
    """
    num = chi.numerators()
    x = np.arange(chi.n)
    for c in divisors(chi.n):
        mask = (num >= 0) & (x % c == 1 % c)
        if np.all(num[mask] == 0):
            return c
    return chi.n


def closed_form_conductor(chi: DirichletChar) -> int:
    """p^{r-s} where p^s exactly divides alpha (odd prime powers only)"""
    if len(chi.components) != 1 or chi.components[0].prime == 2:
        raise DomainError("Closed-form conductor applies to odd prime-power moduli")
    comp, (alpha,) = chi.components[0], chi.indices[0]
    if alpha == 0:
        return 1
    s = multiplicity(comp.prime, alpha)
    return comp.prime ** (comp.exponent - s)


def is_primitive(chi: DirichletChar) -> bool:
    return conductor(chi) == chi.n


def primitive_reduction(chi: DirichletChar) -> DirichletChar:
    """
    The primitive character mod the conductor that induces a prime-power character

    Indices are read off from the values at the generators of the smaller
    group, so the canonical generators mod c need not be reductions of those mod n.
    """
    if len(chi.components) != 1:
        raise DomainError("primitive_reduction expects a prime-power modulus")
    c = conductor(chi)
    if c == chi.n:
        return chi
    if c == 1:
        raise DomainError(ErrorMessages.TRIVIAL_FORBIDDEN)
    p = chi.components[0].prime
    comp = unit_component(p, multiplicity(p, c))
    idx = []
    for g, order in zip(comp.generators, comp.orders):
        turns = chi.angle(g)
        idx.append(int(turns * order) % order)
    return DirichletChar(c, (comp,), (tuple(idx),))


def euler_phi(n: int) -> int:
    return int(totient(n))


__all__ = [
    'root_of_unity',
    'MultChar',
    'mult_char_eval',
    'char_mul',
    'quadratic_char',
    'field_characters',
    'char_at_minus_one',
    'char_at_inverse',
    'UnitComponent',
    'unit_component',
    'component_log_table',
    'DirichletChar',
    'CHAR_SPEC_SCHEMA',
    'factor_modulus',
    'make_dirichlet_char',
    'char_from_record',
    'dirichlet_characters',
    'dirichlet_eval',
    'component_chars',
    'char_sum',
    'conductor',
    'closed_form_conductor',
    'is_primitive',
    'primitive_reduction',
    'euler_phi'
]
