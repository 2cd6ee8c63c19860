import math
from fractions import Fraction

import numpy as np
import pytest
from sympy import primerange

from gausssum.errors import DomainError
from gausssum.services.ff_arith import fld_mul, make_field
from gausssum.services.char_theory import (
    MultChar, char_at_minus_one, char_from_record, char_mul, char_sum, closed_form_conductor,
    component_chars, conductor, dirichlet_characters, euler_phi, field_characters, is_primitive,
    dirichlet_eval, make_dirichlet_char, mult_char_eval, primitive_reduction, quadratic_char, unit_component
)


def test_worked_example_character_table(chi_f5):
    expected = [0, 1, 1j, -1j, -1]
    assert np.allclose(chi_f5.values(), expected, atol=1e-12)
    assert mult_char_eval(chi_f5, 2) == 1j
    assert chi_f5.angle(3) == Fraction(3, 4)
    assert chi_f5.angle(0) is None


def test_field_character_is_multiplicative(f9):
    for chi in field_characters(f9):
        for x in range(1, 9):
            for y in range(1, 9):
                assert abs(chi.evaluate(fld_mul(f9, x, y)) - chi.evaluate(x) * chi.evaluate(y)) < 1e-12


def test_char_mul_and_inverse(f9):
    chi, psi = MultChar(f9, 3), MultChar(f9, 7)
    assert char_mul(chi, psi).alpha == 2
    assert char_mul(chi, chi.inverse()).is_trivial
    with pytest.raises(DomainError):
        char_mul(chi, MultChar(make_field(7), 1))


def test_quadratic_character():
    ctx = make_field(7)
    chi = quadratic_char(ctx)
    assert chi.alpha == 3 and chi.is_quadratic
    residues = {x * x % 7 for x in range(1, 7)}
    for x in range(1, 7):
        assert chi.evaluate(x) == (1 if x in residues else -1)
    assert char_at_minus_one(chi) == -1
    with pytest.raises(DomainError):
        quadratic_char(make_field(2, 2))


def test_unit_components():
    assert unit_component(2, 1).generators == ()
    assert unit_component(2, 2).generators == (3,)
    assert unit_component(2, 5).generators == (31, 5)
    assert unit_component(2, 5).orders == (2, 8)
    assert unit_component(3, 2).generators == (2,)
    assert unit_component(5, 2).phi == 20


def test_dirichlet_mod_8():
    chi = make_dirichlet_char(8, [(1, 0)])
    assert chi.evaluate(7) == -1
    assert chi.evaluate(5) == 1
    assert chi.evaluate(3) == -1
    assert chi.evaluate(4) == 0


def test_mod_two_component():
    chi = make_dirichlet_char(6, [0, 1])
    assert chi.evaluate(5) == -1
    assert chi.evaluate(1) == 1
    assert chi.evaluate(3) == 0
    with pytest.raises(DomainError):
        make_dirichlet_char(6, [1, 1])


@pytest.mark.parametrize('n', [24, 32, 45, 64])
def test_dirichlet_characters_multiplicative(n, rng):
    units = [x for x in range(n) if math.gcd(x, n) == 1]
    chars = list(dirichlet_characters(n))
    assert len(chars) == euler_phi(n)
    for chi in chars[::3]:
        for x, y in rng.choice(units, size=(20, 2)):
            assert abs(chi.evaluate(x * y) - chi.evaluate(x) * chi.evaluate(y)) < 1e-12


@pytest.mark.slow
def test_dirichlet_characters_every_modulus_up_to_500():
    rng = np.random.default_rng(3)
    for n in range(2, 501):
        units = np.array([x for x in range(n) if math.gcd(x, n) == 1])
        ys = rng.choice(units, size=min(8, len(units)), replace=False)
        products = np.outer(units, ys) % n
        for chi in dirichlet_characters(n):
            v = chi.values()
            assert np.allclose(v[products], np.outer(v[units], v[ys]), atol=1e-12)
            expected = euler_phi(n) if chi.is_trivial else 0
            assert abs(char_sum(chi) - expected) < 1e-9


def test_characters_distinct_and_orthogonal():
    chars = list(dirichlet_characters(16))
    table = np.array([chi.values() for chi in chars])
    gram = table @ table.conj().T
    assert np.allclose(gram, 8 * np.eye(len(chars)), atol=1e-9)


def test_char_sum():
    for chi in dirichlet_characters(15):
        expected = euler_phi(15) if chi.is_trivial else 0
        assert abs(char_sum(chi) - expected) < 1e-9


def test_bad_indices():
    with pytest.raises(DomainError):
        make_dirichlet_char(15, [1])
    with pytest.raises(DomainError):
        make_dirichlet_char(1)


def test_char_from_record():
    chi = char_from_record({"n": 8, "indices": [[1, 0]]})
    assert chi.evaluate(7) == -1
    assert char_from_record(chi.to_record()) == chi
    with pytest.raises(DomainError):
        char_from_record({"n": 1, "indices": []})


def test_component_chars_recombine():
    chi = make_dirichlet_char(45, [2, 1])
    parts = component_chars(chi)
    assert [c.n for c in parts] == [9, 5]
    for x in range(45):
        product = parts[0].evaluate(x) * parts[1].evaluate(x)
        assert abs(chi.evaluate(x) - product) < 1e-12


@pytest.mark.parametrize('q', [9, 25, 27])
def test_conductor_matches_closed_form(q):
    for chi in dirichlet_characters(q):
        assert conductor(chi) == closed_form_conductor(chi)


def _prime_powers(limit, odd=False):
    for p in primerange(3 if odd else 2, limit + 1):
        r = 1
        while p ** r <= limit:
            yield p, r
            r += 1


@pytest.mark.slow
def test_conductor_closed_form_every_odd_prime_power():
    for p, r in _prime_powers(729, odd=True):
        for chi in dirichlet_characters(p ** r):
            assert conductor(chi) == closed_form_conductor(chi)


def test_conductor_mod_prime():
    for p in primerange(2, 200):
        for chi in dirichlet_characters(p):
            expected = 1 if chi.is_trivial else p
            assert conductor(chi) == expected
            assert is_primitive(chi) == (not chi.is_trivial)


def test_two_power_conductors():
    assert conductor(make_dirichlet_char(8, [(1, 0)])) == 4
    assert conductor(make_dirichlet_char(8, [(0, 1)])) == 8
    assert conductor(make_dirichlet_char(8, [(1, 1)])) == 8
    assert conductor(make_dirichlet_char(8)) == 1


def test_primitive_reduction_induces_same_values():
    chi = make_dirichlet_char(9, [3])
    assert conductor(chi) == 3 and not is_primitive(chi)
    reduced = primitive_reduction(chi)
    assert reduced.n == 3 and is_primitive(reduced)
    for x in range(9):
        if math.gcd(x, 9) == 1:
            assert abs(reduced.evaluate(x) - chi.evaluate(x)) < 1e-12


def test_primitive_reduction_two_power():
    chi = make_dirichlet_char(32, [(1, 4)])
    reduced = primitive_reduction(chi)
    assert reduced.n == conductor(chi) == 8
    for x in range(1, 32, 2):
        assert abs(reduced.evaluate(x) - chi.evaluate(x)) < 1e-12


def test_primitive_reduction_rejects_trivial():
    with pytest.raises(DomainError):
        primitive_reduction(make_dirichlet_char(9))


def test_dirichlet_eval_periodic_and_zero_off_units():
    chi = make_dirichlet_char(20, [1, 1])
    for x in range(-20, 40):
        assert dirichlet_eval(chi, x) == chi.evaluate(x % 20)
        if math.gcd(x, 20) != 1:
            assert dirichlet_eval(chi, x) == 0
