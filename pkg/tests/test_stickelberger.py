"""Pairing table, determinant kernel, and equivariance."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from resolvend import faults
from resolvend.cyclotomic import CycContext
from resolvend.errors import InvalidElementError, NonIntegralExponentError
from resolvend.groups import FiniteAbelianGroup, element_order
from resolvend.stickelberger import (
    DetKernelBasis,
    char_exponent,
    char_inv,
    char_mul,
    char_pow,
    char_value,
    characters,
    det_kernel_basis,
    det_map,
    equivariance_check,
    integrality_check,
    stickelberger_map,
    stickelberger_pairing,
    transpose_on_basis,
)


def test_character_group_arithmetic():
    group = FiniteAbelianGroup((3, 9))
    chars = list(characters(group))
    assert len(chars) == 27
    assert chars[0] == (0, 0)
    a, b = (1, 4), (2, 7)
    assert char_mul(group, a, b) == (0, 2)
    assert char_mul(group, a, char_inv(group, a)) == (0, 0)
    assert char_pow(group, a, 5) == (2, 2)
    assert char_pow(group, a, -1) == char_inv(group, a)


def test_char_exponent_is_bilinear():
    group = FiniteAbelianGroup((3, 9))
    m = group.exponent
    rng = random.Random("char-bilinear")
    chars = list(characters(group))
    elems = list(group.elements())
    for _ in range(80):
        chi, psi = rng.choice(chars), rng.choice(chars)
        s, t = rng.choice(elems), rng.choice(elems)
        assert (char_exponent(group, char_mul(group, chi, psi), s)
                == (char_exponent(group, chi, s) + char_exponent(group, psi, s)) % m)
        assert (char_exponent(group, chi, group.add(s, t))
                == (char_exponent(group, chi, s) + char_exponent(group, chi, t)) % m)


def test_char_value_needs_enough_roots():
    group = FiniteAbelianGroup((9,))
    ctx = CycContext(9)
    assert char_value(group, (1,), (1,), ctx) == ctx.zeta_power(1)
    assert char_value(group, (2,), (4,), ctx) == ctx.zeta_power(8)
    with pytest.raises(InvalidElementError):
        char_value(group, (1,), (1,), CycContext(3))


def test_pairing_table_on_c3():
    group = FiniteAbelianGroup((3,))
    table = {
        ((0,), (0,)): Fraction(0), ((0,), (1,)): Fraction(0), ((0,), (2,)): Fraction(0),
        ((1,), (0,)): Fraction(0), ((1,), (1,)): Fraction(1, 3), ((1,), (2,)): Fraction(-1, 3),
        ((2,), (0,)): Fraction(0), ((2,), (1,)): Fraction(-1, 3), ((2,), (2,)): Fraction(1, 3),
    }
    for (chi, s), want in table.items():
        assert stickelberger_pairing(group, chi, s) == want


def test_pairing_is_centered_and_antisymmetric():
    group = FiniteAbelianGroup((3, 9))
    ctx = CycContext(9)
    for chi in characters(group):
        for s in group.elements():
            v = stickelberger_pairing(group, chi, s, ctx)
            n = element_order(group, s)
            assert abs(v) <= Fraction(n - 1, 2 * n)
            assert v * n == int(v * n)
            # conjugate character negates the centered pairing (odd order)
            assert stickelberger_pairing(group, char_inv(group, chi), s, ctx) == -v


def test_pairing_sign_fault():
    group = FiniteAbelianGroup((3,))
    clean = stickelberger_pairing(group, (1,), (1,))
    with faults.inject(faults.PAIRING_SIGN_FLIP):
        assert stickelberger_pairing(group, (1,), (1,)) == -clean
    assert stickelberger_pairing(group, (1,), (1,)) == clean


def test_det_map():
    group = FiniteAbelianGroup((3, 3))
    assert det_map(group, {(1, 2): 1}) == (1, 2)
    assert det_map(group, {(1, 2): 1, (2, 1): 1}) == (0, 0)
    assert det_map(group, {(1, 0): 2, (0, 1): 3}) == (2, 0)
    assert det_map(group, {}) == (0, 0)


def test_theta_shape():
    group = FiniteAbelianGroup((5,))
    theta = stickelberger_map(group, {(1,): 1})
    assert set(theta) == set(group.elements())
    assert theta[group.identity] == 0
    assert theta[(1,)] == Fraction(1, 5)


def test_integrality_matches_trivial_det_exhaustively():
    """The theorem, checked directly on every psi with small coefficients."""
    group = FiniteAbelianGroup((3,))
    ctx = CycContext(3)
    chars = list(characters(group))
    for coeffs in itertools.product(range(-2, 3), repeat=len(chars)):
        psi = {chi: c for chi, c in zip(chars, coeffs) if c}
        trivial = det_map(group, psi) == group.identity
        assert integrality_check(group, psi, ctx) == trivial


def test_integrality_matches_trivial_det_sampled():
    group = FiniteAbelianGroup((5,))
    ctx = CycContext(5)
    chars = list(characters(group))
    rng = random.Random("stickelberger-c5")
    for _ in range(200):
        psi = {chi: rng.randrange(-2, 3) for chi in chars}
        trivial = det_map(group, psi) == group.identity
        assert integrality_check(group, psi, ctx) == trivial


def test_kernel_basis_structure():
    for spec in ((3,), (5,), (3, 3)):
        group = FiniteAbelianGroup(spec)
        basis = det_kernel_basis(group)
        assert len(basis.vectors) == len(basis.characters) == group.order
        assert basis.lattice_index() == group.order
        for combo in basis.combos():
            assert det_map(group, combo) == group.identity
            assert integrality_check(group, combo)


def test_kernel_membership():
    group = FiniteAbelianGroup((3,))
    basis = DetKernelBasis(group)
    assert not basis.contains({(1,): 1})
    assert basis.contains({(1,): 3})
    assert basis.contains({(1,): 1, (2,): 1})  # det = 3 = 0 mod 3
    assert basis.contains({})
    for combo in basis.combos():
        assert basis.contains(combo)
    # membership agrees with the determinant over a sampled set
    rng = random.Random("kernel-members")
    chars = list(characters(group))
    for _ in range(100):
        psi = {chi: rng.randrange(-3, 4) for chi in chars}
        assert basis.contains(psi) == (det_map(group, psi) == group.identity)


def test_equivariance():
    group = FiniteAbelianGroup((3, 9))
    assert equivariance_check(group, 2)
    assert equivariance_check(group, 7)
    with pytest.raises(InvalidElementError):
        equivariance_check(group, 3)


def test_transpose_on_basis():
    group = FiniteAbelianGroup((3,))
    basis = DetKernelBasis(group)
    ones = {s: Fraction(1) for s in group.elements()}
    out = transpose_on_basis(ones, group, basis, pow, lambda a, b: a * b, Fraction(1))
    assert out == [Fraction(1)] * len(basis.vectors)
    # a vector outside the kernel produces a fractional exponent
    basis.vectors = [(0, 1, 0)]
    twos = {s: Fraction(2) for s in group.elements()}
    with pytest.raises(NonIntegralExponentError):
        transpose_on_basis(twos, group, basis, pow, lambda a, b: a * b, Fraction(1))
