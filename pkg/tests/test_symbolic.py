import itertools
import random
from fractions import Fraction

import pytest

from hilbertqx.symbolic import (LaurentPoly, GroupAlgebraElem,
                                _euler_sum_sides, verify_euler_summation,
                                scholl_idempotent, scholl_sym_part,
                                scholl_inv_part, scholl_check, _perm_sign,
                                verify_operator_identities)


def test_laurent_arithmetic():
    A = LaurentPoly.var("A")
    B = LaurentPoly.var("B", -2)
    one = LaurentPoly.const(1)
    expr = (A + B) * (A - B)
    assert expr.evaluate(3, 1, 2, 1) == 9 - Fraction(1, 16)
    assert (expr - A * A + B * B).is_zero
    assert (A * one - A).is_zero
    assert (LaurentPoly.var("A", 2) - A * A).is_zero
    assert not (A - LaurentPoly.var("Ap")).is_zero


def test_laurent_negative_exponents():
    P = LaurentPoly.var("P", -3)
    v = P.evaluate(1, 1, 1, Fraction(2))
    assert v == Fraction(1, 8)


@pytest.mark.parametrize("k,t", [(2, 0), (3, 1), (4, 1), (4, 2),
                                 (5, 1), (5, 2), (5, 3)])
def test_euler_summation_grid(k, t):
    ok, cert = verify_euler_summation(k, t)
    assert ok and cert.is_zero


@pytest.mark.parametrize("k,t", [(2, 0), (4, 2)])
def test_euler_summation_mutations_fail(k, t):
    lhs, rhs = _euler_sum_sides(k, t)
    assert (lhs - rhs).is_zero
    # perturbed weight exponent on the right side
    _, rhs_wrong = _euler_sum_sides(k + 1, t)
    assert not (lhs - rhs_wrong).is_zero
    # flipped sign
    assert not (lhs + rhs).is_zero
    # dropped correction factor
    A, Ap = LaurentPoly.var("A"), LaurentPoly.var("Ap")
    P1 = LaurentPoly.var("P", k - 1)
    bare = (A - P1 * LaurentPoly.var("A", -1)) * \
           (Ap - P1 * LaurentPoly.var("Ap", -1))
    assert not (lhs - bare).is_zero


def test_group_algebra_structure():
    n = 3
    rng = random.Random(2)
    perms = list(itertools.permutations(range(n)))

    def rand_elem():
        d = {}
        for _ in range(4):
            s = tuple(rng.randint(0, 1) for _ in range(n))
            g = rng.choice(perms)
            d[s, g] = Fraction(rng.randint(-3, 3))
        return GroupAlgebraElem.from_dict(n, d)

    e = GroupAlgebraElem.identity(n)
    for _ in range(10):
        a, b, c = rand_elem(), rand_elem(), rand_elem()
        assert ((a * b) * c - a * (b * c)).is_zero
        assert (a * e - a).is_zero and (e * a - a).is_zero
        assert (a * (b + c) - a * b - a * c).is_zero


def test_sign_character_multiplicative():
    # the projector weight j(s, g) = (-1)^|s| sign(g) is a character
    n = 3
    rng = random.Random(3)
    perms = list(itertools.permutations(range(n)))
    from hilbertqx.symbolic import _j_char
    for _ in range(40):
        s1 = tuple(rng.randint(0, 1) for _ in range(n))
        s2 = tuple(rng.randint(0, 1) for _ in range(n))
        g1, g2 = rng.choice(perms), rng.choice(perms)
        a = GroupAlgebraElem.single(n, s1, g1)
        b = GroupAlgebraElem.single(n, s2, g2)
        (((ss, gg), _),) = (a * b).terms
        assert _j_char(ss, gg) == _j_char(s1, g1) * _j_char(s2, g2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_scholl_projector(n):
    r = scholl_check(n)
    assert r["ok"], r
    assert r["group_order"] == 2 ** n * __import__("math").factorial(n)


def test_scholl_parts_are_orthogonal_projectors():
    n = 3
    sym, inv = scholl_sym_part(n), scholl_inv_part(n)
    eps = scholl_idempotent(n)
    assert (sym * inv - eps).is_zero
    assert (inv * sym - eps).is_zero


def test_perm_sign():
    assert _perm_sign((0, 1, 2)) == 1
    assert _perm_sign((1, 0, 2)) == -1
    assert _perm_sign((1, 2, 0)) == 1


def test_operator_identities_suite():
    r = verify_operator_identities(5, seed=11)
    assert r["ok"], r
    assert all(v == 5 for v in r["counts"].values())
