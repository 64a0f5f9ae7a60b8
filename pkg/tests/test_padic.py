from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hilbertqx.padic import (PadicNum, PadicError, PrecisionError,
                             QuadExtNum, ext_scalar, hensel_root,
                             teichmuller, hecke_roots, embed, embed_conj,
                             val_fraction)
from hilbertqx.quadfield import make_field, split_prime, conjugate


P = 11


def pd(value, prec=4, p=P):
    return PadicNum.from_rational(p, Fraction(value), prec)


def test_representation():
    x = pd(Fraction(33, 4), 3)
    assert (x.val, x.prec) == (1, 3)
    assert x.mantissa == 3 * pow(4, -1, 11 ** 3) % 11 ** 3
    z = PadicNum.zero(11, 5)
    assert z.is_zero and z.abs_prec == 5
    assert pd(0, 4).is_zero


def test_residue_and_truncation():
    x = pd(1234, 4)
    assert x.residue(4) == 1234 % 11 ** 4
    assert x.truncate_abs(2).residue(2) == 1234 % 121
    assert x.truncate_rel(2).prec == 2
    assert pd(121, 3).truncate_abs(2).is_zero
    with pytest.raises(PrecisionError):
        x.residue(9)
    with pytest.raises(PadicError):
        pd(Fraction(1, 11)).residue(2)


rationals = st.fractions(min_value=-400, max_value=400,
                         max_denominator=40).filter(
    lambda q: q.denominator % P != 0)


@given(rationals, rationals)
@settings(max_examples=80, deadline=None)
def test_arithmetic_against_exact_model(qa, qb):
    a, b = pd(qa), pd(qb)
    for op, ex in ((a + b, qa + qb), (a - b, qa - qb), (a * b, qa * qb)):
        if ex == 0:
            assert op.is_zero
        else:
            v = val_fraction(ex, P)
            if v < op.abs_prec:
                assert op.val == v
                assert op.agrees(ex)
    if qb != 0:
        assert (a / b).agrees(qa / qb)
    assert (a ** 3).agrees(qa ** 3)


def test_precision_rules():
    a = PadicNum(P, 0, 5, 3)
    b = PadicNum(P, 2, 7, 5)
    assert (a * b).prec == 3                      # min relative
    assert (a + b).abs_prec == min(3, 7)          # min absolute
    c = PadicNum(P, 0, 1, 3)
    d = PadicNum(P, 0, P ** 2 + 1, 3)
    assert (c - d).val == 2 and (c - d).prec == 1  # cancellation
    assert (c - c).is_zero and (c - c).val == 3


def test_zero_to_precision_propagation():
    z = PadicNum.zero(P, 2)
    a = PadicNum(P, 0, 5, 4)
    assert (z + a).abs_prec == 2
    assert (z * a).is_zero and (z * a).val == 2
    with pytest.raises(PadicError):
        z.inverse()


def test_coerced_scalars_never_bottleneck():
    a = PadicNum(P, 0, 5, 3)
    assert (a * 7).prec == 3
    assert (a + Fraction(1, 2)).abs_prec == 3
    assert (a * Fraction(P ** 5)).prec == 3


def test_hensel_sqrt2_frozen():
    # sqrt(2) mod 7^4 on the branch congruent to 3 mod 7 is 2166
    r = hensel_root(7, [-2, 0, 1], 3, 4)
    assert r.residue(4) == 2166


def test_hensel_rejects_bad_seed():
    with pytest.raises(PadicError):
        hensel_root(7, [-2, 0, 1], 1, 4)
    with pytest.raises(PadicError):
        hensel_root(7, [0, 0, 1], 0, 4)  # double root at 0


@given(st.integers(1, P - 1), st.integers(0, 30))
@settings(max_examples=40, deadline=None)
def test_teichmuller(u0, k):
    z = pd(u0 + P * k, 5)
    mu, one = teichmuller(z)
    assert (mu ** (P - 1)).agrees(1)
    assert mu.residue(1) == z.residue(1)
    assert one.residue(1) == 1
    assert (mu * one).agrees(z)


def test_hecke_roots_frozen_oracle():
    # exhaustive residue search mod 121 for x^2 - 3x + 11: {44, 80}
    r = hecke_roots(pd(3, 2, 11), 2, 11, 2)
    assert r.kind == "split"
    assert r.first.residue(2) == 80
    assert r.second.val == 1 and (r.second.mantissa * 11) % 121 == 44
    assert (r.first + r.second).agrees(3)
    assert (r.first * r.second).agrees(11)
    assert r.slopes == (Fraction(0), Fraction(1))


def _brute_split(a_int: int, k: int, p: int) -> bool:
    """Discriminant-square test with exact integers."""
    d = a_int * a_int - 4 * p ** (k - 1)
    assert d != 0
    v = 0
    while d % p == 0:
        d //= p
        v += 1
    return v % 2 == 0 and pow(d % p, (p - 1) // 2, p) == 1


@given(st.integers(-300, 300).filter(lambda n: n != 0), st.integers(2, 7))
@settings(max_examples=60, deadline=None)
def test_newton_polygon_vs_brute_force(a_int, k):
    if a_int * a_int == 4 * P ** (k - 1):
        return
    r = hecke_roots(pd(a_int, 14), k, P, 14)
    assert (r.kind == "split") == _brute_split(a_int, k, P)
    # both roots satisfy y^2 - a y + p^(k-1) = 0 and slopes sum to k-1
    for root in r.roots():
        res = root * root - pd(a_int, 14) * root + Fraction(P) ** (k - 1)
        assert res.is_zero
    assert sum(r.slopes) == k - 1


def test_hecke_roots_precision_guard():
    with pytest.raises(PrecisionError):
        hecke_roots(PadicNum.zero(P, 1), 4, P, 1)


def test_quad_ext_ring():
    tr, nm = pd(3), pd(11)
    alpha = QuadExtNum(PadicNum.zero(P, 4), pd(1), tr, nm)
    assert (alpha + alpha.conj()).as_base().agrees(3)
    assert (alpha * alpha.conj()).as_base().agrees(11)
    assert (alpha * alpha).agrees(alpha * tr - nm)
    inv = alpha.inverse()
    assert (alpha * inv).agrees(1)
    assert (alpha ** 3).agrees(alpha * alpha * alpha)
    assert (2 * alpha - alpha).agrees(alpha)  # int coercion both sides
    with pytest.raises(PadicError):
        alpha.as_base()


def test_embeddings_are_ring_homs():
    F = make_field(5)
    s = split_prime(F, 11, 5)
    a = F.elem(3) + F.omega() * 2
    b = F.elem(-1) + F.omega() * 7
    for io in (embed, embed_conj):
        assert io(a * b, s).agrees(io(a, s) * io(b, s))
        assert io(a + b, s).agrees(io(a, s) + io(b, s))
    assert embed_conj(a, s).agrees(embed(conjugate(a), s))
    assert embed(F.sqrt_d(), s) * embed(F.sqrt_d(), s) == embed(F.elem(5), s)
    assert embed(s.pi_gen, s).val == 1
    assert embed_conj(s.pi_gen, s).val == 0


def test_embed_rejects_p_denominator():
    F = make_field(5)
    s = split_prime(F, 11, 3)
    with pytest.raises(PadicError):
        embed(F.elem(Fraction(1, 11)), s)
