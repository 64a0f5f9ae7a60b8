import random
from fractions import Fraction

import pytest

from hilbertqx.padic import PadicNum
from hilbertqx.qexp import (HilbertQExp, ModularQExp, QExpError, BoundError,
                            make_hilbert_qexp, make_modular_qexp, add,
                            scale, sub, v_pi, v_pi_prime, v_p, u_pi,
                            u_pi_prime, u_p, mq_v_p, mq_u_p, hecke_t_pi,
                            hecke_t_pi_prime, t_p, deplete_pi,
                            deplete_pi_prime, deplete_p, theta, theta_prime,
                            theta_inverse, theta_prime_inverse, restrict,
                            e_ord_approx, make_formal_eigenform,
                            primitive_vector, aj_integrand,
                            kernel_lemma_check)
from hilbertqx.quadfield import (make_field, split_prime,
                                 enumerate_totally_positive, pi_valuation,
                                 pi_conj_valuation)
from hilbertqx.symbolic import random_expansion

P, PREC = 11, 3


@pytest.fixture(scope="module")
def split():
    return split_prime(make_field(5), P, PREC)


@pytest.fixture()
def rng():
    return random.Random(20240)


def trim(f, bound):
    """Restriction of a known expansion to a smaller completeness bound."""
    return HilbertQExp(f.split, f.weight, Fraction(bound),
                       {nu: c for nu, c in f.coeffs.items()
                        if nu.trace() <= Fraction(bound)}, f.cuspidal)


def same_below_common_bound(f, g):
    b = min(f.trace_bound, g.trace_bound)
    return not sub(trim(f, b), trim(g, b)).coeffs


def test_constructor_validation(split):
    F = split.field
    one = PadicNum.from_rational(P, 1, PREC)
    with pytest.raises(QExpError):
        make_hilbert_qexp(split, (2, 2), 10, {F.elem(-1): one})
    with pytest.raises(QExpError):
        make_hilbert_qexp(split, (2, 2), 10, {F.elem(Fraction(1, 2)): one})
    with pytest.raises(QExpError):
        make_hilbert_qexp(split, (2, 2), 2, {F.elem(5): one})
    with pytest.raises(QExpError):
        make_hilbert_qexp(split, (2, 2), 10, {F.zero(): one})
    f = make_hilbert_qexp(split, (2, 2), 10,
                          {F.elem(1): PadicNum.zero(P, PREC)})
    assert not f.coeffs
    with pytest.raises(QExpError):
        make_modular_qexp(P, 2, 5, {6: one})


def test_uv_inverses(split, rng):
    f = random_expansion(split, rng, bound=30)
    for v, u in ((v_pi, u_pi), (v_pi_prime, u_pi_prime), (v_p, u_p)):
        g = u(v(f))
        assert same_below_common_bound(g, f)
    g = u_p(v_pi_prime(v_pi(f)))   # U_p = U_pi U_pi' on V_p-image
    assert same_below_common_bound(g, f)


def test_depletion_algebra(split, rng):
    f = random_expansion(split, rng, bound=30)
    for dep, v, u in ((deplete_pi, v_pi, u_pi),
                      (deplete_pi_prime, v_pi_prime, u_pi_prime),
                      (deplete_p, v_p, u_p)):
        d = dep(f)
        assert same_below_common_bound(d, sub(f, v(u(f))))
        assert dep(d) == d  # idempotent
    both = deplete_pi(deplete_pi_prime(f))
    incl_excl = add(sub(sub(f, v_pi(u_pi(f))), v_pi_prime(u_pi_prime(f))),
                    v_p(u_p(f)))
    assert same_below_common_bound(both, incl_excl)


def test_hecke_operator_shape(split, rng):
    f = random_expansion(split, rng, bound=30)
    k = 2
    pk = PadicNum.from_rational(P, Fraction(P) ** (k - 1), PREC)
    t = hecke_t_pi(f, k)
    expected = add(u_pi(f), scale(v_pi(f), pk))
    assert t == expected
    with pytest.raises(QExpError):
        hecke_t_pi(theta(f), k)  # non-parallel weight


def test_theta_weight_and_inverse(split, rng):
    f = deplete_pi_prime(random_expansion(split, rng, bound=25))
    assert theta(f).weight == (4, 2)
    assert theta_prime(f).weight == (2, 4)
    g = theta_prime_inverse(f, 2)
    assert g.weight == (2, -2)
    assert theta_prime(theta_prime(g)) == HilbertQExp(
        split, (2, 2), f.trace_bound, f.coeffs, True)
    with pytest.raises(QExpError):
        theta_inverse(f, 1)  # not pi-depleted
    h = theta_inverse(deplete_pi(f), 1)
    assert h.weight == (0, 2)
    assert theta(h) == HilbertQExp(split, (2, 2), f.trace_bound,
                                   deplete_pi(f).coeffs, True)


def test_theta_inverse_no_precision_loss(split, rng):
    f = deplete_pi(random_expansion(split, rng, bound=25))
    g = theta_inverse(f, 3)
    for nu, c in g.coeffs.items():
        assert c.abs_prec == f.coeffs[nu].abs_prec


def test_restrict(split, rng):
    f = random_expansion(split, rng, bound=20, weight=(3, 5))
    g = restrict(f)
    assert isinstance(g, ModularQExp)
    assert g.weight == 8 and g.bound == 20
    # additivity and trace fibers
    f2 = random_expansion(split, rng, bound=20, weight=(3, 5))
    lhs = restrict(add(f, f2))
    rhs_c = {}
    for h in (f, f2):
        for nu, c in h.coeffs.items():
            n = int(nu.trace())
            rhs_c[n] = rhs_c[n] + c if n in rhs_c else c
    for n, c in lhs.coeffs.items():
        assert c.agrees(rhs_c[n])


def test_modular_shifts():
    one = PadicNum.from_rational(P, 1, PREC)
    g = make_modular_qexp(P, 2, 30, {1: one, P: one * 5, 12: one * 7})
    assert mq_u_p(g).coeffs == {1: one * 5}
    back = mq_u_p(mq_v_p(g))
    assert back.coeffs == g.coeffs and back.bound == g.bound
    tp = t_p(g, 2, PREC)
    assert tp.bound == 30 // P             # U_p shrinks the bound
    assert list(tp.coeffs) == [1] and tp.coeffs[1].agrees(5)


def test_e_ord_bound_guard():
    one = PadicNum.from_rational(P, 1, PREC)
    g = make_modular_qexp(P, 2, P ** 2, {1: one})
    assert e_ord_approx(g, 2).bound == 1
    with pytest.raises(BoundError):
        e_ord_approx(g, 3)


def eigenform(split, a_int=3, ap_int=7, k=2, bound=40, prec=PREC):
    F = split.field
    a = PadicNum.from_rational(P, a_int, prec)
    ap = PadicNum.from_rational(P, ap_int, prec)
    seed = {F.one(): PadicNum.from_rational(P, 1, prec),
            F.elem(2) + F.omega() * -1: PadicNum.from_rational(P, 4, prec)}
    return make_formal_eigenform(split, seed, a, ap, k, bound), a, ap


def test_eigenform_eigenvalues(split):
    f, a, ap = eigenform(split)
    assert same_below_common_bound(hecke_t_pi(f, 2), scale(f, a))
    assert same_below_common_bound(hecke_t_pi_prime(f, 2), scale(f, ap))


def test_eigenform_depletion_identity(split):
    # (1 - a_pi V_pi + p^(k-1) V_pi^2) f = pi-depletion of f
    f, a, ap = eigenform(split)
    pk = PadicNum.from_rational(P, P, PREC)
    lhs = add(sub(f, scale(v_pi(f), a)), scale(v_pi(v_pi(f)), pk))
    assert same_below_common_bound(lhs, deplete_pi(f))


def test_eigenform_rejects_imprimitive_seed(split):
    a = PadicNum.from_rational(P, 3, PREC)
    with pytest.raises(QExpError):
        make_formal_eigenform(split, {split.pi_gen: a}, a, a, 2, 30)


def test_primitive_vector_shape(split, rng):
    f = deplete_pi_prime(random_expansion(split, rng, bound=20,
                                          weight=(4, 4)))
    pv = primitive_vector(f, 2)
    assert (pv.n, pv.n_prime) == (2, 2)
    assert len(pv.components) == 3
    assert pv.components[0].weight == (4, 2)
    assert pv.components[2].weight == (4, -2)
    with pytest.raises(QExpError):
        primitive_vector(f, 3)


def test_aj_integrand_support(split):
    f, _, _ = eigenform(split)
    g = aj_integrand(f, 0)
    assert g.weight == 2
    assert all(n % P != 0 for n in g.coeffs)  # prime-to-p support


@pytest.mark.parametrize("t", [0, 1, 2])
def test_kernel_lemma(split, rng, t):
    f = random_expansion(split, rng, bound=25, weight=(2 * t + 4, 2 * t + 4))
    assert kernel_lemma_check(f, t)


def test_bound_propagation_conservative(split, rng):
    f = random_expansion(split, rng, bound=30)
    g = v_pi(f)
    # every index of f survives multiplied by pi_gen unless pushed over
    for nu, c in f.coeffs.items():
        mu = nu * split.pi_gen
        if mu.trace() <= g.trace_bound:
            assert g.coeffs[mu] == c
    assert u_pi(g).trace_bound <= f.trace_bound
    assert v_p(f).trace_bound == f.trace_bound * P
