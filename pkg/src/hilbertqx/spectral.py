"""Stabilizations, characteristic polynomials, Euler factors and the
scalar side of the p-adic Abel-Jacobi / Gross-Zagier formula.

Root pairs may live in a quadratic extension of Q_p (single Newton
slope); every Euler factor is symmetric in each pair, so the computed
values are checked to land back in the base ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .padic import (PadicNum, QuadExtNum, RootPair, hecke_roots, ext_scalar,
                    PadicError)
from .qexp import (HilbertQExp, ModularQExp, add, scale, sub, v_pi,
                   v_pi_prime, mq_sub, mq_scale, mq_v_p)


class SpectralError(ValueError):
    pass


@dataclass(frozen=True)
class SpectralData:
    """Hecke eigenvalue data of a Hilbert form at a split prime pair."""

    a_pi: PadicNum
    a_pi_prime: PadicNum
    k: int
    p: int
    roots_pi: RootPair
    roots_pi_prime: RootPair
    sigma: Fraction
    sigma_prime: Fraction

    @property
    def nonordinary(self) -> bool:
        return self.sigma > 0 and self.sigma_prime > 0


@dataclass(frozen=True)
class OrdinaryData:
    """Unit/non-unit root pair of an ordinary classical eigenform."""

    b_p: PadicNum
    k0: int
    beta0: PadicNum
    beta1: PadicNum

    def __post_init__(self):
        if self.beta0.val != 0:
            raise SpectralError("beta0 must be the unit root")
        if self.beta1.val != self.k0 - 1:
            raise SpectralError(
                f"beta1 must have valuation k0-1={self.k0 - 1}, "
                f"got {self.beta1.val}")


def spectral_data(a_pi: PadicNum, a_pi_prime: PadicNum, k: int,
                  precision: int | None = None) -> SpectralData:
    p = a_pi.p
    M = precision if precision is not None else max(a_pi.prec,
                                                   a_pi_prime.prec, 1)
    r = hecke_roots(a_pi, k, p, M)
    rp = hecke_roots(a_pi_prime, k, p, M)
    return SpectralData(a_pi, a_pi_prime, k, p, r, rp,
                        r.slopes[0], rp.slopes[0])


def ordinary_data(b_p: PadicNum, k0: int,
                  precision: int | None = None) -> OrdinaryData:
    p = b_p.p
    M = precision if precision is not None else b_p.prec
    r = hecke_roots(b_p, k0, p, M)
    if r.kind != "split" or r.slopes != (Fraction(0), Fraction(k0 - 1)):
        raise SpectralError("b_p is not ordinary (no unit root)")
    return OrdinaryData(b_p, k0, r.first, r.second)


def slope_of(sd: SpectralData) -> tuple[Fraction, Fraction]:
    return sd.sigma, sd.sigma_prime


# ---------------------------------------------------------------------
# stabilizations
# ---------------------------------------------------------------------


def stabilize_modular(g: ModularQExp, beta_other: PadicNum) -> ModularQExp:
    """(1 - beta_other * V_p) g: turns a T_p-eigenform into a
    U_p-eigenform with the remaining root as eigenvalue."""
    return mq_sub(g, mq_scale(mq_v_p(g), beta_other))


def stabilize_hilbert(f: HilbertQExp, alpha_i, alpha_i_prime) -> HilbertQExp:
    """(1 - alpha_i' V_pi')(1 - alpha_i V_pi) f.  The scalars may lie in
    the quadratic extension; coefficients at pi,pi'-coprime indices are
    untouched."""
    g = sub(f, scale(v_pi(f), alpha_i))
    return sub(g, scale(v_pi_prime(g), alpha_i_prime))


# ---------------------------------------------------------------------
# characteristic polynomials
# ---------------------------------------------------------------------


def _poly_mul(a: list, b: list) -> list:
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            t = x * y
            out[i + j] = t if out[i + j] is None else out[i + j] + t
    return out


def q_f_polynomial(sd: SpectralData) -> list[PadicNum]:
    """Degree-4 polynomial prod_{i,i'}(1 - alpha_i alpha_i' p^(2-2k) x),
    constant term first.  Computed both from the symmetric functions of
    the roots (rational in a_pi, a_pi', p^(k-1)) and from the explicit
    root product; the two must agree to precision."""
    p, k = sd.p, sd.k
    A, Ap = sd.a_pi, sd.a_pi_prime
    P1 = A._coerce(Fraction(p) ** (k - 1))
    c = A._coerce(Fraction(p) ** (2 - 2 * k))

    # elementary symmetric functions of the four products alpha_i*alpha_i'
    e1 = A * Ap
    e2 = P1 * (A * A + Ap * Ap) - 2 * P1 * P1
    e3 = P1 * P1 * A * Ap
    e4 = P1 ** 4
    sym = [A._coerce(1), -(e1 * c), e2 * c ** 2, -(e3 * c ** 3), e4 * c ** 4]

    # explicit product over the roots (in the extension if need be)
    tr, nm = _ext_modulus(sd)
    prod = [ext_scalar(1, tr, nm)]
    for ai in sd.roots_pi.roots():
        for aj in sd.roots_pi_prime.roots():
            r = ext_scalar(ai, tr, nm) * ext_scalar(aj, tr, nm)
            prod = _poly_mul(prod, [ext_scalar(1, tr, nm),
                                    -(r * ext_scalar(c, tr, nm))])
    prod_base = [x.as_base("Q_f coefficient") for x in prod]
    for s, q in zip(sym, prod_base):
        if not s.agrees(q):
            raise SpectralError(
                f"Q_f cross-check failed: {s!r} vs {q!r}")
    return sym


def _ext_modulus(sd: SpectralData):
    """A common quadratic-extension modulus able to hold all four roots.
    When both pairs split this is a dummy modulus (never used by the
    scalars, which stay in the base)."""
    for rp in (sd.roots_pi, sd.roots_pi_prime):
        if rp.kind == "nonsplit":
            return rp.first.tr, rp.first.nm
    one = sd.a_pi._coerce(1)
    return one + one, one  # x^2 = 2x - 1, split dummy


def p_f_polynomial(sd: SpectralData, k: int | None = None) -> list[PadicNum]:
    """(1 - p^(1-k) x) * Q_f(x), degree 5, constant term first."""
    if k is None:
        k = sd.k
    q = q_f_polynomial(sd)
    c = sd.a_pi._coerce(Fraction(sd.p) ** (1 - k))
    lin = [sd.a_pi._coerce(1), -c]
    return _poly_mul(lin, q)


# ---------------------------------------------------------------------
# Euler factors
# ---------------------------------------------------------------------


def euler_E0(od: OrdinaryData) -> PadicNum:
    """1 - beta1/beta0 = 1 - beta1^2 p^(1-k0); both routes must agree."""
    one = od.beta0._coerce(1)
    via_inv = one - od.beta1 / od.beta0
    via_pow = one - od.beta1 * od.beta1 * od.beta0._coerce(
        Fraction(od.b_p.p) ** (1 - od.k0))
    if not via_inv.agrees(via_pow):
        raise SpectralError("E0 dual-formula disagreement")
    return via_inv


def euler_E1(od: OrdinaryData) -> PadicNum:
    return od.beta0._coerce(1) - od.beta1 * od.beta1 * od.beta0._coerce(
        Fraction(od.b_p.p) ** (-od.k0))


def euler_E(sd: SpectralData, beta1: PadicNum, t: int) -> PadicNum:
    """prod_{i,i'} (1 - alpha_i alpha_i' beta1 p^(2-2k+t))."""
    if t < 0:
        raise SpectralError("t must be >= 0")
    tr, nm = _ext_modulus(sd)
    c = ext_scalar(beta1 * beta1._coerce(Fraction(sd.p) ** (2 - 2 * sd.k + t)),
                   tr, nm)
    acc = ext_scalar(1, tr, nm)
    for ai in sd.roots_pi.roots():
        for aj in sd.roots_pi_prime.roots():
            term = ext_scalar(1, tr, nm) - (ext_scalar(ai, tr, nm)
                                            * ext_scalar(aj, tr, nm) * c)
            acc = acc * term
    return acc.as_base("Euler factor E(f,g)")


@dataclass(frozen=True)
class AJScalars:
    t: int
    aj_side: PadicNum   # (-1)^t t! E1/E
    l_side: PadicNum    # (-1)^t t! E0*E1/E


def aj_scalar(sd: SpectralData, od: OrdinaryData, t: int) -> AJScalars:
    """Both theorem-variant scalar factors; t = k - 1 - k0/2."""
    if od.k0 % 2 != 0:
        raise SpectralError("k0 must be even")
    e0 = euler_E0(od)
    e1 = euler_E1(od)
    e = euler_E(sd, od.beta1, t)
    if e.is_zero:
        raise PadicError(
            "E(f,g) vanishes to precision; raise the working precision")
    sign = -1 if t % 2 else 1
    pref = e1._coerce(sign * factorial(t))
    aj = pref * e1 / e
    return AJScalars(t, aj, aj * e0)


def ramanujan_check(b_p: int, k0: int, p: int) -> bool:
    """Archimedean bound |b_p| <= 2 p^((k0-1)/2), checked exactly as
    b_p^2 <= 4 p^(k0-1); needs the exact integer eigenvalue."""
    return b_p * b_p <= 4 * p ** (k0 - 1)
