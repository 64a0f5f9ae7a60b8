"""Weight-variable families of Hilbert expansions and their
specializations: the ball-radius bound, the two-sided Teichmuller-twisted
coefficient container, classical-weight specialization, the ordinary
stabilization identity, and the scalar assembly of the p-adic L-value.

Families here are supplied data (synthetic or imported); their existence
is an input contract, not a construction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .padic import PadicNum, teichmuller, embed, embed_conj, PadicError
from .qexp import (HilbertQExp, ModularQExp, mq_sub, mq_scale, mq_v_p,
                   e_ord_approx, QExpError)
from .quadfield import PrimeSplit, QuadElem, pi_valuation, pi_conj_valuation
from .spectral import OrdinaryData, euler_E0


class FamilyError(ValueError):
    pass


def theta_bound(sigma, h_plus: int, p: int) -> int:
    """Radius exponent [2*sigma*h+ * (18(p-1)/(2(p-2)) * sigma + 2)],
    evaluated exactly over the rationals before the integer part."""
    if p < 3:
        raise FamilyError("p must be >= 3")
    s = Fraction(sigma)
    if s < 0:
        raise FamilyError("slope must be >= 0")
    inner = Fraction(18 * (p - 1), 2 * (p - 2)) * s + 2
    value = 2 * s * h_plus * inner
    return value.numerator // value.denominator


@dataclass(frozen=True)
class LambdaCoeff:
    """Truncated power series in the weight variable X (centered at n0),
    with p-adic coefficients; well-defined on the ball
    val(w - n0) >= scale."""

    series: tuple  # PadicNum coefficients, degree order
    scale: int     # the radius exponent
    center: int

    @property
    def p(self) -> int:
        return self.series[0].p

    def __post_init__(self):
        for m, c in enumerate(self.series):
            if not c.is_zero and c.val < m * self.scale:
                raise FamilyError(
                    f"coefficient of X^{m} has valuation {c.val} < "
                    f"{m * self.scale}: outside the Tate algebra")

    def evaluate(self, w: int) -> PadicNum:
        x = w - self.center
        if x != 0:
            from .padic import val_fraction
            if val_fraction(x, self.p) < self.scale:
                raise FamilyError(
                    f"weight {w} outside the ball around {self.center} "
                    f"of radius exponent {self.scale}")
        acc = PadicNum.zero(self.p, self.series[0].abs_prec)
        xpow = 1
        for c in self.series:
            acc = acc + c * xpow
            xpow *= x
        return acc


def constant_coeff(c: PadicNum, scale: int = 0,
                   center: int = 0) -> LambdaCoeff:
    return LambdaCoeff((c,), scale, center)


@dataclass(frozen=True)
class HilbertFamily:
    """Family of Hilbert expansions over one weight ball; coefficients
    are functions of the classical weight point."""

    split: PrimeSplit
    sigma: Fraction
    sigma_prime: Fraction
    n0: int
    trace_bound: Fraction
    coeffs: dict  # QuadElem -> LambdaCoeff

    def specialize(self, s: int) -> HilbertQExp:
        k = s + 2
        out = {}
        for nu, a in self.coeffs.items():
            c = a.evaluate(s)
            if not c.is_zero:
                out[nu] = c
        return HilbertQExp(self.split, (k, k), self.trace_bound, out, True)


@dataclass(frozen=True)
class LambdaHRecord:
    """One contributing index: the Teichmuller data of its relevant
    embedding and the family coefficient."""

    nu: QuadElem
    teich_inv: PadicNum  # mu(.)^-1
    one_unit: PadicNum   # <.>
    a: LambdaCoeff


@dataclass(frozen=True)
class LambdaH:
    """The two Teichmuller-twisted sums, grouped by trace: first the
    pi'-coprime support twisted by the conjugate embedding, then the
    pi-coprime support twisted by the direct embedding."""

    split: PrimeSplit
    n0: int
    bound: int
    first: dict   # trace -> list[LambdaHRecord], support pi' coprime
    second: dict  # trace -> list[LambdaHRecord], support pi coprime


def build_lambda_h(F: HilbertFamily) -> LambdaH:
    s = F.split
    bound = int(F.trace_bound)
    first: dict = {}
    second: dict = {}
    for nu, a in F.coeffs.items():
        if nu.is_zero():
            continue
        n = int(nu.trace())
        if n > bound:
            continue
        if pi_conj_valuation(nu, s) == 0:
            z = embed_conj(nu, s)
            if not z.is_unit():
                raise FamilyError(
                    f"conjugate embedding of {nu!r} is not a unit")
            mu, one = teichmuller(z)
            first.setdefault(n, []).append(
                LambdaHRecord(nu, mu.inverse(), one, a))
        if pi_valuation(nu, s) == 0:
            z = embed(nu, s)
            if not z.is_unit():
                raise FamilyError(f"embedding of {nu!r} is not a unit")
            mu, one = teichmuller(z)
            second.setdefault(n, []).append(
                LambdaHRecord(nu, mu.inverse(), one, a))
    return LambdaH(s, F.n0, bound, first, second)


def specialize_h(H: LambdaH, j: int, s: int,
                 e_ord_depth: int = 0) -> ModularQExp:
    """Classical specialization: at j = -1 mod (p-1) the Teichmuller
    twist collapses, mu^-1 <z>^j = z^j, and the coefficient at n becomes
    (1/2) sum nu'^j a_nu(s) - (1/2) sum nu^j a_nu(s) over the two
    supports, followed by the finite ordinary projection."""
    p = H.split.p
    if (j + 1) % (p - 1) != 0:
        raise FamilyError(f"j={j} is not -1 mod p-1={p - 1}")
    half = PadicNum.from_rational(p, Fraction(1, 2), H.split.prec)
    out: dict = {}
    for table, sign in ((H.first, 1), (H.second, -1)):
        for n, records in table.items():
            for rec in records:
                c = rec.teich_inv * rec.one_unit ** j * rec.a.evaluate(s)
                c = c * half if sign > 0 else -(c * half)
                out[n] = out[n] + c if n in out else c
    k0 = 2 * j + 2 * (s + 2)
    if k0 < 2:
        raise FamilyError(f"specialized weight {k0} < 2")
    g = ModularQExp(p, k0, H.bound,
                    {n: c for n, c in out.items() if not c.is_zero})
    if e_ord_depth > 0:
        g = e_ord_approx(g, e_ord_depth)
    return g


def hida_stabilization_identity(h: ModularQExp, beta1: PadicNum):
    """Both sides of the ordinary-stabilization identity
    e h^(p) = h - beta1 V_p h, computed along two code paths for
    coefficientwise comparison (the level-N form h is external input)."""
    from .spectral import stabilize_modular
    lhs = stabilize_modular(h, beta1)
    rhs = mq_sub(h, mq_scale(mq_v_p(h), beta1))
    return lhs, rhs


def lp_scalar_assembly(pairing_value: PadicNum, od: OrdinaryData) -> PadicNum:
    """L-value from the supplied pairing number: E0^-1 * pairing."""
    e0 = euler_E0(od)
    if e0.is_zero:
        raise PadicError("E0 vanishes to precision (invalid ordinary data)")
    return pairing_value / e0
