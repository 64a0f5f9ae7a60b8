"""Truncated q-expansions of Hilbert and classical modular forms, and
the operator algebra acting on them: the index-shift operators V and U
at pi, pi' and p, Hecke operators, depletions, theta operators and their
inverses, restriction to the modular curve, and a finite ordinary
projector.

Truncation bounds propagate exactly: V multiplies the completeness bound
by a rational lower bound of the smaller real embedding of the shift
element, U divides by a rational upper bound of the larger one, so every
declared output bound is conservative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, comb

from .quadfield import (PrimeSplit, QuadElem, enumerate_totally_positive,
                        pi_valuation, pi_conj_valuation, mul_elem,
                        div_if_integral)
from .padic import PadicNum, QuadExtNum, embed, embed_conj, PadicError


class QExpError(ValueError):
    pass


class BoundError(QExpError):
    pass


def _is_zero_coeff(c) -> bool:
    return c.is_zero


@dataclass(frozen=True)
class HilbertQExp:
    """Finite map from totally positive integral indices (trace <= bound)
    to p-adic coefficients; complete below trace_bound."""

    split: PrimeSplit
    weight: tuple
    trace_bound: Fraction
    coeffs: dict  # QuadElem -> PadicNum | QuadExtNum
    cuspidal: bool = True

    @property
    def field(self):
        return self.split.field

    def coeff(self, nu: QuadElem):
        return self.coeffs.get(nu)

    def __eq__(self, other):
        if not isinstance(other, HilbertQExp):
            return NotImplemented
        return (self.split == other.split and self.weight == other.weight
                and self.trace_bound == other.trace_bound
                and self.coeffs == other.coeffs
                and self.cuspidal == other.cuspidal)


@dataclass(frozen=True)
class ModularQExp:
    """Truncated classical expansion: positive integer indices <= bound."""

    p: int
    weight: int
    bound: int
    coeffs: dict  # int -> PadicNum

    def __eq__(self, other):
        if not isinstance(other, ModularQExp):
            return NotImplemented
        return (self.p == other.p and self.weight == other.weight
                and self.bound == other.bound and self.coeffs == other.coeffs)


def make_hilbert_qexp(split: PrimeSplit, weight, trace_bound, coeffs,
                      cuspidal: bool = True) -> HilbertQExp:
    """Validating constructor; drops coefficients indistinguishable from 0."""
    bound = Fraction(trace_bound)
    out = {}
    for nu, c in coeffs.items():
        if nu.is_zero():
            if cuspidal:
                raise QExpError("cuspidal expansion cannot carry a "
                                "constant term")
        else:
            if not nu.is_integral():
                raise QExpError(f"non-integral index {nu!r}")
            if not nu.is_totally_positive():
                raise QExpError(f"index {nu!r} is not totally positive")
            if nu.trace() > bound:
                raise QExpError(f"index {nu!r} exceeds trace bound {bound}")
        if not _is_zero_coeff(c):
            out[nu] = c
    return HilbertQExp(split, tuple(weight), bound, out, cuspidal)


def make_modular_qexp(p: int, weight: int, bound: int,
                      coeffs) -> ModularQExp:
    out = {}
    for n, c in coeffs.items():
        if n < 1 or n > bound:
            raise QExpError(f"index {n} out of range [1, {bound}]")
        if not _is_zero_coeff(c):
            out[n] = c
    return ModularQExp(p, weight, bound, out)


# ---------------------------------------------------------------------
# bound propagation helpers
# ---------------------------------------------------------------------

_ENCLOSURE_BITS = 48


@lru_cache(maxsize=None)
def _emb_bounds(elem: QuadElem):
    lo1, hi1 = elem.embedding_interval(_ENCLOSURE_BITS)
    lo2, hi2 = elem.embedding_interval(_ENCLOSURE_BITS, conj=True)
    return min(lo1, lo2), max(hi1, hi2)


def _v_bound(bound: Fraction, gen: QuadElem) -> Fraction:
    lo, _ = _emb_bounds(gen)
    return bound * lo


def _u_bound(bound: Fraction, gen: QuadElem) -> Fraction:
    _, hi = _emb_bounds(gen)
    return bound / hi


# ---------------------------------------------------------------------
# linear structure
# ---------------------------------------------------------------------


def add(f: HilbertQExp, g: HilbertQExp) -> HilbertQExp:
    if f.split != g.split or f.weight != g.weight:
        raise QExpError("incompatible expansions")
    bound = min(f.trace_bound, g.trace_bound)
    out = {}
    for nu in set(f.coeffs) | set(g.coeffs):
        if nu.trace() > bound:
            continue
        a, b = f.coeffs.get(nu), g.coeffs.get(nu)
        c = a + b if (a is not None and b is not None) else (a if b is None
                                                            else b)
        if not _is_zero_coeff(c):
            out[nu] = c
    return HilbertQExp(f.split, f.weight, bound, out,
                       f.cuspidal and g.cuspidal)


def scale(f: HilbertQExp, c) -> HilbertQExp:
    out = {}
    for nu, a in f.coeffs.items():
        v = c * a if isinstance(c, QuadExtNum) else a * c
        if not _is_zero_coeff(v):
            out[nu] = v
    return HilbertQExp(f.split, f.weight, f.trace_bound, out, f.cuspidal)


def sub(f: HilbertQExp, g: HilbertQExp) -> HilbertQExp:
    return add(f, scale(g, -1))


def mq_add(f: ModularQExp, g: ModularQExp) -> ModularQExp:
    if f.p != g.p or f.weight != g.weight:
        raise QExpError("incompatible expansions")
    bound = min(f.bound, g.bound)
    out = {}
    for n in set(f.coeffs) | set(g.coeffs):
        if n > bound:
            continue
        a, b = f.coeffs.get(n), g.coeffs.get(n)
        c = a + b if (a is not None and b is not None) else (a if b is None
                                                            else b)
        if not _is_zero_coeff(c):
            out[n] = c
    return ModularQExp(f.p, f.weight, bound, out)


def mq_scale(f: ModularQExp, c) -> ModularQExp:
    out = {}
    for n, a in f.coeffs.items():
        v = c * a if isinstance(c, QuadExtNum) else a * c
        if not _is_zero_coeff(v):
            out[n] = v
    return ModularQExp(f.p, f.weight, f.bound, out)


def mq_sub(f: ModularQExp, g: ModularQExp) -> ModularQExp:
    return mq_add(f, mq_scale(g, -1))


# ---------------------------------------------------------------------
# index shifts V and U
# ---------------------------------------------------------------------


def _v_shift(f: HilbertQExp, gen: QuadElem, new_bound: Fraction):
    out = {}
    for nu, c in f.coeffs.items():
        mu = mul_elem(nu, gen)
        if mu.trace() <= new_bound:
            out[mu] = c
    return HilbertQExp(f.split, f.weight, new_bound, out, f.cuspidal)


def _u_shift(f: HilbertQExp, gen: QuadElem, new_bound: Fraction):
    out = {}
    for mu, c in f.coeffs.items():
        if mu.is_zero():
            out[mu] = c
            continue
        nu = div_if_integral(mu, gen)
        if nu is not None and nu.trace() <= new_bound:
            out[nu] = c
    return HilbertQExp(f.split, f.weight, new_bound, out, f.cuspidal)


def v_pi(f: HilbertQExp) -> HilbertQExp:
    g = f.split.pi_gen
    return _v_shift(f, g, _v_bound(f.trace_bound, g))


def v_pi_prime(f: HilbertQExp) -> HilbertQExp:
    g = f.split.pi_conj_gen
    return _v_shift(f, g, _v_bound(f.trace_bound, g))


def v_p(f: HilbertQExp) -> HilbertQExp:
    return _v_shift(f, f.field.elem(f.split.p), f.trace_bound * f.split.p)


def u_pi(f: HilbertQExp) -> HilbertQExp:
    g = f.split.pi_gen
    return _u_shift(f, g, _u_bound(f.trace_bound, g))


def u_pi_prime(f: HilbertQExp) -> HilbertQExp:
    g = f.split.pi_conj_gen
    return _u_shift(f, g, _u_bound(f.trace_bound, g))


def u_p(f: HilbertQExp) -> HilbertQExp:
    return _u_shift(f, f.field.elem(f.split.p),
                    f.trace_bound / f.split.p)


def mq_v_p(g: ModularQExp) -> ModularQExp:
    return ModularQExp(g.p, g.weight, g.bound * g.p,
                       {n * g.p: c for n, c in g.coeffs.items()})


def mq_u_p(g: ModularQExp) -> ModularQExp:
    bound = g.bound // g.p
    return ModularQExp(g.p, g.weight, bound,
                       {n // g.p: c for n, c in g.coeffs.items()
                        if n % g.p == 0 and n // g.p <= bound})


# ---------------------------------------------------------------------
# Hecke operators
# ---------------------------------------------------------------------


def _p_power(split: PrimeSplit, e: int) -> PadicNum:
    return PadicNum.from_rational(split.p, Fraction(split.p) ** e, split.prec)


def hecke_t_pi(f: HilbertQExp, k: int) -> HilbertQExp:
    if f.weight[0] != f.weight[1]:
        raise QExpError("Hecke operator needs parallel weight")
    return add(u_pi(f), scale(v_pi(f), _p_power(f.split, k - 1)))


def hecke_t_pi_prime(f: HilbertQExp, k: int) -> HilbertQExp:
    if f.weight[0] != f.weight[1]:
        raise QExpError("Hecke operator needs parallel weight")
    return add(u_pi_prime(f), scale(v_pi_prime(f), _p_power(f.split, k - 1)))


def t_p(g: ModularQExp, k0: int, prec: int) -> ModularQExp:
    c = PadicNum.from_rational(g.p, Fraction(g.p) ** (k0 - 1), prec)
    return mq_add(mq_u_p(g), mq_scale(mq_v_p(g), c))


# ---------------------------------------------------------------------
# depletions
# ---------------------------------------------------------------------


def deplete_pi(f: HilbertQExp) -> HilbertQExp:
    out = {nu: c for nu, c in f.coeffs.items()
           if nu.is_zero() or pi_valuation(nu, f.split) == 0}
    return HilbertQExp(f.split, f.weight, f.trace_bound, out, f.cuspidal)


def deplete_pi_prime(f: HilbertQExp) -> HilbertQExp:
    out = {nu: c for nu, c in f.coeffs.items()
           if nu.is_zero() or pi_conj_valuation(nu, f.split) == 0}
    return HilbertQExp(f.split, f.weight, f.trace_bound, out, f.cuspidal)


def deplete_p(f: HilbertQExp) -> HilbertQExp:
    p = f.split.p

    def p_divides(nu: QuadElem) -> bool:
        return (nu.x / p).denominator == 1 and (nu.y / p).denominator == 1

    out = {nu: c for nu, c in f.coeffs.items()
           if nu.is_zero() or not p_divides(nu)}
    return HilbertQExp(f.split, f.weight, f.trace_bound, out, f.cuspidal)


# ---------------------------------------------------------------------
# theta operators
# ---------------------------------------------------------------------


def theta(f: HilbertQExp) -> HilbertQExp:
    out = {}
    for nu, c in f.coeffs.items():
        if nu.is_zero():
            continue
        v = embed(nu, f.split) * c
        if not _is_zero_coeff(v):
            out[nu] = v
    k, kp = f.weight
    return HilbertQExp(f.split, (k + 2, kp), f.trace_bound, out, True)


def theta_prime(f: HilbertQExp) -> HilbertQExp:
    out = {}
    for nu, c in f.coeffs.items():
        if nu.is_zero():
            continue
        v = embed_conj(nu, f.split) * c
        if not _is_zero_coeff(v):
            out[nu] = v
    k, kp = f.weight
    return HilbertQExp(f.split, (k, kp + 2), f.trace_bound, out, True)


def theta_inverse(f: HilbertQExp, power: int) -> HilbertQExp:
    """Divide coefficients by embed(nu)^power; needs pi-depleted input so
    the divisors are units (no precision loss)."""
    out = {}
    for nu, c in f.coeffs.items():
        if nu.is_zero():
            raise QExpError("theta inverse undefined on a constant term")
        if pi_valuation(nu, f.split) != 0:
            raise QExpError(f"input is not pi-depleted at index {nu!r}")
        m = embed(nu, f.split) ** (-power)
        out[nu] = m * c if isinstance(c, QuadExtNum) else c * m
    k, kp = f.weight
    return HilbertQExp(f.split, (k - 2 * power, kp), f.trace_bound, out, True)


def theta_prime_inverse(f: HilbertQExp, power: int) -> HilbertQExp:
    """Mirror of theta_inverse at pi': needs pi'-depleted input."""
    out = {}
    for nu, c in f.coeffs.items():
        if nu.is_zero():
            raise QExpError("theta inverse undefined on a constant term")
        if pi_conj_valuation(nu, f.split) != 0:
            raise QExpError(f"input is not pi'-depleted at index {nu!r}")
        m = embed_conj(nu, f.split) ** (-power)
        out[nu] = m * c if isinstance(c, QuadExtNum) else c * m
    k, kp = f.weight
    return HilbertQExp(f.split, (k, kp - 2 * power), f.trace_bound, out, True)


# ---------------------------------------------------------------------
# restriction and ordinary projection
# ---------------------------------------------------------------------


def restrict(f: HilbertQExp) -> ModularQExp:
    """Collapse q^nu to q^Tr(nu); weight k + k'."""
    bound = int(f.trace_bound)  # floor for positive rationals
    if Fraction(bound) > f.trace_bound:
        bound -= 1
    out: dict = {}
    for nu, c in f.coeffs.items():
        if nu.is_zero():
            continue
        n = int(nu.trace())
        if n > bound:
            continue
        out[n] = out[n] + c if n in out else c
    out = {n: c for n, c in out.items() if not _is_zero_coeff(c)}
    return ModularQExp(f.split.p, f.weight[0] + f.weight[1], bound, out)


def e_ord_approx(g: ModularQExp, depth: int) -> ModularQExp:
    """U_p^(depth!) as a finite stand-in for the ordinary projector."""
    reps = factorial(depth)
    if g.bound < g.p ** reps:
        raise BoundError(
            f"ordinary projection at depth {depth} needs bound >= "
            f"p^{reps} = {g.p ** reps}, got {g.bound}")
    out = g
    for _ in range(reps):
        out = mq_u_p(out)
    return out


# ---------------------------------------------------------------------
# formal eigenforms
# ---------------------------------------------------------------------


def _eigen_seq(a: PadicNum, pk: PadicNum, length: int) -> list:
    """A_0=1, A_1=a, A_{i+1} = a*A_i - p^(k-1)*A_{i-1}: the coefficient
    ladder along powers of a split prime."""
    seq = [a._coerce(1), a]
    while len(seq) < length + 1:
        seq.append(a * seq[-1] - pk * seq[-2])
    return seq


def make_formal_eigenform(split: PrimeSplit, seed: dict, a_pi: PadicNum,
                          a_pi_prime: PadicNum, k: int,
                          trace_bound) -> HilbertQExp:
    """Extend a seed supported on pi,pi'-primitive indices to a
    simultaneous eigenform of T_pi and T_pi' within the bound."""
    bound = Fraction(trace_bound)
    for nu in seed:
        if pi_valuation(nu, split) or pi_conj_valuation(nu, split):
            raise QExpError(f"seed index {nu!r} is not primitive")
    pk = _p_power(split, k - 1)
    indices = enumerate_totally_positive(split.field, bound)
    max_pow = 1
    for nu in indices:
        max_pow = max(max_pow, pi_valuation(nu, split),
                      pi_conj_valuation(nu, split))
    seq_pi = _eigen_seq(a_pi, pk, max_pow)
    seq_pip = _eigen_seq(a_pi_prime, pk, max_pow)
    out = {}
    for nu in indices:
        i = pi_valuation(nu, split)
        j = pi_conj_valuation(nu, split)
        base = nu
        for _ in range(i):
            base = base / split.pi_gen
        for _ in range(j):
            base = base / split.pi_conj_gen
        c0 = seed.get(base)
        if c0 is None:
            continue
        c = seq_pi[i] * seq_pip[j] * c0
        if not _is_zero_coeff(c):
            out[nu] = c
    return HilbertQExp(split, (k, k), bound, out, True)


# ---------------------------------------------------------------------
# primitives and the Abel-Jacobi integrand
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class PrimitiveVector:
    """Components of the one-variable antiderivative ladder: component j
    carries the coefficient of the local basis monomial with j
    second-kind factors in the conjugate variable.  Pure bookkeeping; no
    geometry is represented."""

    components: tuple  # n'+1 HilbertQExp, one theta'-antiderivative each
    n: int
    n_prime: int


def primitive_vector(f_depleted: HilbertQExp, n_prime: int) -> PrimitiveVector:
    k, kp = f_depleted.weight
    n = k - 2
    if kp != n_prime + 2:
        raise QExpError(
            f"weight {f_depleted.weight} inconsistent with n'={n_prime}")
    comps = []
    for j in range(n_prime + 1):
        c = theta_prime_inverse(f_depleted, j + 1)
        sign = -1 if j % 2 else 1
        comps.append(scale(c, sign * factorial(j) * comb(n_prime, j)))
    return PrimitiveVector(tuple(comps), n, n_prime)


def aj_integrand(f: HilbertQExp, t: int) -> ModularQExp:
    """restrict( (theta'^-(1+t) f^[pi'] - theta^-(1+t) f^[pi]) / 2 )."""
    if f.weight[0] != f.weight[1]:
        raise QExpError("integrand needs parallel weight")
    if t < 0:
        raise QExpError("t must be >= 0")
    half = PadicNum.from_rational(f.split.p, Fraction(1, 2), f.split.prec)
    lhs = restrict(theta_prime_inverse(deplete_pi_prime(f), t + 1))
    rhs = restrict(theta_inverse(deplete_pi(f), t + 1))
    return mq_sub(mq_scale(lhs, half), mq_scale(rhs, half))


def kernel_lemma_check(f: HilbertQExp, t: int) -> bool:
    """The restricted theta-antiderivative of the pi-depletion of
    V_pi' f has no coefficient at indices divisible by p: every
    contributing index pi'*nu with p | Tr(pi'*nu) would force pi | nu,
    contradicting the depletion."""
    g = restrict(theta_inverse(deplete_pi(v_pi_prime(f)), t + 1))
    return all(c.is_zero for n, c in g.coeffs.items() if n % g.p == 0)
