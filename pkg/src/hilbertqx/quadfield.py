"""Exact arithmetic in a real quadratic field Q(sqrt(D)).

Elements are stored in integral-basis coordinates x + y*omega, where
omega = sqrt(D) for D = 2, 3 mod 4 and omega = (1 + sqrt(D))/2 for
D = 1 mod 4.  All decisions (total positivity, integrality, divisibility
by a split prime) are made with exact rational arithmetic; no floating
point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


class QuadFieldError(ValueError):
    pass


def _is_squarefree(n: int) -> bool:
    if n % 4 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 2
    return True


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def sqrt_interval(n: int, bits: int = 40) -> tuple[Fraction, Fraction]:
    """Exact rational enclosure lo < sqrt(n) < hi of width 2**-bits."""
    scale = 1 << bits
    r = isqrt(n * scale * scale)
    lo = Fraction(r, scale)
    hi = Fraction(r + 1, scale)
    return lo, hi


@dataclass(frozen=True)
class QuadField:
    """The field Q(sqrt(D)) with its ring of integers Z[omega]."""

    D: int
    disc: int
    basis_shift: int  # 1 iff omega = (1+sqrt(D))/2
    fu_x: Fraction    # fundamental unit, integral-basis coordinates
    fu_y: Fraction
    has_norm_minus_one: bool

    @property
    def omega_trace(self) -> int:
        return self.basis_shift

    @property
    def omega_norm(self) -> int:
        # omega * conj(omega)
        return (1 - self.D) // 4 if self.basis_shift else -self.D

    def elem(self, x, y=0) -> "QuadElem":
        return QuadElem(self, Fraction(x), Fraction(y))

    def omega(self) -> "QuadElem":
        return self.elem(0, 1)

    def zero(self) -> "QuadElem":
        return self.elem(0)

    def one(self) -> "QuadElem":
        return self.elem(1)

    def sqrt_d(self) -> "QuadElem":
        """sqrt(D) as a field element."""
        if self.basis_shift:
            return QuadElem(self, Fraction(-1), Fraction(2))
        return self.omega()

    def fund_unit(self) -> "QuadElem":
        return QuadElem(self, self.fu_x, self.fu_y)


@dataclass(frozen=True)
class QuadElem:
    """x + y*omega with exact rational coordinates."""

    field: QuadField
    x: Fraction
    y: Fraction

    def __hash__(self):
        # elements are dict keys on every operator hot path; the stock
        # dataclass hash re-hashes the whole field record each time
        h = self.__dict__.get("_h")
        if h is None:
            h = hash((self.field.D, self.x, self.y))
            object.__setattr__(self, "_h", h)
        return h

    def _wrap(self, x, y) -> "QuadElem":
        return QuadElem(self.field, Fraction(x), Fraction(y))

    def __add__(self, other):
        other = self._coerce(other)
        return self._wrap(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        other = self._coerce(other)
        return self._wrap(self.x - other.x, self.y - other.y)

    def __neg__(self):
        return self._wrap(-self.x, -self.y)

    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.field.D != self.field.D:
                raise QuadFieldError("mixed fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self._wrap(Fraction(other), 0)
        raise TypeError(type(other))

    def __mul__(self, other):
        other = self._coerce(other)
        t, n = self.field.omega_trace, self.field.omega_norm
        # omega^2 = t*omega - n
        yy = self.y * other.y
        return self._wrap(
            self.x * other.x - n * yy,
            self.x * other.y + self.y * other.x + t * yy,
        )

    __rmul__ = __mul__
    __radd__ = __add__

    def __truediv__(self, other):
        other = self._coerce(other)
        nrm = other.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero element")
        c = other.conjugate()
        num = self * c
        return self._wrap(num.x / nrm, num.y / nrm)

    def __pow__(self, e: int):
        if e < 0:
            return self.field.one() / (self ** (-e))
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conjugate(self) -> "QuadElem":
        t = self.field.omega_trace
        return self._wrap(self.x + t * self.y, -self.y)

    def trace(self) -> Fraction:
        t = self.__dict__.get("_tr")
        if t is None:
            t = 2 * self.x + self.field.omega_trace * self.y
            object.__setattr__(self, "_tr", t)
        return t

    def norm(self) -> Fraction:
        t, n = self.field.omega_trace, self.field.omega_norm
        return self.x * self.x + t * self.x * self.y + n * self.y * self.y

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def ab_coords(self) -> tuple[Fraction, Fraction]:
        """Coordinates (a, b) with self = a + b*sqrt(D)."""
        if self.field.basis_shift:
            return self.x + self.y / 2, self.y / 2
        return self.x, self.y

    def sign_embedding(self, conj: bool = False) -> int:
        """Exact sign of the real embedding sending sqrt(D) to +sqrt(D)
        (or -sqrt(D) when conj=True)."""
        a, b = self.ab_coords()
        if conj:
            b = -b
        D = self.field.D
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2*D (they can't be equal,
        # D is not a square)
        if a * a > b * b * D:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    def is_totally_positive(self) -> bool:
        return self.sign_embedding() > 0 and self.sign_embedding(conj=True) > 0

    def embedding_interval(self, bits: int = 40, conj: bool = False):
        """Rational enclosure of the real embedding."""
        a, b = self.ab_coords()
        if conj:
            b = -b
        lo, hi = sqrt_interval(self.field.D, bits)
        if b >= 0:
            return a + b * lo, a + b * hi
        return a + b * hi, a + b * lo

    def serialize(self) -> list[int]:
        return [self.x.numerator, self.x.denominator,
                self.y.numerator, self.y.denominator]

    def __repr__(self):
        return f"QuadElem(D={self.field.D}, {self.x} + {self.y}*w)"


def _fundamental_unit(D: int, shift: int, limit: int = 10 ** 6):
    """Smallest unit > 1 of Z[omega], by ascending search through the
    Pell equations (2x+ty)^2 - D*y^2 = +-4/denominator pattern.  This
    enumerates the same convergents the continued fraction of sqrt(D)
    produces, smallest first."""
    for y in range(1, limit):
        if shift:
            # norm(x + y*omega) = x^2 + xy - y^2 (D-1)/4 = eps
            # => (2x + y)^2 - D y^2 = 4*eps
            for eps in (-1, 1):
                s2 = D * y * y + 4 * eps
                if s2 <= 0:
                    continue
                s = isqrt(s2)
                if s * s != s2 or (s - y) % 2 != 0:
                    continue
                x = (s - y) // 2  # 2x + y = s > 0 branch
                return Fraction(x), Fraction(y), eps
        else:
            for eps in (-1, 1):
                s2 = D * y * y + eps
                if s2 <= 0:
                    continue
                x = isqrt(s2)
                if x * x != s2:
                    continue
                return Fraction(x), Fraction(y), eps
    raise QuadFieldError(f"fundamental unit search exhausted (limit {limit})")


def make_field(D: int, require_norm_minus_one: bool = True) -> QuadField:
    """Build Q(sqrt(D)) with discriminant, integral basis and fundamental
    unit; rejects non-squarefree D and (by default) fields without a unit
    of norm -1."""
    if D <= 1 or not _is_squarefree(D):
        raise QuadFieldError(f"D={D} is not a squarefree integer > 1")
    shift = 1 if D % 4 == 1 else 0
    disc = D if shift else 4 * D
    fx, fy, eps = _fundamental_unit(D, shift)
    has_minus = eps == -1
    if require_norm_minus_one and not has_minus:
        raise QuadFieldError(
            f"D={D}: fundamental unit has norm +1; field lacks a unit of "
            "norm -1 (standing hypothesis)")
    return QuadField(D, disc, shift, fx, fy, has_minus)


def trace(v: QuadElem) -> Fraction:
    return v.trace()


def norm(v: QuadElem) -> Fraction:
    return v.norm()


def conjugate(v: QuadElem) -> QuadElem:
    return v.conjugate()


def is_totally_positive(v: QuadElem) -> bool:
    return v.is_totally_positive()


def enumerate_totally_positive(F: QuadField, trace_bound,
                               include_zero: bool = False) -> list[QuadElem]:
    """All integral totally positive elements of trace <= trace_bound,
    sorted by (trace, y-coordinate).

    Completeness: a totally positive v with trace T satisfies
    (e1 - e2)^2 = T^2 - 4*norm(v) <= T^2, and e1 - e2 = y*sqrt(disc),
    so y^2 * disc <= T^2 <= trace_bound^2 bounds the y loop exactly.
    """
    B = Fraction(trace_bound)
    if B < 0:
        raise QuadFieldError("trace_bound must be >= 0")
    out = []
    if include_zero:
        out.append(F.zero())
    if B > 0:
        t = F.omega_trace
        # y^2 <= B^2 / disc, exact
        ymax_num = (B * B) / F.disc
        ymax = isqrt(ymax_num.numerator // ymax_num.denominator)
        while (ymax + 1) * (ymax + 1) * F.disc <= B * B:
            ymax += 1
        for y in range(-ymax, ymax + 1):
            # 1 <= trace = 2x + t*y <= B
            lo = Fraction(1 - t * y, 2)
            hi = (B - t * y) / 2
            x = lo.numerator // lo.denominator
            if Fraction(x) < lo:
                x += 1
            while Fraction(x) <= hi:
                v = F.elem(x, y)
                if v.is_totally_positive():
                    out.append(v)
                x += 1
    out.sort(key=lambda v: (v.trace(), v.y))
    return out


def _sqrt_mod_p(D: int, p: int) -> int:
    """Smallest square root of D mod p in [1, (p-1)/2], by Tonelli-Shanks
    (exhaustive for the small primes used here is fine, but lifting wants
    a deterministic canonical choice)."""
    a = D % p
    for r in range(1, p):
        if r * r % p == a:
            return min(r, p - r)
    raise QuadFieldError(f"{D} is not a square mod {p}")


def _hensel_sqrt_lift(D: int, r: int, p: int, M: int) -> int:
    """Lift r with r^2 = D (mod p) to a root mod p^M."""
    k = 1
    x = r % p
    while k < M:
        k = min(2 * k, M)
        mod = p ** k
        x = (x - (x * x - D) * pow(2 * x, -1, mod)) % mod
    return x


@dataclass(frozen=True)
class PrimeSplit:
    """A split rational prime p = pi * pi' with totally positive
    generators and a fixed p-adic embedding convention.

    sqrt_base is the canonical square root of D mod p in [1, (p-1)/2];
    the embedding iota_pi sends sqrt(D) to its Hensel lift.  pi_gen is
    the generator annihilated by iota_pi (valuation 1 under iota_pi)."""

    field: QuadField
    p: int
    prec: int
    sqrt_base: int
    sqrtD_mod: int  # Hensel lift of sqrt_base mod p^prec
    pi_gen: QuadElem
    pi_conj_gen: QuadElem

    def sqrt_lift(self, M: int) -> int:
        """sqrt(D) mod p^M under the fixed sign convention."""
        if M == self.prec:
            return self.sqrtD_mod
        return _hensel_sqrt_lift(self.field.D, self.sqrt_base, self.p, M)

    def omega_residue(self, M: int) -> int:
        w = self.sqrt_lift(M)
        mod = self.p ** M
        if self.field.basis_shift:
            return (1 + w) * pow(2, -1, mod) % mod
        return w % mod


def _residue_mod_p(v: QuadElem, s: PrimeSplit) -> int:
    """v mod p under iota_pi, for p-integral v (base precision)."""
    w = s.omega_residue(1)
    p = s.p
    num = v.x.numerator * v.y.denominator + v.y.numerator * v.x.denominator * w
    den = v.x.denominator * v.y.denominator
    if den % p == 0:
        raise QuadFieldError("element not p-integral")
    return num * pow(den, -1, p) % p


def split_prime(F: QuadField, p: int, precision: int = 3,
                search_bound: int = 2000) -> PrimeSplit:
    """Split p = pi*pi' in F, with totally positive generators, the
    canonical square root of D mod p, and its Hensel lift mod p^M."""
    if not _is_prime(p) or p == 2:
        raise QuadFieldError(f"p={p} is not an odd prime")
    if F.D % p == 0:
        raise QuadFieldError(f"prime {p} is ramified in Q(sqrt({F.D}))")
    if pow(F.D % p, (p - 1) // 2, p) != 1:
        raise QuadFieldError(
            f"prime {p} does not split in Q(sqrt({F.D})) (inert)")
    r = _sqrt_mod_p(F.D, p)
    lift = _hensel_sqrt_lift(F.D, r, p, precision)

    t, n = F.omega_trace, F.omega_norm
    disc = F.disc
    cand = None
    for y in range(0, search_bound):
        for eps in (1, -1):
            s2 = disc * y * y + 4 * eps * p
            if s2 < 0:
                continue
            s = isqrt(s2)
            if s * s != s2:
                continue
            for ssgn in (s, -s):
                num = -t * y + ssgn
                if num % 2 != 0:
                    continue
                v = F.elem(num // 2, y)
                if abs(v.norm()) == p:
                    cand = v
                    break
            if cand is not None:
                break
        if cand is not None:
            break
    if cand is None:
        raise QuadFieldError(
            f"no generator of norm +-{p} found within search bound "
            f"{search_bound} (is the narrow class number 1?)")

    v = cand
    if v.norm() == -p:
        if not F.has_norm_minus_one:
            raise QuadFieldError(
                "norm -p generator found but field has no norm -1 unit")
        v = v * F.fund_unit()
    if v.sign_embedding() < 0:
        v = -v
    assert v.is_totally_positive() and v.norm() == p

    # placeholder split to evaluate the base residue
    probe = PrimeSplit(F, p, precision, r, lift, F.zero(), F.zero())
    if _residue_mod_p(v, probe) == 0:
        pi, pic = v, v.conjugate()
    else:
        pi, pic = v.conjugate(), v
        assert _residue_mod_p(pi, probe) == 0
    return PrimeSplit(F, p, precision, r, lift, pi, pic)


def _ipair(v: QuadElem):
    """Integer coordinates, or None when a denominator shows up."""
    if v.x.denominator == 1 and v.y.denominator == 1:
        return v.x.numerator, v.y.numerator
    return None


def mul_elem(v: QuadElem, gen: QuadElem) -> QuadElem:
    """Product with an integer fast path (hot in the shift operators)."""
    a, b = _ipair(v), _ipair(gen)
    if a is None or b is None:
        return v * gen
    t, n = v.field.omega_trace, v.field.omega_norm
    yy = a[1] * b[1]
    return QuadElem(v.field, Fraction(a[0] * b[0] - n * yy),
                    Fraction(a[0] * b[1] + a[1] * b[0] + t * yy))


def div_if_integral(v: QuadElem, gen: QuadElem):
    """v/gen when the quotient is integral, else None."""
    a, b = _ipair(v), _ipair(gen)
    if a is None or b is None:
        q = v / gen
        return q if q.is_integral() else None
    F = v.field
    t, n = F.omega_trace, F.omega_norm
    # multiply by the conjugate (bx + t*by, -by), divide by the norm
    cx, cy = b[0] + t * b[1], -b[1]
    yy = a[1] * cy
    nx = a[0] * cx - n * yy
    ny = a[0] * cy + a[1] * cx + t * yy
    nrm = b[0] * b[0] + t * b[0] * b[1] + n * b[1] * b[1]
    if nx % nrm or ny % nrm:
        return None
    return QuadElem(F, Fraction(nx // nrm), Fraction(ny // nrm))


def _divide_if_integral(v: QuadElem, gen: QuadElem):
    return div_if_integral(v, gen)


def pi_valuation(v: QuadElem, s: PrimeSplit) -> int:
    """pi-adic valuation of a nonzero integral element, by repeated exact
    division by the fixed generator."""
    if v.is_zero():
        raise QuadFieldError("infinite valuation (element is zero)")
    count = 0
    while True:
        q = div_if_integral(v, s.pi_gen)
        if q is None:
            return count
        v = q
        count += 1


def pi_conj_valuation(v: QuadElem, s: PrimeSplit) -> int:
    if v.is_zero():
        raise QuadFieldError("infinite valuation (element is zero)")
    count = 0
    while True:
        q = div_if_integral(v, s.pi_conj_gen)
        if q is None:
            return count
        v = q
        count += 1
