"""Fixed-precision p-adic rationals, Hensel lifting, Hecke-polynomial
roots, Teichmuller decomposition, and the two embeddings of a real
quadratic field into Q_p.

A nonzero value is stored as p^val * mantissa with the mantissa a unit
known mod p^prec (relative precision).  A value that is indistinguishable
from 0 is stored as "zero to absolute precision N".  Arithmetic follows
the ultrametric bookkeeping rules: relative precision of a product is the
minimum of the factors', absolute precision of a sum is the minimum of
the summands'.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .quadfield import PrimeSplit, QuadElem


class PadicError(ValueError):
    pass


class PrecisionError(PadicError):
    pass


def _val_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val_fraction(q, p: int) -> int:
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of 0")
    return _val_int(q.numerator, p) - _val_int(q.denominator, p)


@dataclass(frozen=True)
class PadicNum:
    p: int
    val: int        # valuation; for a zero value: the absolute precision
    mantissa: int   # unit in [1, p^prec), 0 for a zero value
    prec: int       # relative precision in digits, 0 for a zero value

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, p: int, abs_prec: int) -> "PadicNum":
        return cls(p, abs_prec, 0, 0)

    @classmethod
    def from_rational(cls, p: int, value, prec: int) -> "PadicNum":
        """Exact rational at relative precision prec (absolute for 0)."""
        value = Fraction(value)
        if value == 0:
            return cls.zero(p, prec)
        v = val_fraction(value, p)
        unit = value / Fraction(p) ** v
        mod = p ** prec
        m = unit.numerator % mod * pow(unit.denominator % mod, -1, mod) % mod
        return cls(p, v, m, prec)

    @classmethod
    def from_abs(cls, p: int, residue, abs_prec: int) -> "PadicNum":
        """A value known modulo p^abs_prec (residue may be a p-integral
        rational)."""
        mod = p ** abs_prec
        residue = Fraction(residue)
        if residue.denominator % p == 0:
            raise PadicError("residue not p-integral")
        r = residue.numerator % mod * pow(residue.denominator % mod, -1,
                                          mod) % mod
        if r == 0:
            return cls.zero(p, abs_prec)
        v = _val_int(r, p)
        rel = abs_prec - v
        m = (r // p ** v) % p ** rel
        return cls(p, v, m, rel)

    # -- structure ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0

    @property
    def abs_prec(self) -> int:
        return self.val + self.prec  # for zero values prec == 0

    def _check(self, other: "PadicNum"):
        if self.p != other.p:
            raise PadicError("mixed primes")

    def _coerce(self, other):
        if isinstance(other, PadicNum):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            # exact scalar: give it enough precision never to be the
            # bottleneck of the operation
            if other == 0:
                return PadicNum.zero(self.p, self.abs_prec)
            v = val_fraction(other, self.p)
            rel = max(self.prec, self.abs_prec - v, 1)
            return PadicNum.from_rational(self.p, other, rel)
        return None

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        A = min(self.abs_prec, o.abs_prec)
        if self.is_zero and o.is_zero:
            return PadicNum.zero(p, A)
        if self.is_zero or o.is_zero:
            x = o if self.is_zero else self
            if x.val >= A:
                return PadicNum.zero(p, A)
            rel = A - x.val
            return PadicNum(p, x.val, x.mantissa % p ** rel, rel)
        shift = min(self.val, o.val)
        s = (self.mantissa * p ** (self.val - shift)
             + o.mantissa * p ** (o.val - shift))
        digits = A - shift
        s %= p ** digits
        if s == 0:
            return PadicNum.zero(p, A)
        v = _val_int(s, p)
        rel = digits - v
        return PadicNum(p, shift + v, (s // p ** v) % p ** rel, rel)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        return PadicNum(self.p, self.val,
                        (-self.mantissa) % self.p ** self.prec, self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.p
        if self.is_zero and o.is_zero:
            return PadicNum.zero(p, self.val + o.val)
        if self.is_zero or o.is_zero:
            z, x = (self, o) if self.is_zero else (o, self)
            return PadicNum.zero(p, z.val + x.val)
        rel = min(self.prec, o.prec)
        m = self.mantissa * o.mantissa % p ** rel
        return PadicNum(p, self.val + o.val, m, rel)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNum":
        if self.is_zero:
            raise PadicError(
                f"division by zero-to-precision (p^{self.val})")
        m = pow(self.mantissa, -1, self.p ** self.prec)
        return PadicNum(self.p, -self.val, m, self.prec)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = PadicNum.from_rational(self.p, 1,
                                     self.prec if self.prec else self.val)
        base = self
        if e == 0:
            return out
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- views -------------------------------------------------------

    def is_unit(self) -> bool:
        return not self.is_zero and self.val == 0

    def truncate_rel(self, prec: int) -> "PadicNum":
        """Reduce relative precision (absolute precision for zeros)."""
        if self.is_zero:
            return PadicNum.zero(self.p, min(self.val, prec))
        if prec >= self.prec:
            return self
        m = self.mantissa % self.p ** prec
        if m == 0:  # cannot happen for a unit mantissa with prec >= 1
            return PadicNum.zero(self.p, self.val + prec)
        return PadicNum(self.p, self.val, m, prec)

    def truncate_abs(self, abs_prec: int) -> "PadicNum":
        if self.is_zero:
            return PadicNum.zero(self.p, min(self.val, abs_prec))
        if abs_prec >= self.abs_prec:
            return self
        if self.val >= abs_prec:
            return PadicNum.zero(self.p, abs_prec)
        return PadicNum(self.p, self.val,
                        self.mantissa % self.p ** (abs_prec - self.val),
                        abs_prec - self.val)

    def residue(self, abs_prec: int | None = None) -> int:
        """Canonical residue mod p^abs_prec (valuation must be >= 0)."""
        if abs_prec is None:
            abs_prec = self.abs_prec
        if abs_prec > self.abs_prec:
            raise PrecisionError("residue beyond tracked precision")
        if self.is_zero:
            return 0
        if self.val < 0:
            raise PadicError("negative valuation has no integer residue")
        return self.mantissa * self.p ** self.val % self.p ** abs_prec

    def agrees(self, other) -> bool:
        """Equal modulo p^(min absolute precision)."""
        o = self._coerce(other)
        return (self - o).is_zero

    def __repr__(self):
        if self.is_zero:
            return f"O({self.p}^{self.val})"
        return (f"{self.mantissa}*{self.p}^{self.val}"
                f" + O({self.p}^{self.abs_prec})")


# ---------------------------------------------------------------------
# Hensel lifting and derived root finders
# ---------------------------------------------------------------------


def _coeff_residues(p: int, coeffs, M: int) -> list[int]:
    out = []
    for c in coeffs:
        if isinstance(c, PadicNum):
            if c.is_zero:
                if c.val < M:
                    raise PrecisionError(
                        "coefficient known to insufficient precision")
                out.append(0)
                continue
            if c.val < 0:
                raise PadicError("coefficient not p-integral")
            if c.abs_prec < M:
                raise PrecisionError(
                    f"coefficient precision {c.abs_prec} < required {M}")
            out.append(c.residue(M))
        else:
            c = Fraction(c)
            if c.denominator % p == 0:
                raise PadicError("coefficient not p-integral")
            mod = p ** M
            out.append(c.numerator % mod * pow(c.denominator % mod, -1, mod)
                       % mod)
    return out


def _poly_eval(coeffs: list[int], x: int, mod: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % mod
    return acc


def _poly_deriv(coeffs: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(coeffs)][1:]


def hensel_root(p: int, coeffs, seed: int, M: int) -> PadicNum:
    """Unique root congruent to seed mod p of a polynomial with
    p-integral coefficients (constant term first), to absolute precision
    p^M, by Newton iteration."""
    cs = _coeff_residues(p, coeffs, M)
    ds = _poly_deriv(cs)
    x = seed % p
    if _poly_eval(cs, x, p) != 0:
        raise PadicError(f"seed {seed} is not a root mod {p}")
    if _poly_eval(ds, x, p) == 0:
        raise PadicError(f"not a simple root at seed {seed} "
                         "(derivative non-unit)")
    k = 1
    while k < M:
        k = min(2 * k, M)
        mod = p ** k
        fx = _poly_eval(cs, x, mod)
        dfx = _poly_eval(ds, x, mod)
        x = (x - fx * pow(dfx, -1, mod)) % mod
    return PadicNum.from_abs(p, x, M)


def teichmuller(z: PadicNum) -> tuple[PadicNum, PadicNum]:
    """Decompose a unit z = mu * <z> with mu^(p-1) = 1, <z> = 1 mod p."""
    if not z.is_unit():
        raise PadicError("teichmuller requires a unit")
    p, M = z.p, z.prec
    mod = p ** M
    m = z.mantissa % mod
    for _ in range(M):
        m = pow(m, p, mod)
    mu = PadicNum(p, 0, m, M)
    return mu, z / mu


# ---------------------------------------------------------------------
# Quadratic extension ring (for non-split Hecke roots)
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class QuadExtNum:
    """c0 + c1*alpha in the ring with alpha^2 = tr*alpha - nm."""

    c0: PadicNum
    c1: PadicNum
    tr: PadicNum
    nm: PadicNum

    def _wrap(self, c0, c1):
        return QuadExtNum(c0, c1, self.tr, self.nm)

    def _coerce(self, other):
        if isinstance(other, QuadExtNum):
            return other
        if isinstance(other, (PadicNum, int, Fraction)):
            c0 = self.c0._coerce(other) if not isinstance(other, PadicNum) \
                else other
            return self._wrap(c0, PadicNum.zero(self.c0.p, c0.abs_prec))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.c0, -self.c1)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a0, a1, b0, b1 = self.c0, self.c1, o.c0, o.c1
        cross = a1 * b1
        return self._wrap(a0 * b0 - cross * self.nm,
                          a0 * b1 + a1 * b0 + cross * self.tr)

    __rmul__ = __mul__

    def conj(self) -> "QuadExtNum":
        return self._wrap(self.c0 + self.c1 * self.tr, -self.c1)

    def norm(self) -> PadicNum:
        return (self * self.conj()).as_base()

    def inverse(self) -> "QuadExtNum":
        n = (self * self.conj()).as_base()
        return self.conj() * n.inverse()

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self._coerce(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    @property
    def is_zero(self) -> bool:
        return self.c0.is_zero and self.c1.is_zero

    def as_base(self, what: str = "value") -> PadicNum:
        if not self.c1.is_zero:
            raise PadicError(f"{what} does not lie in the base ring: "
                             f"alpha-coefficient {self.c1!r}")
        return self.c0

    def agrees(self, other) -> bool:
        o = self._coerce(other)
        return (self - o).is_zero


def ext_scalar(x, tr: PadicNum, nm: PadicNum) -> QuadExtNum:
    """Embed a base-ring scalar into the quadratic extension."""
    if isinstance(x, QuadExtNum):
        return x
    if not isinstance(x, PadicNum):
        x = tr._coerce(x)
    return QuadExtNum(x, PadicNum.zero(x.p, x.abs_prec), tr, nm)


# ---------------------------------------------------------------------
# Hecke roots
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class RootPair:
    """Reciprocal roots of 1 - a*x + p^(k-1)*x^2, smaller slope first."""

    kind: str  # "split" | "nonsplit"
    first: object   # PadicNum (split) or QuadExtNum (nonsplit)
    second: object
    slopes: tuple[Fraction, Fraction]

    def roots(self):
        return self.first, self.second


def hecke_roots(a: PadicNum, k: int, p: int, M: int) -> RootPair:
    """Factor y^2 - a*y + p^(k-1) over Q_p (or its quadratic extension),
    by Newton polygon: distinct slopes val(a), k-1-val(a) when
    2*val(a) < k-1, single slope (k-1)/2 otherwise."""
    if k < 2:
        raise PadicError("weight must be >= 2")
    if not isinstance(a, PadicNum):
        a = PadicNum.from_rational(p, a, M)
    pk = PadicNum.from_rational(p, Fraction(p) ** (k - 1), M)

    two_sigma_small = (not a.is_zero) and 2 * a.val < k - 1
    if a.is_zero and 2 * a.val <= k - 1:
        raise PrecisionError(
            f"a known only to O(p^{a.val}): raise precision above "
            f"{(k - 1 + 1) // 2 + 1} to classify the Newton polygon")

    if two_sigma_small:
        sigma = a.val
        # alpha0 = p^sigma * u with u a unit root of
        #   u^2 - (a/p^sigma) u + p^(k-1-2sigma)
        au = PadicNum(p, 0, a.mantissa, a.prec)  # a / p^sigma
        const = PadicNum.from_rational(p, Fraction(p) ** (k - 1 - 2 * sigma),
                                       a.prec)
        seed = au.mantissa % p
        u = hensel_root(p, [const, -au, 1], seed, a.prec)
        alpha0 = PadicNum.from_rational(p, Fraction(p) ** sigma, a.prec) * u
        alpha1 = a - alpha0
        return RootPair("split", alpha0, alpha1,
                        (Fraction(sigma), Fraction(k - 1 - sigma)))

    d = a * a - 4 * pk
    if d.is_zero:
        raise PrecisionError(
            f"discriminant vanishes to precision O(p^{d.val}); raise the "
            "input precision to separate the roots")
    if d.val % 2 == 0 and pow(d.mantissa % p, (p - 1) // 2, p) == 1:
        s_unit = hensel_root(p, [-d.mantissa % p ** d.prec, 0, 1],
                             _first_sqrt(d.mantissa % p, p), d.prec)
        root_d = PadicNum.from_rational(p, Fraction(p) ** (d.val // 2),
                                        d.prec) * s_unit
        half = PadicNum.from_rational(p, Fraction(1, 2), a.prec)
        r1 = (a + root_d) * half
        r2 = (a - root_d) * half
        if (r1.val, r1.mantissa % p) > (r2.val, r2.mantissa % p):
            r1, r2 = r2, r1
        return RootPair("split", r1, r2,
                        (Fraction(r1.val), Fraction(r2.val)))

    # irreducible: work in the quadratic extension alpha^2 = a*alpha - p^(k-1)
    one = PadicNum.from_rational(p, 1, a.prec if not a.is_zero else M)
    zero = PadicNum.zero(p, one.abs_prec)
    alpha = QuadExtNum(zero, one, a, pk)
    s = Fraction(k - 1, 2)
    return RootPair("nonsplit", alpha, alpha.conj(), (s, s))


def _first_sqrt(u: int, p: int) -> int:
    for r in range(1, p):
        if r * r % p == u % p:
            return r
    raise PadicError(f"{u} is not a square mod {p}")


# ---------------------------------------------------------------------
# Embeddings of the quadratic field
# ---------------------------------------------------------------------


def embed(v: QuadElem, s: PrimeSplit, M: int | None = None) -> PadicNum:
    """iota_pi: ring homomorphism with sqrt(D) |-> Hensel-lifted root;
    the convention places pi_gen at valuation 1."""
    return _embed(v, s, M, conj=False)


def embed_conj(v: QuadElem, s: PrimeSplit, M: int | None = None) -> PadicNum:
    """iota_pi': sqrt(D) |-> minus the lifted root; satisfies
    embed_conj(v) = embed(conjugate(v))."""
    return _embed(v, s, M, conj=True)


def _embed(v: QuadElem, s: PrimeSplit, M, conj: bool) -> PadicNum:
    if M is None:
        M = s.prec
    p = s.p
    if v.x.denominator % p == 0 or v.y.denominator % p == 0:
        raise PadicError("element has p in a coordinate denominator")
    mod = p ** M
    w = s.sqrt_lift(M)
    if conj:
        w = (-w) % mod
    if s.field.basis_shift:
        om = (1 + w) * pow(2, -1, mod) % mod
    else:
        om = w
    num = (v.x.numerator * pow(v.x.denominator % mod, -1, mod)
           + v.y.numerator * pow(v.y.denominator % mod, -1, mod) * om)
    return PadicNum.from_abs(p, num % mod, M)
