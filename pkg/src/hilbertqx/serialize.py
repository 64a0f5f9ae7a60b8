"""JSON interchange for all domain types.

Big integers travel as decimal strings, rationals as [num, den] pairs,
and coefficient maps in the deterministic (trace, y) key order, so that
identical inputs always produce byte-identical output."""

from __future__ import annotations

from fractions import Fraction

from .quadfield import QuadField, QuadElem, PrimeSplit, make_field, \
    split_prime
from .padic import PadicNum
from .qexp import HilbertQExp, ModularQExp
from .family import HilbertFamily, LambdaCoeff

SCHEMA = "hqx/1"


def frac_to_json(q) -> list[str]:
    q = Fraction(q)
    return [str(q.numerator), str(q.denominator)]


def frac_from_json(v) -> Fraction:
    return Fraction(int(v[0]), int(v[1]))


def field_to_json(F: QuadField) -> dict:
    return {"D": F.D, "basis_shift": F.basis_shift}


def field_from_json(d) -> QuadField:
    F = make_field(int(d["D"]), require_norm_minus_one=False)
    if F.basis_shift != d.get("basis_shift", F.basis_shift):
        raise ValueError("basis_shift mismatch")
    return F


def elem_to_json(v: QuadElem) -> list[str]:
    return [str(n) for n in v.serialize()]


def elem_from_json(F: QuadField, v) -> QuadElem:
    xn, xd, yn, yd = (int(s) for s in v)
    return QuadElem(F, Fraction(xn, xd), Fraction(yn, yd))


def split_to_json(s: PrimeSplit) -> dict:
    return {
        "field": field_to_json(s.field),
        "p": s.p,
        "prec": s.prec,
        "sqrt_base": s.sqrt_base,
        "sqrtD_mod": str(s.sqrtD_mod),
        "pi_gen": elem_to_json(s.pi_gen),
        "pi_conj_gen": elem_to_json(s.pi_conj_gen),
    }


def split_from_json(d) -> PrimeSplit:
    F = field_from_json(d["field"])
    return split_prime(F, int(d["p"]), int(d["prec"]))


def padic_to_json(x: PadicNum) -> dict:
    if x.is_zero:
        return {"p": x.p, "zero_prec": x.val}
    return {"p": x.p, "val": x.val, "mantissa": str(x.mantissa),
            "prec": x.prec}


def padic_from_json(d) -> PadicNum:
    if "zero_prec" in d:
        return PadicNum.zero(int(d["p"]), int(d["zero_prec"]))
    return PadicNum(int(d["p"]), int(d["val"]), int(d["mantissa"]),
                    int(d["prec"]))


def _key_order(nu: QuadElem):
    return (nu.trace(), nu.y)


def hilbert_to_json(f: HilbertQExp) -> dict:
    keys = sorted(f.coeffs, key=_key_order)
    return {
        "schema": SCHEMA,
        "kind": "hilbert",
        "D": f.field.D,
        "p": f.split.p,
        "prec": f.split.prec,
        "weight": list(f.weight),
        "trace_bound": frac_to_json(f.trace_bound),
        "cuspidal": f.cuspidal,
        "coeffs": [{"nu": elem_to_json(nu),
                    "c": padic_to_json(f.coeffs[nu])} for nu in keys],
    }


def hilbert_from_json(d) -> HilbertQExp:
    F = make_field(int(d["D"]), require_norm_minus_one=False)
    s = split_prime(F, int(d["p"]), int(d["prec"]))
    coeffs = {elem_from_json(F, rec["nu"]): padic_from_json(rec["c"])
              for rec in d["coeffs"]}
    return HilbertQExp(s, tuple(d["weight"]),
                       frac_from_json(d["trace_bound"]), coeffs,
                       bool(d.get("cuspidal", True)))


def modular_to_json(g: ModularQExp) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "modular",
        "p": g.p,
        "weight": g.weight,
        "bound": g.bound,
        "coeffs": [{"n": n, "c": padic_to_json(g.coeffs[n])}
                   for n in sorted(g.coeffs)],
    }


def modular_from_json(d) -> ModularQExp:
    return ModularQExp(int(d["p"]), int(d["weight"]), int(d["bound"]),
                       {int(rec["n"]): padic_from_json(rec["c"])
                        for rec in d["coeffs"]})


def lambda_coeff_to_json(a: LambdaCoeff) -> dict:
    return {"series": [padic_to_json(c) for c in a.series],
            "theta": a.scale, "center": a.center}


def lambda_coeff_from_json(d) -> LambdaCoeff:
    return LambdaCoeff(tuple(padic_from_json(c) for c in d["series"]),
                       int(d["theta"]), int(d["center"]))


def family_to_json(F: HilbertFamily) -> dict:
    keys = sorted(F.coeffs, key=_key_order)
    return {
        "schema": SCHEMA,
        "kind": "family",
        "D": F.split.field.D,
        "p": F.split.p,
        "prec": F.split.prec,
        "sigma": frac_to_json(F.sigma),
        "sigma_prime": frac_to_json(F.sigma_prime),
        "n0": F.n0,
        "trace_bound": frac_to_json(F.trace_bound),
        "coeffs": [{"nu": elem_to_json(nu),
                    **lambda_coeff_to_json(F.coeffs[nu])} for nu in keys],
    }


def family_from_json(d) -> HilbertFamily:
    F = make_field(int(d["D"]), require_norm_minus_one=False)
    s = split_prime(F, int(d["p"]), int(d["prec"]))
    coeffs = {elem_from_json(F, rec["nu"]): lambda_coeff_from_json(rec)
              for rec in d["coeffs"]}
    return HilbertFamily(s, frac_from_json(d["sigma"]),
                         frac_from_json(d["sigma_prime"]), int(d["n0"]),
                         frac_from_json(d["trace_bound"]), coeffs)
