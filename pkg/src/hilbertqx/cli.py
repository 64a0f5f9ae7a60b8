"""Command-line driver: build fields and eigenforms, apply operator
pipelines with bound/precision provenance, run the verification suites,
and compute Euler factors, scalar assemblies and family specializations.

All I/O is UTF-8 JSON tagged "schema": "hqx/1".  Exit codes: 0 success,
1 verification failure, 2 domain error, 3 bound exhaustion."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .quadfield import (QuadFieldError, make_field, split_prime,
                        enumerate_totally_positive, pi_valuation,
                        pi_conj_valuation)
from .padic import PadicNum, PadicError
from .qexp import (HilbertQExp, ModularQExp, QExpError, BoundError,
                   make_hilbert_qexp, add, scale, sub, mq_add, mq_scale,
                   mq_sub, v_pi, v_pi_prime, v_p, u_pi, u_pi_prime, u_p,
                   mq_v_p, mq_u_p, hecke_t_pi, hecke_t_pi_prime, t_p,
                   deplete_pi, deplete_pi_prime, deplete_p, theta,
                   theta_prime, theta_inverse, theta_prime_inverse,
                   restrict, e_ord_approx, make_formal_eigenform,
                   kernel_lemma_check)
from .spectral import (SpectralError, spectral_data, ordinary_data,
                       stabilize_modular, stabilize_hilbert, euler_E0,
                       euler_E1, aj_scalar)
from .symbolic import (verify_euler_summation, scholl_check,
                       verify_operator_identities, random_expansion)
from .family import FamilyError, build_lambda_h, specialize_h
from . import serialize as ser

DOMAIN_ERRORS = (QuadFieldError, PadicError, QExpError, SpectralError,
                 FamilyError, ValueError, KeyError, OSError,
                 json.JSONDecodeError)


def _default_prec() -> int:
    return int(os.environ.get("PREC_DEFAULT", "3"))


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _fail(code: int, kind: str, message: str, **extra) -> int:
    _emit({"schema": ser.SCHEMA, "error": kind, "message": message, **extra})
    return code


# ---------------------------------------------------------------------
# operator registry for pipelines
# ---------------------------------------------------------------------

HILBERT_OPS = {
    "v_pi": lambda f, a, c: v_pi(f),
    "v_pi_prime": lambda f, a, c: v_pi_prime(f),
    "v_p": lambda f, a, c: v_p(f),
    "u_pi": lambda f, a, c: u_pi(f),
    "u_pi_prime": lambda f, a, c: u_pi_prime(f),
    "u_p": lambda f, a, c: u_p(f),
    "t_pi": lambda f, a, c: hecke_t_pi(f, f.weight[0]),
    "t_pi_prime": lambda f, a, c: hecke_t_pi_prime(f, f.weight[0]),
    "deplete_pi": lambda f, a, c: deplete_pi(f),
    "deplete_pi_prime": lambda f, a, c: deplete_pi_prime(f),
    "deplete_p": lambda f, a, c: deplete_p(f),
    "theta": lambda f, a, c: theta(f),
    "theta_prime": lambda f, a, c: theta_prime(f),
    "theta_inverse": lambda f, a, c: theta_inverse(f, int(a.get("power", 1))),
    "theta_prime_inverse":
        lambda f, a, c: theta_prime_inverse(f, int(a.get("power", 1))),
    "restrict": lambda f, a, c: restrict(f),
}

MODULAR_OPS = {
    "v_p": lambda g, a, c: mq_v_p(g),
    "u_p": lambda g, a, c: mq_u_p(g),
    "t_p": lambda g, a, c: t_p(g, g.weight, c),
    "e_ord": lambda g, a, c: e_ord_approx(g, int(a.get("depth", 1))),
}

OP_NAMES = sorted(set(HILBERT_OPS) | set(MODULAR_OPS))


def _parse_op(entry):
    if isinstance(entry, str):
        if ":" in entry:
            name, arg = entry.split(":", 1)
            key = "depth" if name == "e_ord" else "power"
            return name, {key: int(arg)}
        return entry, {}
    d = dict(entry)
    return d.pop("op"), d


def apply_op(obj, name: str, args: dict, prec: int):
    table = HILBERT_OPS if isinstance(obj, HilbertQExp) else MODULAR_OPS
    if name not in table:
        raise QExpError(f"operator {name!r} not applicable to "
                        f"{type(obj).__name__}")
    return table[name](obj, args, prec)


def _bound_of(obj):
    if isinstance(obj, HilbertQExp):
        return ser.frac_to_json(obj.trace_bound)
    return obj.bound


def run_pipeline(obj, ops, prec: int):
    """Apply parsed ops left to right, collecting the provenance log."""
    log = []
    for i, (name, args) in enumerate(ops):
        before = _bound_of(obj)
        try:
            obj = apply_op(obj, name, args, prec)
        except BoundError as e:
            raise BoundError(f"op {i} ({name}): {e}") from e
        log.append({"op": name, "input_bound": before,
                    "output_bound": _bound_of(obj), "precision": prec})
    return obj, log


# ---------------------------------------------------------------------
# verification suites: recombination
# ---------------------------------------------------------------------


def _min_abs_prec(coeffs) -> int | None:
    precs = [c.abs_prec for c in coeffs.values()]
    return min(precs) if precs else None


def _two_term_recombination(p: int, k0: int, bp: int, prec: int,
                            rng: random.Random, bound: int = 40) -> dict:
    """Stabilize a random expansion with each root of x^2 - bp x + p^(k0-1)
    in turn, recombine, and compare with the input."""
    a = PadicNum.from_rational(p, bp, prec)
    od = ordinary_data(a, k0, prec)
    b0, b1 = od.beta0, od.beta1
    g = ModularQExp(p, k0, bound,
                    {n: PadicNum.from_rational(p, rng.randint(1, p - 1), prec)
                     for n in range(1, bound + 1) if rng.random() < 0.6})
    g0 = stabilize_modular(g, b1)
    g1 = stabilize_modular(g, b0)
    inv = (b0 - b1).inverse()
    back = mq_scale(mq_sub(mq_scale(g0, b0), mq_scale(g1, b1)), inv)
    diff = mq_sub(back, g)
    loss = (b0 - b1).val
    m_in = _min_abs_prec(g.coeffs)
    m_out = _min_abs_prec(back.coeffs)
    return {"agrees": not diff.coeffs, "loss": loss,
            "observed_drop": (m_in - m_out) if m_out is not None else None}


def _four_term_recombination(split, a_pi: PadicNum, a_pi_prime: PadicNum,
                             k: int, rng: random.Random,
                             bound: int = 40) -> dict:
    """Doubly stabilize a formal eigenform with all four root pairs,
    recombine, and check the eigen and primitive-coefficient claims."""
    p, prec = split.p, split.prec
    seed = {}
    for nu in enumerate_totally_positive(split.field, bound):
        if pi_valuation(nu, split) == 0 and pi_conj_valuation(nu, split) == 0:
            if rng.random() < 0.5:
                seed[nu] = PadicNum.from_rational(p, rng.randint(1, p - 1),
                                                  prec)
    f = make_formal_eigenform(split, seed, a_pi, a_pi_prime, k, bound)
    sd = spectral_data(a_pi, a_pi_prime, k)
    al = sd.roots_pi.roots()
    alp = sd.roots_pi_prime.roots()
    loss = (al[0] - al[1]).val + (alp[0] - alp[1]).val

    pieces = {}
    for i in (0, 1):
        for ip in (0, 1):
            pieces[i, ip] = stabilize_hilbert(f, al[1 - i], alp[1 - ip])

    # U_pi f_ii' = alpha_i f_ii' and U_pi' f_ii' = alpha_i' f_ii'
    eigen_ok = True
    for (i, ip), fs in pieces.items():
        d1 = sub(u_pi(fs), scale(fs, al[i]))
        d2 = sub(u_pi_prime(fs), scale(fs, alp[ip]))
        if d1.coeffs or d2.coeffs:
            eigen_ok = False

    # primitive indices see only the (1, 1, 1, 1) corner of the product
    prim_ok = True
    for nu, c in f.coeffs.items():
        if pi_valuation(nu, split) or pi_conj_valuation(nu, split):
            continue
        for fs in pieces.values():
            h = fs.coeffs.get(nu)
            if h is None or not h.agrees(c):
                prim_ok = False

    ci = {i: al[i] / (al[i] - al[1 - i]) for i in (0, 1)}
    cip = {ip: alp[ip] / (alp[ip] - alp[1 - ip]) for ip in (0, 1)}
    back = None
    for (i, ip), fs in pieces.items():
        term = scale(fs, ci[i] * cip[ip])
        back = term if back is None else add(back, term)
    diff = sub(back, f)
    m_in = _min_abs_prec(f.coeffs)
    m_out = _min_abs_prec(back.coeffs)
    return {"agrees": not diff.coeffs, "eigen": eigen_ok,
            "primitive": prim_ok, "loss": loss,
            "observed_drop": (m_in - m_out) if m_out is not None else None}


def verify_recombination(trials: int = 10, seed: int = 0, D: int = 5,
                         p: int = 11, prec: int = 4,
                         bound: int = 40) -> dict:
    rng = random.Random(seed)
    split = split_prime(make_field(D), p, prec)
    report = {"suite": "recombination", "trials": trials, "checks": []}
    for _ in range(trials):
        r2 = _two_term_recombination(p, 2, rng.randint(1, p - 1), prec, rng,
                                     bound)
        a = PadicNum.from_rational(p, rng.randint(1, p - 1), prec)
        ap = PadicNum.from_rational(p, rng.randint(1, p - 1), prec)
        r4 = _four_term_recombination(split, a, ap, 2, rng, bound)
        report["checks"].append({"two_term": r2, "four_term": r4})
    ok = all(c["two_term"]["agrees"] and c["two_term"]["loss"] == 0
             and c["four_term"]["agrees"] and c["four_term"]["eigen"]
             and c["four_term"]["primitive"] and c["four_term"]["loss"] == 0
             for c in report["checks"])
    report["ok"] = ok
    return report


# ---------------------------------------------------------------------
# verification suites: precision/bound soundness (metamorphic)
# ---------------------------------------------------------------------

_SOUND_OPS = ("v_pi", "v_pi_prime", "v_p", "u_pi", "u_pi_prime", "u_p",
              "deplete_pi", "deplete_pi_prime", "deplete_p", "t_pi",
              "t_pi_prime", "theta", "theta_prime")


def _random_chain(rng: random.Random):
    ops = [(rng.choice(_SOUND_OPS), {}) for _ in range(rng.randint(1, 3))]
    seen_theta = False
    kept = []
    for name, args in ops:
        if name in ("theta", "theta_prime"):
            seen_theta = True
        if seen_theta and name in ("t_pi", "t_pi_prime"):
            continue  # Hecke needs parallel weight
        kept.append((name, args))
    if rng.random() < 0.5:
        kept.append(("restrict", {}))
        if rng.random() < 0.5:
            kept.append(("u_p", {}))
    return kept


def _source_pair(split_lo, split_hi, rng: random.Random, bound: int):
    """The same random input realized at both precisions."""
    p = split_lo.p
    lo_prec, hi_prec = split_lo.prec, split_hi.prec
    if rng.random() < 0.5:
        data = {}
        for nu in enumerate_totally_positive(split_lo.field, 2 * bound):
            if rng.random() < 0.4:
                data[nu] = rng.randint(1, p ** 2)
        lo = HilbertQExp(split_lo, (2, 2), Fraction(bound),
                         {nu: PadicNum.from_rational(p, c, lo_prec)
                          for nu, c in data.items()
                          if nu.trace() <= bound}, True)
        hi = HilbertQExp(split_hi, (2, 2), Fraction(2 * bound),
                         {nu: PadicNum.from_rational(p, c, hi_prec)
                          for nu, c in data.items()}, True)
        return lo, hi
    a, ap = rng.randint(1, p - 1), rng.randint(1, p - 1)
    seed = {split_lo.field.one(): 1}
    lo = make_formal_eigenform(
        split_lo, {n: PadicNum.from_rational(p, c, lo_prec)
                   for n, c in seed.items()},
        PadicNum.from_rational(p, a, lo_prec),
        PadicNum.from_rational(p, ap, lo_prec), 2, bound)
    hi = make_formal_eigenform(
        split_hi, {n: PadicNum.from_rational(p, c, hi_prec)
                   for n, c in seed.items()},
        PadicNum.from_rational(p, a, hi_prec),
        PadicNum.from_rational(p, ap, hi_prec), 2, 2 * bound)
    return lo, hi


def _truncation_agrees(low, high, default_prec: int) -> bool:
    """The higher-precision, wider-bound run truncated back must match the
    low run bit for bit: residues agree at each low coefficient's absolute
    precision, and extra coefficients below the low bound vanish there."""
    p = low.p if isinstance(low, ModularQExp) else low.split.p
    if isinstance(low, ModularQExp):
        in_low_bound = lambda n: n <= low.bound
    else:
        in_low_bound = lambda nu: nu.trace() <= low.trace_bound
    floor = min((c.abs_prec for c in low.coeffs.values()),
                default=default_prec)
    for key, c in low.coeffs.items():
        h = high.coeffs.get(key)
        if c.is_zero:
            if h is not None and h.residue(c.abs_prec) != 0:
                return False
            continue
        if h is None or h.residue(c.abs_prec) != c.residue(c.abs_prec):
            return False
    for key, h in high.coeffs.items():
        if key in low.coeffs or not in_low_bound(key):
            continue
        if h.residue(floor) != 0:
            return False
    return True


def verify_precision_soundness(trials: int = 20, seed: int = 0,
                               prec: int = 3) -> dict:
    rng = random.Random(seed)
    report = {"suite": "precision-soundness", "trials": trials, "checks": []}
    fields = {}
    for _ in range(trials):
        D, p = rng.choice(((5, 11), (13, 17)))
        if D not in fields:
            fields[D] = make_field(D)
        bound = rng.randint(24, 40)
        s_lo = split_prime(fields[D], p, prec)
        s_hi = split_prime(fields[D], p, prec + 2)
        lo, hi = _source_pair(s_lo, s_hi, rng, bound)
        chain = _random_chain(rng)
        try:
            out_lo, _ = run_pipeline(lo, chain, prec)
            out_hi, _ = run_pipeline(hi, chain, prec + 2)
            ok = _truncation_agrees(out_lo, out_hi, prec)
        except BoundError:
            ok = True  # both runs abort identically on exhaustion
        report["checks"].append(
            {"D": D, "p": p, "bound": bound,
             "ops": [name for name, _ in chain], "ok": ok})
    report["ok"] = all(c["ok"] for c in report["checks"])
    return report


def verify_kernel_lemma(trials: int = 100, seed: int = 0, D: int = 5,
                        p: int = 11, prec: int = 3, bound: int = 30,
                        ts=(0, 1, 2)) -> dict:
    rng = random.Random(seed)
    split = split_prime(make_field(D), p, prec)
    failures = 0
    for i in range(trials):
        t = ts[i % len(ts)]
        f = random_expansion(split, rng, bound=bound,
                             weight=(2 * t + 4, 2 * t + 4))
        if not kernel_lemma_check(f, t):
            failures += 1
    return {"suite": "kernel-lemma", "trials": trials, "D": D, "p": p,
            "failures": failures, "ok": failures == 0}


# ---------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------


def cmd_field(args) -> int:
    F = make_field(args.D, require_norm_minus_one=False)
    _emit({"schema": ser.SCHEMA, **ser.field_to_json(F), "disc": F.disc,
           "fund_unit": ser.elem_to_json(F.fund_unit()),
           "has_norm_minus_one": F.has_norm_minus_one})
    return 0


def cmd_split(args) -> int:
    F = make_field(args.D, require_norm_minus_one=False)
    s = split_prime(F, args.p, args.prec)
    _emit({"schema": ser.SCHEMA, **ser.split_to_json(s)})
    return 0


def cmd_enumerate(args) -> int:
    F = make_field(args.D, require_norm_minus_one=False)
    elems = enumerate_totally_positive(F, args.bound)
    _emit({"schema": ser.SCHEMA, "D": args.D,
           "bound": ser.frac_to_json(Fraction(args.bound)),
           "count": len(elems),
           "elements": [ser.elem_to_json(v) for v in elems]})
    return 0


def _load_seed(split, spec, prec):
    if not spec:
        return {split.field.one():
                PadicNum.from_rational(split.p, 1, prec)}
    out = {}
    for rec in spec:
        nu = ser.elem_from_json(split.field, rec["nu"])
        out[nu] = PadicNum.from_rational(split.p,
                                         ser.frac_from_json(rec["c"]), prec)
    return out


def cmd_eigenform(args) -> int:
    F = make_field(args.D, require_norm_minus_one=False)
    s = split_prime(F, args.p, args.prec)
    a = PadicNum.from_rational(args.p, Fraction(args.a_pi), args.prec)
    ap = PadicNum.from_rational(args.p, Fraction(args.a_pi_prime), args.prec)
    seed_spec = None
    if args.seed_file:
        with open(args.seed_file, encoding="utf-8") as fh:
            seed_spec = json.load(fh)
    f = make_formal_eigenform(s, _load_seed(s, seed_spec, args.prec), a, ap,
                              args.k, args.bound)
    _emit(ser.hilbert_to_json(f))
    return 0


def _load_source(src: dict, prec: int):
    kind = src.get("kind", "inline")
    if kind == "inline":
        return ser.hilbert_from_json(src["expansion"])
    if kind == "eigenform":
        F = make_field(int(src["D"]), require_norm_minus_one=False)
        s = split_prime(F, int(src["p"]), prec)
        a = PadicNum.from_rational(s.p, ser.frac_from_json(src["a_pi"]), prec)
        ap = PadicNum.from_rational(s.p,
                                    ser.frac_from_json(src["a_pi_prime"]),
                                    prec)
        return make_formal_eigenform(s, _load_seed(s, src.get("seed"), prec),
                                     a, ap, int(src["k"]),
                                     Fraction(int(src["bound"])))
    if kind == "family":
        with open(src["file"], encoding="utf-8") as fh:
            fam = ser.family_from_json(json.load(fh))
        return fam.specialize(int(src.get("s", 0)))
    raise QExpError(f"unknown source kind {kind!r}")


def cmd_apply(args) -> int:
    if args.file == "-":
        spec = json.load(sys.stdin)
    else:
        with open(args.file, encoding="utf-8") as fh:
            spec = json.load(fh)
    prec = int(spec.get("prime", {}).get("prec", args.prec))
    ops = [_parse_op(e) for e in spec.get("ops", [])]
    for name, _ in ops:
        if name not in OP_NAMES:
            return _fail(2, "unknown_operator", f"no operator {name!r}",
                         known=OP_NAMES)
    obj = _load_source(spec["source"], prec)
    try:
        obj, log = run_pipeline(obj, ops, prec)
    except BoundError as e:
        idx = int(str(e).split()[1]) if str(e).startswith("op ") else -1
        return _fail(3, "bound_exhausted", str(e), op_index=idx)
    out = (ser.hilbert_to_json(obj) if isinstance(obj, HilbertQExp)
           else ser.modular_to_json(obj))
    _emit({"schema": ser.SCHEMA, "result": out, "provenance": log})
    return 0


def cmd_verify(args) -> int:
    suite = args.suite
    if suite == "euler-summation":
        ok, cert = verify_euler_summation(args.k, args.t,
                                          random.Random(args.seed))
        report = {"suite": suite, "k": args.k, "t": args.t, "ok": ok,
                  "certificate_terms": len(cert.terms)}
    elif suite == "scholl":
        report = scholl_check(args.n)
        report = {"suite": suite, **report}
    elif suite == "operator-identities":
        r = verify_operator_identities(args.trials, seed=args.seed,
                                       D=args.D, p=args.p)
        report = {"suite": suite, **r}
    elif suite == "kernel-lemma":
        report = verify_kernel_lemma(args.trials, seed=args.seed, D=args.D,
                                     p=args.p, prec=args.prec)
    elif suite == "recombination":
        report = verify_recombination(args.trials, seed=args.seed, D=args.D,
                                      p=args.p)
    elif suite == "precision-soundness":
        report = verify_precision_soundness(args.trials, seed=args.seed,
                                            prec=args.prec)
    else:
        return _fail(2, "unknown_suite", f"no suite {suite!r}")
    report["schema"] = ser.SCHEMA
    _emit(report)
    return 0 if report.get("ok") else 1


def cmd_euler(args) -> int:
    b = PadicNum.from_rational(args.p, args.bp, args.prec)
    od = ordinary_data(b, args.k0, args.prec)
    _emit({"schema": ser.SCHEMA, "p": args.p, "k0": args.k0, "bp": args.bp,
           "beta0": ser.padic_to_json(od.beta0),
           "beta1": ser.padic_to_json(od.beta1),
           "E0": ser.padic_to_json(euler_E0(od)),
           "E1": ser.padic_to_json(euler_E1(od))})
    return 0


def cmd_aj_scalar(args) -> int:
    a = PadicNum.from_rational(args.p, Fraction(args.a_pi), args.prec)
    ap = PadicNum.from_rational(args.p, Fraction(args.a_pi_prime), args.prec)
    sd = spectral_data(a, ap, args.k, args.prec)
    b = PadicNum.from_rational(args.p, args.bp, args.prec)
    od = ordinary_data(b, args.k0, args.prec)
    t = args.k - 1 - args.k0 // 2
    if t < 0:
        return _fail(2, "inadmissible_weights",
                     f"t = k - 1 - k0/2 = {t} < 0")
    res = aj_scalar(sd, od, t)
    _emit({"schema": ser.SCHEMA, "t": t, "sign": -1 if t % 2 else 1,
           "aj_side": ser.padic_to_json(res.aj_side),
           "l_side": ser.padic_to_json(res.l_side)})
    return 0


def cmd_family_specialize(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        fam = ser.family_from_json(json.load(fh))
    H = build_lambda_h(fam)
    g = specialize_h(H, args.j, args.s, args.depth)
    _emit(ser.modular_to_json(g))
    return 0


# ---------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hqx",
        description="exact q-expansion pipelines for p-adic Hilbert "
                    "modular forms over a real quadratic field")
    sub = ap.add_subparsers(dest="command", required=True)

    def prec_arg(sp):
        sp.add_argument("--prec", type=int, default=_default_prec())

    sp = sub.add_parser("field", help="field invariants")
    sp.add_argument("--D", type=int, required=True)
    sp.set_defaults(func=cmd_field)

    sp = sub.add_parser("split", help="split-prime data")
    sp.add_argument("--D", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    prec_arg(sp)
    sp.set_defaults(func=cmd_split)

    sp = sub.add_parser("enumerate", help="totally positive indices")
    sp.add_argument("--D", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("eigenform", help="formal simultaneous eigenform")
    sp.add_argument("--D", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--a-pi", dest="a_pi", required=True)
    sp.add_argument("--a-pi-prime", dest="a_pi_prime", required=True)
    sp.add_argument("--seed-file", dest="seed_file", default=None)
    prec_arg(sp)
    sp.set_defaults(func=cmd_eigenform)

    sp = sub.add_parser("apply", help="run an operator pipeline")
    sp.add_argument("--file", required=True,
                    help="pipeline JSON ('-' for stdin)")
    prec_arg(sp)
    sp.set_defaults(func=cmd_apply)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=["euler-summation", "scholl",
                                      "operator-identities", "kernel-lemma",
                                      "recombination",
                                      "precision-soundness"])
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--t", type=int, default=0)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--D", type=int, default=5)
    sp.add_argument("--p", type=int, default=11)
    sp.add_argument("--seed", type=int, default=0)
    prec_arg(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("euler", help="ordinary Euler factors")
    sp.add_argument("--bp", type=int, required=True)
    sp.add_argument("--k0", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    prec_arg(sp)
    sp.set_defaults(func=cmd_euler)

    sp = sub.add_parser("aj-scalar", help="scalar factors, both variants")
    sp.add_argument("--a-pi", dest="a_pi", required=True)
    sp.add_argument("--a-pi-prime", dest="a_pi_prime", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--bp", type=int, required=True)
    sp.add_argument("--k0", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    prec_arg(sp)
    sp.set_defaults(func=cmd_aj_scalar)

    sp = sub.add_parser("family-specialize",
                        help="classical specialization of a family file")
    sp.add_argument("--file", required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--depth", type=int, default=0)
    sp.set_defaults(func=cmd_family_specialize)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BoundError as e:
        return _fail(3, "bound_exhausted", str(e))
    except DOMAIN_ERRORS as e:
        return _fail(2, type(e).__name__, str(e))


if __name__ == "__main__":
    sys.exit(main())
