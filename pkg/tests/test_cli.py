import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from hilbertqx import cli
from hilbertqx import serialize as ser
from hilbertqx.padic import PadicNum
from hilbertqx.qexp import aj_integrand, make_formal_eigenform, mq_sub
from hilbertqx.quadfield import make_field, split_prime
from hilbertqx.symbolic import random_expansion


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_field_command(capsys):
    code, d = run(capsys, "field", "--D", "5")
    assert code == 0
    assert d["schema"] == "hqx/1"
    assert d["disc"] == 5 and d["has_norm_minus_one"] is True
    assert d["fund_unit"] == ["0", "1", "1", "1"]


def test_split_command(capsys):
    code, d = run(capsys, "split", "--D", "5", "--p", "11", "--prec", "3")
    assert code == 0
    assert d["sqrt_base"] == 4 and d["sqrtD_mod"] == "1258"
    F = make_field(5)
    pi = ser.elem_from_json(F, d["pi_gen"])
    assert pi.norm() == 11 and pi.is_totally_positive()


def test_enumerate_command(capsys):
    code, d = run(capsys, "enumerate", "--D", "5", "--bound", "3")
    assert code == 0
    assert d["count"] == 3 and len(d["elements"]) == 3


def test_domain_error_exit_2(capsys):
    code, d = run(capsys, "split", "--D", "5", "--p", "7")
    assert code == 2
    assert "error" in d and "message" in d


def test_eigenform_matches_library(capsys):
    code, d = run(capsys, "eigenform", "--D", "5", "--p", "11", "--k", "2",
                  "--bound", "20", "--a-pi", "3", "--a-pi-prime", "7",
                  "--prec", "3")
    assert code == 0
    s = split_prime(make_field(5), 11, 3)
    f = make_formal_eigenform(
        s, {s.field.one(): PadicNum.from_rational(11, 1, 3)},
        PadicNum.from_rational(11, 3, 3), PadicNum.from_rational(11, 7, 3),
        2, 20)
    assert ser.hilbert_from_json(d) == f


def test_apply_empty_ops_round_trip(capsys, tmp_path):
    s = split_prime(make_field(5), 11, 3)
    f = random_expansion(s, random.Random(1), bound=12)
    spec = {"prime": {"p": 11, "prec": 3},
            "source": {"kind": "inline",
                       "expansion": ser.hilbert_to_json(f)},
            "ops": []}
    path = tmp_path / "pipe.json"
    path.write_text(json.dumps(spec))
    code, d = run(capsys, "apply", "--file", str(path))
    assert code == 0
    assert d["provenance"] == []
    assert d["result"] == ser.hilbert_to_json(f)


def test_apply_integrand_pipeline(capsys, tmp_path):
    src = {"kind": "eigenform", "D": 5, "p": 11, "k": 2, "bound": 24,
           "a_pi": ["3", "1"], "a_pi_prime": ["7", "1"]}
    spec = {"prime": {"p": 11, "prec": 3}, "source": src,
            "ops": ["deplete_pi_prime", "theta_prime_inverse:1",
                    "restrict"]}
    path = tmp_path / "pipe.json"
    path.write_text(json.dumps(spec))
    code, d = run(capsys, "apply", "--file", str(path))
    assert code == 0
    assert [e["op"] for e in d["provenance"]] == [
        "deplete_pi_prime", "theta_prime_inverse", "restrict"]
    got = ser.modular_from_json(d["result"])
    # equals twice the first half of the integrand decomposition
    s = split_prime(make_field(5), 11, 3)
    f = make_formal_eigenform(
        s, {s.field.one(): PadicNum.from_rational(11, 1, 3)},
        PadicNum.from_rational(11, 3, 3), PadicNum.from_rational(11, 7, 3),
        2, 24)
    from hilbertqx.qexp import (deplete_pi_prime, theta_prime_inverse,
                                restrict)
    assert got == restrict(theta_prime_inverse(deplete_pi_prime(f), 1))


def test_apply_bound_exhaustion_exit_3(capsys, tmp_path):
    src = {"kind": "eigenform", "D": 5, "p": 11, "k": 2, "bound": 8,
           "a_pi": ["3", "1"], "a_pi_prime": ["7", "1"]}
    spec = {"prime": {"p": 11, "prec": 3}, "source": src,
            "ops": ["restrict", "e_ord:2"]}
    path = tmp_path / "pipe.json"
    path.write_text(json.dumps(spec))
    code, d = run(capsys, "apply", "--file", str(path))
    assert code == 3
    assert d["error"] == "bound_exhausted" and d["op_index"] == 1


def test_apply_unknown_operator_exit_2(capsys, tmp_path):
    spec = {"prime": {"p": 11, "prec": 3},
            "source": {"kind": "eigenform", "D": 5, "p": 11, "k": 2,
                       "bound": 8, "a_pi": ["3", "1"],
                       "a_pi_prime": ["7", "1"]},
            "ops": ["no_such_op"]}
    path = tmp_path / "pipe.json"
    path.write_text(json.dumps(spec))
    code, d = run(capsys, "apply", "--file", str(path))
    assert code == 2 and d["error"] == "unknown_operator"


def test_verify_suites_pass(capsys):
    for argv in (["verify", "euler-summation", "--k", "2", "--t", "0"],
                 ["verify", "scholl", "--n", "3"],
                 ["verify", "operator-identities", "--trials", "3"],
                 ["verify", "kernel-lemma", "--trials", "6"],
                 ["verify", "recombination", "--trials", "2"],
                 ["verify", "precision-soundness", "--trials", "3"]):
        code, d = run(capsys, *argv)
        assert code == 0 and d["ok"], (argv, d)


def test_verify_failure_exit_1(capsys, monkeypatch):
    monkeypatch.setattr(cli, "scholl_check",
                        lambda n: {"n": n, "ok": False})
    code, d = run(capsys, "verify", "scholl", "--n", "2")
    assert code == 1 and not d["ok"]


def test_euler_command_frozen(capsys):
    code, d = run(capsys, "euler", "--bp", "3", "--k0", "2", "--p", "11",
                  "--prec", "3")
    assert code == 0
    assert d["beta0"]["mantissa"] == "685"
    assert d["E0"]["mantissa"] == "309"


def test_aj_scalar_command(capsys):
    code, d = run(capsys, "aj-scalar", "--a-pi", "3", "--a-pi-prime", "7",
                  "--k", "3", "--bp", "3", "--k0", "2", "--p", "11",
                  "--prec", "4")
    assert code == 0
    assert d["t"] == 1 and d["sign"] == -1


def test_family_specialize_command(capsys, tmp_path):
    s = split_prime(make_field(5), 11, 4)
    f = random_expansion(s, random.Random(9), bound=15, prec=4)
    from hilbertqx.family import HilbertFamily, constant_coeff
    fam = HilbertFamily(s, Fraction(0), Fraction(0), 0, f.trace_bound,
                        {nu: constant_coeff(c)
                         for nu, c in f.coeffs.items()})
    path = tmp_path / "fam.json"
    path.write_text(json.dumps(ser.family_to_json(fam)))
    code, d = run(capsys, "family-specialize", "--file", str(path),
                  "--j", "-1", "--s", "0")
    assert code == 0
    got = ser.modular_from_json(d)
    assert not mq_sub(got, aj_integrand(f, 0)).coeffs


def test_determinism_byte_identical(capsys):
    outs = []
    for _ in range(2):
        cli.main(["eigenform", "--D", "5", "--p", "11", "--k", "2",
                  "--bound", "16", "--a-pi", "3", "--a-pi-prime", "7",
                  "--prec", "3"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_prec_default_env(capsys, monkeypatch):
    monkeypatch.setenv("PREC_DEFAULT", "5")
    code, d = run(capsys, "split", "--D", "5", "--p", "11")
    assert code == 0 and d["prec"] == 5


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "hilbertqx.cli", "field",
                          "--D", "13"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["disc"] == 13


def test_round_trip_every_domain_type():
    s = split_prime(make_field(13), 17, 3)
    f = random_expansion(s, random.Random(10), bound=14)
    docs = [ser.field_to_json(s.field), ser.split_to_json(s),
            ser.hilbert_to_json(f)]
    assert ser.field_from_json(docs[0]) == s.field
    assert ser.split_from_json(docs[1]) == s
    assert ser.hilbert_from_json(docs[2]) == f
    x = PadicNum.from_rational(17, Fraction(34, 3), 4)
    assert ser.padic_from_json(ser.padic_to_json(x)) == x
    z = PadicNum.zero(17, 2)
    assert ser.padic_from_json(ser.padic_to_json(z)) == z
