import random
import string
from pathlib import Path

import pytest

from envnorm.checks import sl2_algebra
from envnorm.cli import (
    ParseError,
    format_spec,
    main,
    parse_expr,
    parse_spec,
    state_lines,
)
from envnorm.envelope import EnvElement, env_eq
from envnorm.ring import make_ring

GOLDEN = Path(__file__).parent / "golden"
Z = make_ring("Z")


def golden(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ------------------------------------------------------------------ spec files

def test_parse_spec_sl2():
    spec = parse_spec(golden("sl2.alg"))
    assert spec.ring.descriptor() == "Z"
    assert spec.basis == ("e", "f", "h")
    assert spec.part1 == (1,) and spec.part2 == (2, 0)
    algebra, split = spec.build()
    assert algebra.bracket(algebra.basis_vector(0), algebra.basis_vector(1)) == algebra.vector({"h": 1})
    # auto-filled negation
    assert algebra.bracket(algebra.basis_vector(1), algebra.basis_vector(0)) == algebra.vector({"h": -1})


def test_parse_spec_round_trip():
    for name in ("sl2.alg", "sl2_borel.alg", "heisenberg.alg", "sl2_bad_jacobi.alg"):
        spec = parse_spec(golden(name))
        assert parse_spec(format_spec(spec)) == spec


def test_parse_spec_crlf_and_comments():
    text = "ring Z\r\nbasis a b\r\n# comment\r\n\r\nsplit a | b\r\n"
    spec = parse_spec(text)
    assert spec.basis == ("a", "b") and spec.brackets == ()


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("basis a b\nsplit a | b", "missing ring"),
        ("ring Z", "missing basis"),
        ("ring Z\nsplit a | b", "unknown name"),
        ("ring Z\nbasis a b", "missing split"),
        ("ring Zmod 1\nbasis a\nsplit a |", "modulus"),
        ("ring Z\nbasis a a\nsplit a | a", "duplicate basis name"),
        ("ring Z\nbasis a b\nbracket a c = b\nsplit a | b", "unknown name"),
        ("ring Z\nbasis a b\nsplit a | b\nsplit a | b", "duplicate split"),
        ("ring Z\nbasis e f h\nsplit e | h", "unassigned"),
        ("ring Z\nbasis e f h\nsplit e f | f h", "both split parts"),
        ("ring Z\nbasis e f\nbracket e f = 1/2*f\nsplit e | f", "outside Q"),
        ("ring Z\nbasis e f\nbracket e f = 5\nsplit e | f", "basis name"),
        ("ring Z\nbasis e f\nbracket e f = f\nbracket f e = f\nsplit e | f", "opposite orientation"),
        ("ring Z\nbasis e f\nbracket e f = f\nbracket e f = f\nsplit e | f", "declared twice"),
        ("wibble Z\n", "unknown directive"),
    ],
)
def test_parse_spec_errors(text, fragment):
    with pytest.raises(ParseError) as err:
        parse_spec(text)
    assert fragment in str(err.value)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_spec("ring Z\nbasis a b\nbracket a zz = b\nsplit a | b")
    assert err.value.line == 3


def test_wrong_table_parses_then_fails_validation():
    # [h,f] = -2*e instead of -2*f: the file is grammatical, the algebra is not
    text = "ring Z\nbasis e f h\nbracket e f = h\nbracket h e = 2*e\nbracket h f = -2*e\nsplit f | h e\n"
    spec = parse_spec(text)
    algebra, _split = spec.build()
    from envnorm.liealg import validate_algebra

    report = validate_algebra(algebra)
    assert not report.ok
    assert any(v.kind == "jacobi" for v in report.violations)


def test_oracle_mismatch_maps_to_exit_3(monkeypatch, capsys):
    import envnorm.cli as cli
    from envnorm.normalform import OracleMismatchError

    def boom(ctx, u, check=True):
        raise OracleMismatchError("forced")

    monkeypatch.setattr(cli, "normal_order", boom)
    code, _out, err = run_cli(capsys, "normal-order", str(GOLDEN / "sl2.alg"), "--expr", "e*f")
    assert code == 3 and "oracle mismatch" in err


def test_diagonal_bracket_parses_then_fails_validation(capsys):
    spec = parse_spec(golden("sl2_bad_alternating.alg"))
    assert any(i == j for (i, j), _ in spec.brackets)
    code, out, _err = run_cli(capsys, "validate", str(GOLDEN / "sl2_bad_alternating.alg"))
    assert code == 1
    assert "alternating violation at (e, e)" in out


# ---------------------------------------------------------------- expressions

@pytest.fixture
def sl2():
    return sl2_algebra(Z)


def test_parse_expr_examples(sl2):
    u = parse_expr("e*f + 2*h", sl2)
    assert u == EnvElement.word(sl2, (0, 1)) + EnvElement.word(sl2, (2,), 2)
    v = parse_expr("(e+f)*h", sl2)
    assert v == EnvElement.word(sl2, (0, 2)) + EnvElement.word(sl2, (1, 2))
    assert parse_expr("1", sl2) == EnvElement.unit(sl2)
    assert parse_expr("3*1", sl2) == EnvElement.unit(sl2).scale(3)
    assert parse_expr("e - f", sl2) == EnvElement.word(sl2, (0,)) + EnvElement.word(sl2, (1,), -1)
    assert parse_expr("-2*e*h", sl2) == EnvElement.word(sl2, (0, 2), -2)


def test_parse_expr_fraction_needs_q(sl2):
    with pytest.raises(ParseError) as err:
        parse_expr("1/2*e", sl2)
    assert "outside Q" in str(err.value)
    alg_q = sl2_algebra(make_ring("Q"))
    from fractions import Fraction
    assert parse_expr("1/2*e", alg_q) == EnvElement.word(alg_q, (0,), Fraction(1, 2))


@pytest.mark.parametrize("bad", ["", "e +", "(", "(e", "2", "e ** f", "zz*e", "e $ f", "2*3", "1/0*e"])
def test_parse_expr_rejects(bad, sl2):
    with pytest.raises(ParseError):
        parse_expr(bad, sl2)


def test_parse_expr_never_crashes(sl2):
    rng = random.Random(41)
    alphabet = string.ascii_letters + string.digits + "+-*/() eh"
    for _ in range(500):
        text = "".join(rng.choices(alphabet, k=rng.randint(0, 12)))
        try:
            parse_expr(text, sl2)
        except ParseError as exc:
            assert exc.line is not None and exc.col is not None


def test_print_parse_round_trip(sl2):
    rng = random.Random(42)
    for _ in range(100):
        u = EnvElement.zero(sl2)
        for _ in range(rng.randint(1, 3)):
            word = tuple(rng.choices(range(3), k=rng.randint(0, 4)))
            u = u + EnvElement.word(sl2, word, rng.randint(-9, 9))
        reparsed = parse_expr(str(u), sl2)
        assert env_eq(reparsed, u)
        assert reparsed == u  # printing preserves the representative exactly


# ------------------------------------------------------------------- commands

def test_validate_ok(capsys):
    code, out, err = run_cli(capsys, "validate", str(GOLDEN / "sl2.alg"))
    assert (code, out, err) == (0, "ok\n", "")


def test_validate_bad_jacobi(capsys):
    code, out, _err = run_cli(capsys, "validate", str(GOLDEN / "sl2_bad_jacobi.alg"))
    assert code == 1
    assert "jacobi violation at (e, f, h)" in out


def test_validate_bad_split(capsys):
    code, out, _err = run_cli(capsys, "validate", str(GOLDEN / "sl2_bad_split.alg"))
    assert code == 1
    assert "closure violation at (e, f)" in out and "h" in out


def test_normal_order_golden_sl2(capsys):
    code, out, err = run_cli(capsys, "normal-order", str(GOLDEN / "sl2.alg"), "--expr", "e*f")
    assert (code, err) == (0, "")
    assert out == golden("normal_order_sl2_ef.txt")


def test_normal_order_golden_heisenberg(capsys):
    code, out, _ = run_cli(capsys, "normal-order", str(GOLDEN / "heisenberg.alg"), "--expr", "y*x")
    assert code == 0
    assert out == golden("normal_order_heis_yx.txt")


def test_normal_order_golden_borel(capsys):
    code, out, _ = run_cli(capsys, "normal-order", str(GOLDEN / "sl2_borel.alg"), "--expr", "f*e")
    assert code == 0
    assert out == golden("normal_order_sl2_borel_fe.txt")


def test_normal_order_unit(capsys):
    code, out, _ = run_cli(capsys, "normal-order", str(GOLDEN / "sl2.alg"), "--expr", "1")
    assert code == 0 and out == "1 * 1 (x) 1\n"


def test_normal_order_no_oracle_flag(capsys):
    code, out, _ = run_cli(
        capsys, "normal-order", str(GOLDEN / "sl2.alg"), "--expr", "e*f", "--no-oracle"
    )
    assert code == 0 and out == golden("normal_order_sl2_ef.txt")


def test_normal_order_invalid_algebra_exits_1(capsys):
    code, out, err = run_cli(
        capsys, "normal-order", str(GOLDEN / "sl2_bad_jacobi.alg"), "--expr", "e*f"
    )
    assert code == 1 and out == "" and "jacobi" in err


def test_straighten_golden(capsys):
    code, out, _ = run_cli(capsys, "straighten", str(GOLDEN / "sl2.alg"), "--expr", "f*e")
    assert code == 0 and out == golden("straighten_sl2_fe.txt")


def test_straighten_custom_order(capsys):
    code, out, _ = run_cli(
        capsys, "straighten", str(GOLDEN / "sl2.alg"), "--expr", "f*e",
        "--order", "h", "f", "e",
    )
    assert code == 0 and out == "1 * f * e\n"  # already sorted under h < f < e


def test_straighten_bad_order(capsys):
    code, _out, err = run_cli(
        capsys, "straighten", str(GOLDEN / "sl2.alg"), "--expr", "e", "--order", "e", "f"
    )
    assert code == 2 and "order" in err


def test_parse_error_exit_codes(capsys):
    code, _out, err = run_cli(capsys, "normal-order", str(GOLDEN / "sl2.alg"), "--expr", "e*(")
    assert code == 2 and "error" in err
    code, _out, err = run_cli(capsys, "validate", str(GOLDEN / "nonexistent.alg"))
    assert code == 2
    code, _out, _err = run_cli(capsys, "frobnicate")
    assert code == 2


def test_check_builtin_small(capsys):
    code, out, _ = run_cli(
        capsys, "check", "--builtin", "--seed", "42", "--cases", "3", "--max-deg", "2"
    )
    assert code == 0
    assert "SUITE sl2_Z " in out and "seed=42" in out
    assert out.strip().splitlines()[-1].startswith("TOTAL entries=8")


def test_check_output_is_deterministic(capsys):
    args = ("check", "--builtin", "--seed", "7", "--cases", "2", "--max-deg", "2")
    _c1, out1, _ = run_cli(capsys, *args)
    _c2, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_check_file_validation_failure_exits_1(capsys):
    code, out, _ = run_cli(
        capsys, "check", str(GOLDEN / "sl2_bad_jacobi.alg"), "--cases", "2", "--max-deg", "2"
    )
    assert code == 1
    assert "skipped (validation failed)" in out


def test_check_property_failure_exits_3(capsys):
    code, out, _ = run_cli(
        capsys, "check", str(GOLDEN / "sl2_bad_jacobi.alg"),
        "--cases", "2", "--max-deg", "2", "--props", "lie_action",
    )
    assert code == 3
    assert "FAIL lie_action" in out


def test_check_needs_exactly_one_source(capsys):
    code, _out, err = run_cli(capsys, "check")
    assert code == 2 and "exactly one" in err
    code, _out, err = run_cli(capsys, "check", str(GOLDEN / "sl2.alg"), "--builtin")
    assert code == 2


def test_check_rejects_bad_config(capsys):
    code, _out, err = run_cli(capsys, "check", "--builtin", "--cases", "0")
    assert code == 2 and "cases" in err
    code, _out, err = run_cli(capsys, "check", "--builtin", "--props", "bogus")
    assert code == 2


def test_cli_mod2_residue_coefficients(capsys):
    # 3 reduces to 1 mod 2 and the bracket term [h,e] = 2e vanishes
    code, out, _ = run_cli(
        capsys, "straighten", str(GOLDEN / "sl2_mod2.alg"), "--expr", "3*h*e + f"
    )
    assert code == 0 and out == "1 * f + 1 * e * h\n"
    code, out, _ = run_cli(
        capsys, "normal-order", str(GOLDEN / "sl2_mod2.alg"), "--expr", "e*f"
    )
    assert code == 0 and out == "1 * f (x) e\n1 * 1 (x) h\n"


def test_state_lines_zero(sl2):
    from envnorm.liealg import SplitDecomposition
    from envnorm.envelope import StateElement
    split = SplitDecomposition(sl2, (1,), (0, 2))
    assert state_lines(StateElement.zero(split)) == ["0"]
