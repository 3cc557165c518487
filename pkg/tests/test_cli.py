import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

import sqm1
from sqm1.cli import dispatch

SCHEMA_DIR = Path(sqm1.__file__).parent / "schemas"


def schema(name):
    return json.loads((SCHEMA_DIR / f"{name}.json").read_text())


def call(capsys, *argv):
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_cli(*argv):
    return subprocess.run(
        [sys.executable, "-m", "sqm1", *argv], capture_output=True, timeout=300
    )


SCHEMA_CASES = [
    ("basin", ["basin", "--p", "7", "--emit", "json"]),
    ("census", ["census", "--p", "13", "--emit", "json"]),
    ("separation", ["separate", "--xmax", "1000"]),
    ("minimal_prime", ["minimal-prime", "--xmax", "1000"]),
    ("balance_order", ["balance-order", "--prime-limit", "100", "--emit", "json"]),
    ("orbit", ["orbit", "--n", "2", "--kmax", "4", "--emit", "json"]),
    ("primes_of", ["primes-of", "--n", "5", "--limit", "100", "--emit", "json"]),
    ("restricted_set", ["restricted-set", "--n", "10", "--emit", "json"]),
    ("gcd_experiment", ["gcd-experiment", "--n", "2", "--n2", "7", "--kmax", "2"]),
    ("poly", ["iterate", "--m", "2", "--emit", "json"]),
    ("poly", ["eisenstein", "--m", "2", "--emit", "json"]),
    ("poly", ["phi", "--n", "3", "--emit", "json"]),
    ("necklace", ["necklace", "--n", "6", "--emit", "json"]),
    ("disc", ["disc", "--coeffs=-2,0,1", "--emit", "json"]),
    ("tree_model", ["tree-model", "--n", "3", "--emit", "json"]),
    ("histogram", ["histogram", "--limit", "1000", "--emit", "json"]),
    ("band", ["band", "--limit", "1000", "--a", "2/5", "--b", "3/5"]),
    ("fpf", ["fpf", "--n", "4", "--emit", "json"]),
    ("prediction", ["predict-full-basin", "--limit", "1000"]),
    ("delta", ["delta", "--m", "1", "--prime-limit", "500", "--emit", "json"]),
    ("check_lemmas", ["check-lemmas", "--limit", "1000", "--emit", "json"]),
]


@pytest.mark.parametrize(
    "schema_name,argv", SCHEMA_CASES, ids=[" ".join(argv) for _, argv in SCHEMA_CASES]
)
def test_json_output_matches_schema(capsys, schema_name, argv):
    code, out, _ = call(capsys, *argv)
    assert code == 0
    jsonschema.validate(json.loads(out), schema(schema_name))


def test_scan_json_lines_match_schema(capsys):
    for extra in ([], ["--with-census"]):
        code, out, _ = call(capsys, "scan", "--limit", "50", "--emit", "json", *extra)
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 15
        for line in lines:
            jsonschema.validate(json.loads(line), schema("scan_record"))


def test_scan_csv_shape(capsys):
    code, out, _ = call(capsys, "scan", "--limit", "10")
    assert code == 0
    assert out == (
        "p,basin_size,balance,is_full,n_components,cycle_lengths\n"
        "2,2,0.5,true,,\n"
        "3,3,0.5,true,,\n"
        "5,3,0.1,false,,\n"
        "7,7,0.5,true,,\n"
    )


def test_basin_csv_exact(capsys):
    code, out, _ = call(capsys, "basin", "--p", "7")
    assert code == 0
    assert out == "p,basin_size,balance,is_full\n7,7,0.5,true\n"


def test_census_csv_exact(capsys):
    code, out, _ = call(capsys, "census", "--p", "13")
    assert code == 0
    assert out == (
        "p,n_components,cycle_lengths,component_sizes,basin_size\n13,2,2;3,3;10,3\n"
    )


def test_balance_order_csv_exact(capsys):
    code, out, _ = call(capsys, "balance-order", "--prime-limit", "6")
    assert code == 0
    assert out == "p,balance\n5,0.1\n2,0.5\n3,0.5\n"


def test_orbit_csv_exact(capsys):
    code, out, _ = call(capsys, "orbit", "--n", "2", "--kmax", "4")
    assert code == 0
    assert out == "k,term\n0,2\n1,3\n2,8\n3,63\n4,3968\n"


def test_gcd_experiment_csv(capsys):
    code, out, _ = call(
        capsys, "gcd-experiment", "--n", "3", "--n2", "3", "--kmax", "1", "--emit", "csv"
    )
    assert code == 0
    assert out == "k,gcd,cofactor\n0,3,1\n1,63,1\n"


def test_polynomial_text_outputs(capsys):
    assert call(capsys, "phi", "--n", "2") == (0, "x^2 + x\n", "")
    assert call(capsys, "iterate", "--m", "2") == (0, "x^4 - 2x^2\n", "")
    assert call(capsys, "eisenstein", "--m", "1") == (0, "direct: x^2 - 2\n", "")
    assert call(capsys, "necklace", "--n", "6") == (0, "9\n", "")
    assert call(capsys, "disc", "--coeffs=-2,0,1") == (0, "8\n", "")
    assert call(capsys, "tree-model", "--n", "2") == (0, "1/8\n", "")
    assert call(capsys, "fpf", "--n", "3") == (0, "13/18\n", "")


def test_minimal_prime_value(capsys):
    code, out, _ = call(capsys, "minimal-prime", "--xmax", "1000")
    assert code == 0
    assert json.loads(out)["minimal_prime"] == 379


def test_separate_budget_exhaustion_exits_nonzero(capsys):
    code, out, _ = call(capsys, "separate", "--xmax", "1000", "--prime-limit", "10")
    assert code == 1
    obj = json.loads(out)
    assert obj["separated"] is False
    assert obj["residual_blocks"] > 0


def test_minimal_prime_budget_exhaustion(capsys):
    code, out, err = call(capsys, "minimal-prime", "--xmax", "1000", "--prime-limit", "10")
    assert code == 1
    assert out == ""
    assert "not separated" in err


def test_fpf_epsilon_gate(capsys):
    code, out, err = call(capsys, "fpf", "--n", "1", "--epsilon", "0.05")
    assert code == 1
    assert out == "1/2\n"
    assert "deviates" in err
    code, _, _ = call(capsys, "fpf", "--n", "8", "--epsilon", "0.05")
    assert code == 0


def test_extended_targets_are_gated(capsys):
    code, _, err = call(capsys, "separate", "--xmax", "2000000")
    assert code == 2
    assert "--extended" in err


def test_usage_errors(capsys):
    assert call(capsys, "no-such-command")[0] == 2
    assert call(capsys, "basin", "--p", "10")[0] == 2  # composite modulus
    assert call(capsys, "band", "--limit", "100", "--a", "0", "--b", "1/2")[0] == 2
    assert call(capsys, "basin")[0] == 2  # missing required flag


def test_negative_leading_coefficient_needs_equals_form(capsys):
    # argparse reads a bare "-2,0,1" as an option, so only the = form parses
    assert call(capsys, "disc", "--coeffs", "-2,0,1")[0] == 2
    assert call(capsys, "disc", "--coeffs=-2,0,1")[0] == 0


def test_check_lemmas_passes(capsys):
    code, out, _ = call(capsys, "check-lemmas", "--limit", "1000")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    assert all(line.startswith("ok: ") for line in lines)


def test_out_writes_the_same_bytes(capsys, tmp_path):
    target = tmp_path / "basin.csv"
    code, out, _ = call(capsys, "basin", "--p", "23", "--out", str(target))
    assert code == 0 and out == ""
    _, streamed, _ = call(capsys, "basin", "--p", "23")
    assert target.read_text() == streamed


def test_module_entry_point():
    proc = run_cli("necklace", "--n", "6")
    assert proc.returncode == 0
    assert proc.stdout == b"9\n"


def test_module_entry_point_reports_errors():
    proc = run_cli("basin", "--p", "10")
    assert proc.returncode == 2
    assert b"error:" in proc.stderr


def test_scan_bytes_independent_of_threads():
    one = run_cli("scan", "--limit", "2000", "--threads", "1")
    many = run_cli("scan", "--limit", "2000", "--threads", "8")
    assert one.returncode == many.returncode == 0
    assert one.stdout == many.stdout


def test_delta_bytes_independent_of_threads():
    one = run_cli("delta", "--m", "2", "--prime-limit", "2000", "--threads", "1")
    many = run_cli("delta", "--m", "2", "--prime-limit", "2000", "--threads", "4")
    assert one.returncode == many.returncode == 0
    assert one.stdout == many.stdout
