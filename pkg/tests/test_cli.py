import json
import subprocess
import sys

from quandle_cocycles.cli import EXIT_FAIL, EXIT_HYPOTHESIS, EXIT_OK, EXIT_SPEC, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariant_upoly(capsys):
    code, out, _ = run(capsys, "invariant", "--ring", "p=2,g=xi:5", "--knot", "torus:2,5", "--cocycle", "d:4,1")
    assert code == EXIT_OK
    assert out.strip() == "16 + 80 U^(t+1) + 80 U^(t^3) + 80 U^(t^3+t+1)"


def test_invariant_json(capsys):
    code, out, _ = run(capsys, "invariant", "--ring", "p=2,g=xi:3", "--knot", "torus:2,3", "--cocycle", "d:1,2",
                       "--dim", "3", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["total"] == 64
    assert {"value": "t", "mult": 48} in data["counts"]


def test_invariant_sampled(capsys):
    code, out, _ = run(capsys, "invariant", "--ring", "p=2,g=xi:11", "--knot", "torus:2,11", "--cocycle", "d:1,2",
                       "--dim", "3", "--sample", "300")
    assert code == EXIT_OK
    assert out.strip() == "1073741824\n# sampled 300 shadow colorings, 300 agree with the contribution formula"


def test_invariant_errors(capsys):
    code, out, err = run(capsys, "invariant", "--ring", "p=2,g=xi:5", "--knot", "bogus", "--cocycle", "d:4,1")
    assert code == EXIT_SPEC and "usage" in err
    code, out, _ = run(capsys, "invariant", "--ring", "p=2,g=xi:5", "--knot", "torus:2,5", "--cocycle", "d:2,1")
    assert code == EXIT_HYPOTHESIS and out.startswith("InvalidParams:")
    code, _, err = run(capsys, "invariant", "--ring", "p=3,g=twist:1", "--knot", "twist:1", "--cocycle", "d:1,3",
                       "--dim", "3", "--sample", "10")
    assert code == EXIT_SPEC and "torus" in err
    code, _, _ = run(capsys, "invariant", "--ring", "p=2", "--knot", "torus:2,3", "--cocycle", "d:1,2")
    assert code == EXIT_SPEC


def test_verify_cocycle(capsys):
    code, out, _ = run(capsys, "verify", "--ring", "p=2,g=xi:3", "--cocycle", "d:2,1")
    assert code == EXIT_OK
    assert out.strip() == "cocycle: VERIFIED (exhaustive, 4^3 tuples)"
    code, out, _ = run(capsys, "verify", "--ring", "p=2,g=xi:9", "--cocycle", "d:1,2,4,0", "--dim", "4",
                       "--samples", "5000", "--seed", "3")
    assert code == EXIT_OK
    assert "sampled" in out and "seed 3" in out
    code, out, _ = run(capsys, "verify", "--ring", "p=2,g=xi:5", "--cocycle", "d:2,1")
    assert code == EXIT_HYPOTHESIS


def test_verify_identity(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "xi-derivative", "--m", "7")
    assert code == EXIT_OK and out.count("OK") == 4
    code, out, _ = run(capsys, "verify", "--identity", "xi-product", "--m", "5", "--p", "2")
    assert code == EXIT_FAIL and "FAILED" in out
    code, _, _ = run(capsys, "verify", "--identity", "nope", "--m", "5")
    assert code == EXIT_SPEC


def test_table_trefoil(capsys):
    code, out, _ = run(capsys, "table", "trefoil")
    assert code == EXIT_OK
    assert "MATCH" in out and out.strip().endswith("trefoil: 1 match, 0 erratum candidates, 0 mismatches")


def test_table_twist_p3_reports_erratum(capsys):
    code, out, _ = run(capsys, "table", "twist-p3")
    assert code == EXIT_OK
    assert "ERRATUM CANDIDATE" in out
    assert "exponents (3, 1)" in out and "matches the printed value" in out


def test_table_unknown(capsys):
    code, _, _ = run(capsys, "table", "nope")
    assert code == EXIT_SPEC


def test_witness_commands(capsys):
    code, out, _ = run(capsys, "witness", "--dim", "4", "--n", "1")
    assert code == EXIT_OK
    body = out[:out.index("# ")]
    assert json.loads(body)["verdict"] == "nontrivial"
    assert out.strip().endswith("# verdict: nontrivial")
    code, out, _ = run(capsys, "witness", "--dim", "odd", "--r", "2", "--p", "2", "--n", "1")
    assert code == EXIT_OK and "nontrivial" in out
    code, out, _ = run(capsys, "witness", "--dim", "3", "--case", "3b", "--n", "2")
    assert code == EXIT_OK and out.strip().endswith("inconclusive")
    code, _, _ = run(capsys, "witness", "--dim", "odd")
    assert code == EXIT_SPEC
    code, _, _ = run(capsys, "witness", "--dim", "5")
    assert code == EXIT_SPEC


def test_bad_arguments(capsys):
    assert main([]) == EXIT_SPEC
    assert main(["invariant"]) == EXIT_SPEC


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "quandle_cocycles", "invariant", "--ring", "p=2,g=xi:3",
                          "--knot", "unknot", "--cocycle", "d:2,1"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.strip() == "4"
