import json
import subprocess
import sys

import pytest

from quadlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "200", "--seed", "1")
    doc = json.loads(out)
    assert code == 0 and doc["seed"] == 1
    assert {c["name"] for c in doc["checks"]} >= {"brahmagupta", "recut_invariance", "morph_invariance"}
    assert all(c["pass"] and c["samples"] == 200 for c in doc["checks"])


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--samples", "0"],
        ["verify", "--tol", "NOPE=1"],
        ["fiber", "--rho", "1/2", "--sigma", "3/4", "--exact"],
        ["fiber", "--rho", "abc", "--sigma", "3/4"],
        ["reduce", "--max-rounds", "0"],
        ["bogus"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_fiber_exact_report(capsys):
    code, out, _ = run(capsys, "fiber", "--rho", "3/4", "--sigma", "5/12", "--exact")
    doc = json.loads(out)
    assert code == 0 and doc["certified"] and doc["kappa"] == "45/14"
    assert doc["offdiag_max_A"] == "0" and doc["kappa_sq_minus_mu"] == "0"
    assert "1,1" in doc["coeffs_A"] and "2,2" in doc["coeffs_B2"]


def test_fiber_error_names_slope(capsys):
    _, _, err = run(capsys, "fiber", "--rho", "1/2", "--sigma", "3/4", "--exact")
    assert "rho" in err


def test_fiber_approx(capsys):
    code, out, _ = run(capsys, "fiber", "--rho", "0.37", "--sigma", "2.1")
    assert code == 0 and json.loads(out)["exact"] is False


def test_reproducible_output_is_byte_identical(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        assert main(["reduce", "--seed", "9", "--reproducible", "--timestamp", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert b"timestamp" not in outs[0]


def test_timestamp_opt_in(capsys):
    _, out, _ = run(capsys, "perp", "--samples", "10", "--timestamp")
    assert "timestamp" in json.loads(out)["metadata"]


def test_reduce_svg_frames(tmp_path):
    out = tmp_path / "frames"
    assert main(["reduce", "--seed", "42", "--svg", "--out", str(out)]) == 0
    trace = json.loads((out / "trace.json").read_text())
    frames = sorted(p.name for p in out.glob("step_*.svg"))
    assert frames[0] == "step_000.svg" and len(frames) == len(trace["steps"]) + 1
    assert (out / "step_000.svg").read_text().startswith("<svg")


def test_reduce_square_file(tmp_path, capsys):
    f = tmp_path / "sq.json"
    f.write_text(json.dumps({"D": 1, "theta0": 0.0, "arcs": [1.5707963267948966] * 4}))
    code, out, _ = run(capsys, "reduce", "--quad", str(f))
    assert code == 0 and json.loads(out)["steps"] == []


def test_reduce_bad_file(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"D": 1, "arcs": [1, 1, 1, 1]}))
    assert run(capsys, "reduce", "--quad", str(f))[0] == 2


def test_reduce_round_limit_exit_1(capsys):
    assert run(capsys, "reduce", "--seed", "42", "--max-rounds", "1")[0] == 1


def test_perp_and_perturb(capsys):
    code, out, _ = run(capsys, "perp", "--samples", "300")
    assert code == 0 and json.loads(out)["checks"][0]["pass"]
    code, out, _ = run(capsys, "perturb", "--samples", "50")
    doc = json.loads(out)
    assert code == 0 and doc["angle_failures"] == 0


def test_text_format(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "50", "--format", "text")
    assert code == 0 and out.startswith("PASS")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "quadlab", "perp", "--samples", "20"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["checks"][0]["pass"]
