import json
import math
import subprocess
import sys

import pytest

from torusdiag import ParseError, ValidationError
from torusdiag.cli import main, run
from torusdiag.report import dumps
from torusdiag.specfile import parse_matrix_file, parse_spec_text

WORKED_SPEC = """\
# three-variable worked example
function   = 1/(1+z1+z2+z3+z2*z3)
variables  = z1, z2, z3
directions = 1 1 1; 1 2 2
matrix     = 1 1 0; 1 2 0; 1 2 1
rho        = -2, -2, -2
"""

BINOMIAL_SPEC = """\
function   = 1/(1-z1-z2)
variables  = z1 z2
directions = (1, 1)
t          = 0.1
tol        = 1e-12
series_order = 40
"""


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def test_parse_spec_text():
    spec = parse_spec_text(WORKED_SPEC)
    assert spec.variables == ("z1", "z2", "z3")
    assert spec.directions == ((1, 1, 1), (1, 2, 2))
    assert spec.matrix_override == ((1, 1, 0), (1, 2, 0), (1, 2, 1))
    assert spec.rho == (-2.0, -2.0, -2.0)
    assert spec.t_values is None
    b = parse_spec_text(BINOMIAL_SPEC)
    assert b.rho == "auto" and b.t_values == (0.1,) and b.tol == 1e-12


@pytest.mark.parametrize(
    "text, exc",
    [
        ("function = 1\n", ValidationError),
        ("function = 1\nvariables = x\ncolour = red\n", ParseError),
        ("function = 1\nvariables = x\nvariables = y\n", ParseError),
        ("function = 1\nvariables = x\njust words\n", ParseError),
        ("function = 1\nvariables = x y\ndirections = 1 0 0\n", ValidationError),
        ("function = 1\nvariables = x\ndirections = 1; 1; 1\n", ValidationError),
        ("function = 1\nvariables = x\ndirections = 1.5\n", ParseError),
    ],
)
def test_bad_spec_files(text, exc):
    with pytest.raises(exc):
        parse_spec_text(text)


def test_matrix_file_format():
    assert parse_matrix_file("1 1 0\n1 2 0  # row two\n1, 2, 1\n") == ((1, 1, 0), (1, 2, 0), (1, 2, 1))


def test_reduce_command(write):
    report, code, plot = run(["reduce", "--spec", write("p.spec", WORKED_SPEC)])
    assert code == 0
    red = report["reduction"]
    assert red["A_inv"] == [[2, -1, 0], [-1, 1, 0], [0, -1, 1]]
    assert red["rho_prime"] == [-2.0]
    den = {tuple(t["exponent"]): t["coefficient"] for t in red["integrand"]["denominator_terms"]}
    assert den == {(0, 0, 0): "1", (2, -1, 0): "1", (-1, 1, -1): "1", (0, 0, 1): "1", (-1, 1, 0): "1"}
    assert report["verification"]["passed"] is True
    assert report["certificates"]["Q"]["status"] == "PASS"
    assert set(report["polytopes"]) == {"N_Q", "A_inv_N_Q", "N_prime"}
    assert report["polytopes"]["N_prime"] == [[-1], [1]]
    assert plot.startswith("# N_Q\n")


def test_reduce_identity(write):
    path = write("id.spec", "function = 1/(1-x-y)\nvariables = x, y\ndirections = 1 0; 0 1\nrho = -1 -1\n")
    report, code, _ = run(["reduce", "--spec", path])
    assert code == 0
    assert report["reduction"]["A"] == [[1, 0], [0, 1]]
    assert report["reduction"]["integrand"]["text"] == "(1)/(1 - t2 - t1)"


def test_reduce_not_completable(write):
    path = write("bad.spec", "function = 1/(1-x-y)\nvariables = x, y\ndirections = 2 0; 0 1\n")
    report, code, _ = run(["reduce", "--spec", path])
    assert code == 2
    assert report["error"]["code"] == "lattice.not_completable"
    assert report["error"]["details"]["invariant_factor"] == 2


def test_evaluate_binomial(write):
    report, code, _ = run(["evaluate", "--spec", write("b.spec", BINOMIAL_SPEC)])
    assert code == 0
    num = report["numeric"]
    target = 1 / math.sqrt(0.6)
    for key in ("series", "original", "reduced"):
        assert num[key]["value"]["re"] == pytest.approx(target, rel=1e-8)
    assert all(d["rel"] < 1e-8 for d in num["deltas"].values())
    assert set(num["deltas"]) == {"series-original", "series-reduced", "original-reduced"}


def test_evaluate_at_zero(write):
    report, code, _ = run(["evaluate", "--spec", write("b.spec", BINOMIAL_SPEC), "--t", "0"])
    assert code == 0
    for key in ("series", "original", "reduced"):
        assert report["numeric"][key]["value"]["re"] == pytest.approx(1, rel=1e-12)


def test_evaluate_rejects_inadmissible_t(write):
    path = write("p.spec", WORKED_SPEC + "t = 0.01, 0.002\n")
    report, code, _ = run(["evaluate", "--spec", path])
    assert code == 2
    err = report["error"]
    assert err["code"] == "quadrature.inadmissible_t"
    assert err["details"]["index"] == 1
    assert err["details"]["bound"] == pytest.approx(math.exp(-6))


def test_evaluate_nonconvergence(write):
    path = write("b.spec", BINOMIAL_SPEC)
    report, code, _ = run(["evaluate", "--spec", path, "--t", "0.13", "--tol", "1e-15", "--n-max", "8"])
    assert code == 3
    assert report["error"]["code"] == "quadrature.not_converged"
    assert report["numeric"]["reduced"]["converged"] is False


def test_parse_error_exit_code(write):
    path = write("x.spec", "function = 1/(1+z2z3)\nvariables = z2, z3\n")
    report, code, _ = run(["polytope", "--spec", path])
    assert code == 4
    assert report["error"]["code"] == "cli.parse"
    assert report["error"]["details"]["column"] == 6


def test_missing_spec_file(tmp_path):
    report, code, _ = run(["reduce", "--spec", str(tmp_path / "nope.spec")])
    assert code == 2 and report["error"]["code"] == "cli.io"


def test_polytope_command(write):
    path = write("q.spec", "function = 1/(1+z1+z2+z3+z2*z3)\nvariables = z1 z2 z3\n")
    report, code, plot = run(["polytope", "--spec", path])
    assert code == 0
    assert report["polytopes"] == {"N_Q": [[0, 0, 0], [0, 0, 1], [0, 1, 0], [0, 1, 1], [1, 0, 0]]}
    assert plot == "# N_Q\n(0, 0, 0)\n(0, 0, 1)\n(0, 1, 0)\n(0, 1, 1)\n(1, 0, 0)\n"
    mono = write("m.spec", "function = 3*x^2*y^-1\nvariables = x y\n")
    assert run(["polytope", "--spec", mono])[0]["polytopes"]["N_Q"] == [[2, -1]]


def test_polytope_with_directions_has_image_vertices(write):
    report, _, _ = run(["polytope", "--spec", write("p.spec", WORKED_SPEC)])
    image = {tuple(v) for v in report["polytopes"]["A_inv_N_Q"]}
    assert {(0, 0, 1), (2, -1, 0), (-1, 1, 0), (-1, 1, -1), (0, 0, 0)} == image


def test_check_rho(write):
    path = write("q.spec", "function = 1/(1+z1+z2+z3+z2*z3)\nvariables = z1 z2 z3\ndirections = 1 1 1; 1 2 2\n")
    report, code, _ = run(["check-rho", "--spec", path, "--t", "0.002,0.00004"])
    assert code == 0
    assert report["rho"] == [-2.0, -2.0, -2.0]
    assert report["certificate"]["status"] == "PASS"
    assert report["t_admissible"] is True
    report, _, _ = run(["check-rho", "--spec", path, "--rho=0,0,0"])
    assert report["certificate"]["status"] == "INCONCLUSIVE"


def test_matrix_flag(write):
    spec = write("b.spec", BINOMIAL_SPEC)
    matrix = write("a.txt", "1 0\n1 1\n")
    report, code, _ = run(["reduce", "--spec", spec, "--matrix", matrix, "--rho=-1,-1"])
    assert code == 0
    assert report["reduction"]["integrand"]["text"] == "(1)/(1 - w2 - t1*w2^-1)"


def test_reports_are_byte_identical(write, tmp_path, capsys):
    path = write("p.spec", WORKED_SPEC)
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        assert main(["reduce", "--spec", path, "--json", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    parsed = json.loads(outs[0])
    assert list(parsed)[:3] == ["command", "input", "reduction"]


def test_float_formatting():
    text = dumps({"x": 0.1, "y": 1.0, "z": complex(1 / 3, 0)})
    assert '"x": 0.10000000000000001' in text
    assert '"y": 1.0' in text
    assert json.loads(text)["z"] == {"re": 1 / 3, "im": 0.0}


def test_plot_data_file(write, tmp_path):
    out = tmp_path / "plot.txt"
    assert main(["polytope", "--spec", write("p.spec", WORKED_SPEC), "--plot-data", str(out), "--json",
                 str(tmp_path / "r.json")]) == 0
    text = out.read_text()
    assert "# A_inv_N_Q\n" in text and "(-1, 1, -1)\n" in text


def test_module_entry_point(write):
    path = write("b.spec", BINOMIAL_SPEC)
    proc = subprocess.run([sys.executable, "-m", "torusdiag", "evaluate", "--spec", path],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["numeric"]["reduced"]["converged"] is True


def test_polytope_of_bare_polynomial(write):
    path = write("q.spec", "function = 1+z1+z2+z3+z2*z3\nvariables = z1 z2 z3\n")
    report, code, _ = run(["polytope", "--spec", path])
    assert code == 0
    assert {tuple(v) for v in report["polytopes"]["N_Q"]} == {(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1)}
