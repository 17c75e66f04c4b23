import json

import pytest

from app.cli import EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, exit_code, main, render
from app.core.kcoef import COMMUTATOR_FACTOR
from app.models.core import OutputMode, Verdict
from app.schemas.hall import EnkRead, SerreRead, StraightenRead


def run(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out.strip()


def test_enk_json(capsys):
    code, out = run(capsys, "hall", "enk", "-n", "5", "-k", "2", "--json")
    assert code == EXIT_OK
    assert out == '{"word":[0,0,1,0,1],"prefactor":"1"}'


def test_mul_human(capsys):
    code, out = run(capsys, "hall", "mul", "--a", "0", "--b", "1")
    assert code == EXIT_OK
    assert out == "(-q1*q2)*E[-1, 2] + (1)*E[0, 1]"


def test_gary(capsys):
    code, out = run(capsys, "hall", "gary")
    assert code == EXIT_OK
    assert "verdict: verified" in out


def test_serre(capsys):
    code, out = run(capsys, "hall", "serre", "-k", "0", "--json")
    assert code == EXIT_OK
    assert json.loads(out) == {"k": 0, "verdict": "verified"}


def test_empty_triangle_by_j(capsys):
    code, out = run(capsys, "hall", "empty-triangle", "--u", "(-1,0)", "--j", "1", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] == "verified"


def test_straighten(capsys):
    code, out = run(capsys, "hall", "straighten", "--path", "(-1,1);(-1,0)", "--json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["verdict"] == "verified"
    assert {"path": "(-2,1)", "coef": str(-COMMUTATOR_FACTOR)} in payload["terms"]


def test_quot_comm_row(capsys):
    code, out = run(capsys, "quot", "comm", "--n", "3", "--q", "2")
    assert code == EXIT_OK
    assert out == "comm,3,,,,,2,40,,40"


def test_quot_comm_csv_has_header(capsys):
    code, out = run(capsys, "quot", "comm", "--n", "2", "--q", "2,3", "--csv")
    assert code == EXIT_OK
    assert out.splitlines() == [
        "family,n,d,r,lambda,mu,q,raw,group_order,count",
        "comm,2,,,,,2,4,,4",
        "comm,2,,,,,3,9,,9",
    ]


def test_quot_quot(capsys):
    code, out = run(capsys, "quot", "quot", "--d", "2", "--r", "1", "--q", "2")
    assert code == EXIT_OK
    assert out == "quot,,2,1,,,2,18,6,3"


def test_quot_json_uses_lambda_key(capsys):
    code, out = run(capsys, "quot", "locus", "--kind", "L", "--n", "2", "--lam", "1", "--q", "3", "--json")
    assert code == EXIT_OK
    (record,) = json.loads(out)
    assert record["lambda"] == 1
    assert record["count"] == "8"


def test_quot_fit(capsys):
    code, out = run(
        capsys, "quot", "fit", "--family", "comm", "--n", "2", "--qs", "2,3,5", "--holdout", "7", "--json"
    )
    assert code == EXIT_OK
    fit = json.loads(out)["fit"]
    assert (fit["degree"], fit["leading_coeff"], fit["holdout_ok"]) == (2, "1", True)


def test_fiber_check(capsys):
    code, out = run(capsys, "quot", "fiber-check", "--d", "0", "--n", "1", "--r", "2", "--qs", "2,3,5")
    assert code == EXIT_OK
    assert "status: confirmed" in out


def test_cartan_heisenberg(capsys):
    code, out = run(capsys, "cartan", "heisenberg", "--u", "(1,1)", "--v", "(-1,-1)", "--r", "1", "--json")
    assert code == EXIT_OK
    terms = json.loads(out)["value"]["terms"]
    assert terms == [{"monomial": [], "coef": str(-COMMUTATOR_FACTOR)}]


def test_cartan_h_minus(capsys):
    code, out = run(capsys, "cartan", "h", "--sign", "-", "--length", "1", "--json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["sign"] == "-"
    assert len(payload["coefficients"]) == 2


def test_comm4_components_takes_one_prime(capsys):
    code, out = run(capsys, "quot", "comm4-components", "--q", "2", "--json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["q"] == 2
    assert payload["z1"] + payload["z2_open"] == payload["total"]


def test_out_file(capsys, tmp_path):
    target = tmp_path / "enk.json"
    code = main(["hall", "enk", "-n", "2", "-k", "1", "--json", "--out", str(target)])
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text()) == {"word": [0, 1], "prefactor": "1"}


def test_repeated_runs_are_identical(capsys):
    first = run(capsys, "quot", "quot", "--d", "2", "--r", "2", "--q", "2,3", "--json")
    second = run(capsys, "quot", "quot", "--d", "2", "--r", "2", "--q", "2,3", "--json")
    assert first == second


@pytest.mark.parametrize(
    "argv",
    [
        ["hall", "mul", "--a", "x", "--b", "1"],
        ["hall", "enk", "-n", "2"],
        ["hall", "quadratic", "-m", "0", "-n", "0", "--window", "3,1"],
        ["hall", "straighten"],
        ["quot", "comm", "--n", "3", "--q", "two"],
        ["quot", "comm4-components", "--q", "2,3"],
        ["cartan", "h", "--sign", "*"],
        ["cartan", "heisenberg", "--u", "(0,0)", "--v", "(1,1)"],
        ["hall", "enk", "-n", "2", "-k", "1", "--json", "--csv"],
        ["hall", "enk", "-n", "2", "-k", "1", "--bogus"],
        ["nothing"],
    ],
)
def test_malformed_arguments_exit_with_usage_error(argv):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == EXIT_USAGE


@pytest.mark.parametrize(
    "argv",
    [
        ["hall", "enk", "-n", "0", "-k", "1"],
        ["hall", "empty-triangle", "--u", "(-2,0)", "--v", "(-1,1)"],
        ["hall", "empty-triangle", "--u", "(-1,0)"],
        ["quot", "comm", "--n", "5", "--q", "2"],
        ["quot", "comm", "--n", "3", "--q", "4"],
        ["quot", "locus", "--kind", "M", "--d", "2", "--q", "2"],
        ["hall", "enk", "-n", "2", "-k", "1", "--csv"],
        ["cartan", "heisenberg", "--u", "(1,1)", "--v", "(-1,0)"],
    ],
)
def test_invalid_values_exit_with_usage_error(argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_exit_codes_follow_verdicts():
    assert exit_code(StraightenRead(path="(-1,1)", window="1,1,1", verdict=Verdict.UNKNOWN)) == EXIT_UNKNOWN
    assert exit_code(SerreRead(k=0, verdict=Verdict.VERIFIED)) == EXIT_OK


def test_render_modes():
    result = EnkRead(word=[0, 1], prefactor="1")
    assert render(result, OutputMode.JSON) == '{"word":[0,1],"prefactor":"1"}'
    assert render(result, OutputMode.HUMAN) == "word: [0,1]\nprefactor: 1"
