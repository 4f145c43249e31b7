"""This file contains tests of the command line, run in process through main()."""

import json
import logging

import pytest

from diagforge.cli import EXIT_OK, EXIT_REJECTED, EXIT_USAGE, main, parse_multiples, parse_params
from diagforge.families import DiagonalSurface, same_solution


def _json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.fixture(autouse=True)
def detach_log_handlers():
    """main() binds a handler to the captured stderr of one test; drop it afterwards."""
    yield
    logging.getLogger("diagforge").handlers.clear()


def test_families_listing(capsys):
    """One JSON object per registered family."""
    assert main(["families"]) == EXIT_OK
    records = _json_lines(capsys.readouterr().out)
    assert len(records) == 23
    assert records[0]["id"] == "v1_ex1"
    assert records[0]["sample"] == {"u": "3"}


def test_families_listing_to_file(tmp_path, capsys):
    """--out writes the listing to a file and leaves stdout empty."""
    target = tmp_path / "out" / "families.jsonl"
    assert main(["families", "--out", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert len(_json_lines(target.read_text(encoding="utf-8"))) == 23


def test_gen_writes_verified_points(capsys):
    """The second multiple on (1+u)X^4 + 4u^2(1+u)Y^4 - uZ^4 - W^4 at u = 3 is the class of (5, 1, -3, -7)."""
    assert main(["gen", "--family", "v1_ex1", "--param", "u=3", "--multiples", "2"]) == EXIT_OK
    [record] = _json_lines(capsys.readouterr().out)
    assert record["family"] == "v1_ex1"
    assert record["params"] == {"u": "3"}
    assert record["m"] == 2
    assert record["verified"] is True
    assert all(isinstance(c, str) for c in record["point"])
    assert record["surface"] == {"coefficients": ["4", "144", "-3", "-1"], "exponents": [4, 4, 4, 4]}
    surface = DiagonalSurface((4, 144, -3, -1))
    assert same_solution(surface, tuple(int(c) for c in record["point"]), (5, 1, -3, -7))


def test_gen_with_sample_parameters(tmp_path):
    """--sample fills in the documented parameters; the default range is 1..5."""
    target = tmp_path / "points.jsonl"
    assert main(["gen", "--family", "sec3_St", "--sample", "--out", str(target)]) == EXIT_OK
    records = _json_lines(target.read_text(encoding="utf-8"))
    assert [r["m"] for r in records] == [1, 2, 3, 4, 5]
    surface = DiagonalSurface((1, 1, -2, -14))
    assert same_solution(surface, tuple(int(c) for c in records[0]["point"]), (0, 2, 1, -1))


def test_gen_on_the_rational_conic_family(capsys):
    """conic_2k2 at its sample writes five verified points of x^4 + y^4 + z^4 = 32 w^4."""
    assert main(["gen", "--family", "conic_2k2", "--sample"]) == EXIT_OK
    records = _json_lines(capsys.readouterr().out)
    assert [r["m"] for r in records] == [1, 2, 3, 4, 5]
    for record in records:
        x, y, z, w = (int(c) for c in record["point"])
        assert x**4 + y**4 + z**4 == 32 * w**4


def test_gen_output_does_not_depend_on_threads(tmp_path):
    """Byte identical files with one and four workers."""
    outputs = []
    for threads in ("1", "4"):
        target = tmp_path / f"points-{threads}.jsonl"
        argv = ["gen", "--family", "v2_ex2", "--param", "alpha=2", "--threads", threads, "--out", str(target)]
        assert main(argv) == EXIT_OK
        outputs.append(target.read_bytes())
    assert outputs[0] == outputs[1]


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--family", "v1_ex1", "--param", "u=0"],
        ["gen", "--family", "v1_ex1"],
        ["gen", "--family", "nosuch", "--sample"],
        ["gen", "--family", "v1_ex1", "--param", "u=3", "--param", "u=4"],
        ["gen", "--family", "v1_ex1", "--param", "u"],
        ["gen", "--family", "v1_ex1", "--param", "u=3", "--multiples", "5..1"],
        ["gen", "--family", "v1_ex1", "--param", "u=3", "--multiples", "two"],
        ["check", "--surface", "1,1,1,1", "--point", "0,0,0,0"],
        ["check", "--surface", "1,1,1", "--point", "1,1,1,1"],
        ["check", "--surface", "1,1,1,1", "--exponents", "4,4,4,5", "--point", "1,1,1,1"],
        ["search", "--surface", "1,1,-2,-14", "--height", "0"],
        ["verify-identities", "--id", "nosuch"],
        ["chain", "--t0", "1", "--length", "0"],
        ["--log-level", "chatty", "families"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    """Bad parameters and malformed input exit with status 2."""
    assert main(argv) == EXIT_USAGE
    assert capsys.readouterr().err


def test_bad_environment(monkeypatch, capsys):
    """Malformed DIAGFORGE_* variables are usage errors."""
    monkeypatch.setenv("DIAGFORGE_THREADS", "many")
    assert main(["families"]) == EXIT_USAGE
    assert "DIAGFORGE_THREADS" in capsys.readouterr().err


def test_check_accepts_a_weighted_solution(capsys):
    """(37, 17, 21, 629) solves x^6 + y^6 - 36z^6 + 2w^3 = 0."""
    argv = ["check", "--surface", "1,1,-36,2", "--exponents", "6,6,6,3", "--point", "37,17,21,629"]
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out.startswith("ACCEPTED (37, 17, 21, 629)")


def test_check_accepts_negative_coordinates(capsys):
    """Negative leading values are passed in the --point=... form."""
    assert main(["check", "--surface", "1,1,-2,-14", "--point=0,-2,1,1"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("ACCEPTED")


def test_check_rejects_a_non_solution(capsys):
    """The output names the value of the polynomial."""
    assert main(["check", "--surface", "1,1,1,1", "--point", "1,1,1,1"]) == EXIT_REJECTED
    assert "value 4" in capsys.readouterr().out


def test_search_output(tmp_path, capsys):
    """Points are written with their heights as strings."""
    target = tmp_path / "search.jsonl"
    assert main(["search", "--surface=1,1,-2,-14", "--height", "3", "--out", str(target)]) == EXIT_OK
    records = _json_lines(target.read_text(encoding="utf-8"))
    assert {"point": ["0", "2", "1", "-1"], "height": "2"} in records
    assert "points up to height 3" in capsys.readouterr().err


def test_search_without_solutions(tmp_path):
    """A definite surface gives an empty file."""
    target = tmp_path / "search.jsonl"
    assert main(["search", "--surface", "1,1,1,2", "--height", "5", "--out", str(target)]) == EXIT_OK
    assert target.read_text(encoding="utf-8") == ""


def test_verify_identities_selected(capsys):
    """Selected fixtures print PASS lines in the order asked for."""
    assert main(["verify-identities", "--id", "ident0", "--id", "epsilon"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert [line.split()[:2] for line in lines] == [["PASS", "ident0"], ["PASS", "epsilon"]]


def test_verify_identities_failure(tmp_path, capsys):
    """A false identity prints FAIL with a witness and exits with status 1."""
    fixture = "id: wrong\nvars: x\nlhs: (^ (+ x 1) 2)\nrhs: (+ (^ x 2) 1)\n"
    (tmp_path / "wrong.fix").write_text(fixture, encoding="utf-8")
    assert main(["--fixtures", str(tmp_path), "verify-identities"]) == EXIT_REJECTED
    captured = capsys.readouterr()
    assert captured.out.startswith("FAIL wrong at x=")
    assert "1 of 1 fixtures failed" in captured.err


def test_chain(capsys):
    """At t0 = 1 the first member is (3, 2, -1, 1) with right-hand side 11^3."""
    assert main(["chain", "--t0", "1", "--length", "1"]) == EXIT_OK
    [record] = _json_lines(capsys.readouterr().out)
    assert record["rhs"] == "1331"
    assert record["verified"] is True
    surface = DiagonalSurface((2, -2, 1, -1331), (6, 6, 6, 6))
    assert same_solution(surface, tuple(int(c) for c in record["point"]), (3, 2, -1, 1))


def test_equalized_chain(capsys):
    """--equalize adds the common value of 2X^6 - 2Y^6 + Z^6."""
    assert main(["chain", "--t0", "1", "--length", "2", "--equalize"]) == EXIT_OK
    records = _json_lines(capsys.readouterr().out)
    assert [r["m"] for r in records] == [1, 2]
    assert len({r["value"] for r in records}) == 1
    for record in records:
        x, y, z, _ = (int(c) for c in record["point"])
        assert 2 * x**6 - 2 * y**6 + z**6 == int(record["value"])


@pytest.mark.parametrize("text, expected", [("3", [3]), ("1..5", [1, 2, 3, 4, 5]), ("-2..2", [-2, -1, 1, 2])])
def test_parse_multiples(text, expected):
    """Single indices and inclusive ranges; the origin is skipped."""
    assert parse_multiples(text) == expected


def test_parse_params():
    """name=value pairs, stripped."""
    assert parse_params(["u = 3", "t0=-1/2"]) == {"u": "3", "t0": "-1/2"}
    assert parse_params(None) == {}
