"""This file contains tests of the identity suite, the point checks and the search oracle."""

import numpy as np
import pytest

from diagforge.config import DEFAULT_SEED, PACKAGED_FIXTURE_DIR
from diagforge.errors import FixtureFormatError, UnknownFixtureError
from diagforge.families import DiagonalSurface, ProjPoint, instantiate
from diagforge.verify import (
    brute_search,
    check_fixture,
    check_point,
    cross_validate,
    load_fixtures,
    parse_fixture,
    perturb,
    residual,
    run_identity_suite,
)

FIXTURE_DIR = PACKAGED_FIXTURE_DIR

SHIPPED = load_fixtures(FIXTURE_DIR)


def test_shipped_fixtures_pass():
    """Every identity in the corpus holds exactly."""
    reports = run_identity_suite(directory=FIXTURE_DIR, seed=DEFAULT_SEED)
    assert len(reports) == len(SHIPPED) == 56
    failed = [report.line() for report in reports if not report.passed]
    assert failed == []
    assert all(report.line().startswith("PASS ") for report in reports)


def test_suite_output_does_not_depend_on_threads():
    """Reports come back in the same order with one or eight workers."""
    ids = [fixture.fixture_id for fixture in SHIPPED[:12]]
    single = run_identity_suite(ids, FIXTURE_DIR, threads=1, seed=DEFAULT_SEED)
    parallel = run_identity_suite(ids, FIXTURE_DIR, threads=8, seed=DEFAULT_SEED)
    assert [(r.fixture_id, r.passed) for r in single] == [(r.fixture_id, r.passed) for r in parallel]
    assert [r.fixture_id for r in single] == ids


@pytest.mark.parametrize("fixture", SHIPPED, ids=[fixture.fixture_id for fixture in SHIPPED])
def test_perturbed_fixtures_fail_with_a_witness(fixture):
    """Changing one literal breaks the identity and the report names a point where it fails."""
    broken = perturb(fixture, np.random.default_rng(DEFAULT_SEED))
    report = check_fixture(broken, DEFAULT_SEED)
    assert not report.passed
    assert set(report.witness) == set(broken.variables)
    assert not residual(broken).remainder.partial_evaluate(report.witness).is_zero()
    assert report.line().startswith(f"FAIL {fixture.fixture_id}~perturbed at ")


@pytest.mark.parametrize(
    "text",
    [
        "id: inert\nvars: x\nlhs: (+ (* 5 x) (* (- x x) (+ x 2)))\nrhs: (* 5 x)\n",
        "id: inert\nvars: x\nlhs: (+ x (* (- x x) 2))\nrhs: x\n",
    ],
)
def test_perturbation_skips_literals_outside_the_identity(text):
    """A literal multiplied by zero is never the one changed; without any other literal rhs gets 1 added."""
    fixture = parse_fixture(text)
    for seed in range(8):
        broken = perturb(fixture, np.random.default_rng(seed))
        assert not residual(broken).remainder.is_zero()
        assert not check_fixture(broken, seed).passed


def test_perturbation_of_the_curve_point_fixture():
    """The 2 of v3_curve_point sits in a factor that vanishes at the point; 2u^2 - v^2 is checked on its own."""
    [fixture] = [f for f in SHIPPED if f.fixture_id == "v3_curve_point"]
    broken = perturb(fixture, np.random.default_rng(DEFAULT_SEED))
    assert broken.lhs == fixture.lhs
    assert not check_fixture(broken, DEFAULT_SEED).passed
    [norm] = [f for f in SHIPPED if f.fixture_id == "v3_curve_point_norm"]
    assert not check_fixture(perturb(norm, np.random.default_rng(DEFAULT_SEED)), DEFAULT_SEED).passed


def test_unknown_fixture_id():
    """Asking for a fixture that is not in the corpus fails."""
    with pytest.raises(UnknownFixtureError):
        run_identity_suite(["nosuch"], FIXTURE_DIR)


def test_missing_fixture_directory(tmp_path):
    """A directory that does not exist is reported."""
    with pytest.raises(FileNotFoundError):
        load_fixtures(tmp_path / "missing")


def test_fixture_with_relation_and_fractions(tmp_path):
    """Identities may hold modulo a relation and may contain quotients."""
    (tmp_path / "circle.fix").write_text(
        "# (x^2 + y^2)^2 = 1 on the unit circle\n"
        "id: circle\n"
        "vars: x y\n"
        "relation: (- (+ (^ x 2) (^ y 2)) 1)\n"
        "lhs: (^ (+ (^ x 2) (^ y 2)) 2)\n"
        "rhs: 1\n",
        encoding="utf-8",
    )
    (tmp_path / "quotient.fix").write_text(
        "id: quotient\nvars: x\nlet: D (- x 1)\nlhs: (/ (- (^ x 2) 1)\n  D)\nrhs: (+ x 1)\n",
        encoding="utf-8",
    )
    reports = run_identity_suite(directory=tmp_path, seed=DEFAULT_SEED)
    assert [(r.fixture_id, r.passed) for r in reports] == [("circle", True), ("quotient", True)]


def test_false_identity_is_reported():
    """(x + 1)^2 = x^2 + 1 fails at every nonzero x."""
    fixture = parse_fixture("id: wrong\nvars: x\nlhs: (^ (+ x 1) 2)\nrhs: (+ (^ x 2) 1)\n")
    report = check_fixture(fixture, DEFAULT_SEED)
    assert not report.passed
    assert report.witness["x"] != 0


@pytest.mark.parametrize(
    "text",
    [
        "id: a\nvars: x\nrhs: 0\n",
        "id: a\nvars: x\nlhs: (+ x y)\nrhs: 0\n",
        "id: a\nvars: x\nlhs: x\nlhs: x\nrhs: 0\n",
        "id: a\nvars: x\nlhs: (+ x\nrhs: 0\n",
        "id: a\nvars: x\nlhs: (% x 2)\nrhs: 0\n",
        "id: a\nvars: x\nlhs: (^ x y)\nrhs: 0\n",
        "id: a b\nvars: x\nlhs: x\nrhs: x\n",
        "id: a\nvars: x x\nlhs: x\nrhs: x\n",
        "id: a\nvars: x\nrelation: (- x x)\nlhs: x\nrhs: x\n",
        "id: a\nvars: x\nlet: x 1\nlhs: x\nrhs: x\n",
        "id: a\nvars: x\nminpoly: e (- (^ e 2) x)\nlhs: x\nrhs: x\n",
        "  id: a\nvars: x\nlhs: x\nrhs: x\n",
        "id: a\nvars: x\nsides: x\nlhs: x\nrhs: x\n",
    ],
)
def test_malformed_fixtures(text):
    """Syntax errors, undeclared names and missing headers are format errors."""
    with pytest.raises(FixtureFormatError):
        parse_fixture(text)


def test_duplicate_fixture_ids(tmp_path):
    """Two files declaring the same id are rejected."""
    for name in ("one.fix", "two.fix"):
        (tmp_path / name).write_text("id: same\nvars: x\nlhs: x\nrhs: x\n", encoding="utf-8")
    with pytest.raises(FixtureFormatError):
        load_fixtures(tmp_path)


def test_check_point_accepts_a_solution():
    """x^6 + y^6 - 36z^6 + 2w^3 vanishes at (37, 17, 21, 629)."""
    surface = DiagonalSurface((1, 1, -36, 2), (6, 6, 6, 3))
    result = check_point(surface, (37, 17, 21, 629))
    assert result.accepted
    assert result.value == 0
    assert result.reason == ""


def test_check_point_rejections():
    """Nonzero values and trivial points are rejected, the zero vector is malformed."""
    result = check_point(DiagonalSurface((1, 1, 1, 1)), (1, 1, 1, 1))
    assert not result.accepted
    assert result.value == 4
    assert result.reason == "value 4"
    trivial = check_point(DiagonalSurface((1, 1, 1, -1)), (1, 0, 0, 1))
    assert not trivial.accepted
    assert trivial.value == 0
    assert trivial.reason == "2 zero coordinates"
    with pytest.raises(ValueError):
        check_point(DiagonalSurface((1, 1, 1, 1)), (0, 0, 0, 0))


def test_search_finds_the_small_solutions():
    """x^4 + y^4 - 2z^4 - 14w^4 = 0 has the class of (0, 2, 1, 1) within height 3."""
    surface = DiagonalSurface((1, 1, -2, -14))
    result = brute_search(surface, 3)
    assert ProjPoint((0, 2, 1, -1)) in result.points
    assert ProjPoint((0, 2, 1, 1)) in result.points
    assert ProjPoint((2, 0, 1, 1)) in result.points
    assert list(result.points) == sorted(result.points, key=lambda p: p.coordinates)
    assert result.candidates == 7**4
    for point in result.points:
        assert check_point(surface, point).accepted


def test_search_on_a_definite_surface_is_empty():
    """x^4 + y^4 + z^4 + 2w^4 has no real zeros."""
    assert brute_search(DiagonalSurface((1, 1, 1, 2)), 5).points == ()


def test_search_is_monotone_in_the_bound():
    """Raising the bound only adds points."""
    surface = DiagonalSurface((1, 1, -2, -14))
    small = set(brute_search(surface, 2).points)
    large = set(brute_search(surface, 4).points)
    assert small <= large


def test_search_on_a_weighted_surface():
    """The weight two coordinate ranges up to H^2."""
    surface = DiagonalSurface((1, 1, -36, 2), (6, 6, 6, 3))
    assert ProjPoint((37, 17, 21, 629)) in brute_search(surface, 37).points


@pytest.mark.parametrize("coefficients, bound", [((1, 1, -2, -14), 5), ((4, 144, -3, -1), 60)])
def test_search_does_not_depend_on_threads(coefficients, bound):
    """One worker and eight workers find the same points, on x^4 + y^4 = 2z^4 + 14w^4 and on v1_ex1 at u = 3."""
    surface = DiagonalSurface(coefficients)
    assert brute_search(surface, bound, threads=1).points == brute_search(surface, bound, threads=8).points


@pytest.mark.parametrize("bound", [0, -1])
def test_search_rejects_small_bounds(bound):
    """The height bound is at least one."""
    with pytest.raises(ValueError):
        brute_search(DiagonalSurface((1, 1, -2, -14)), bound)


@pytest.mark.parametrize(
    "family_id, params, bound, multiples",
    [("sec3_St", {"u": "1"}, 5, [1]), ("v1_ex1", {"u": "3"}, 60, [1, 2, 3])],
)
def test_generated_points_are_found_by_the_search(family_id, params, bound, multiples):
    """Generated points of small height are among the points the exhaustive search finds."""
    validation = cross_validate(instantiate(family_id, params), bound, multiples)
    assert validation.consistent
    assert validation.generated
    assert validation.missed == ()


def test_cross_validation_without_multiples():
    """No multiples leaves nothing to compare."""
    validation = cross_validate(instantiate("sec3_St", {"u": "1"}), 3, [])
    assert validation.generated == ()
    assert validation.consistent
