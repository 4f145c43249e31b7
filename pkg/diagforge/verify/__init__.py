"""Identity fixtures, exact point checks and the brute-force search oracle."""

from diagforge.verify.fixtures import IdentityFixture, load_fixture, load_fixtures, parse_fixture, perturb, residual
from diagforge.verify.points import CheckResult, CrossValidation, check_point, cross_validate
from diagforge.verify.search import SearchResult, brute_search
from diagforge.verify.suite import VerifyReport, check_fixture, run_fixtures, run_identity_suite

__all__ = [
    "CheckResult",
    "CrossValidation",
    "IdentityFixture",
    "SearchResult",
    "VerifyReport",
    "brute_search",
    "check_fixture",
    "check_point",
    "cross_validate",
    "load_fixture",
    "load_fixtures",
    "parse_fixture",
    "perturb",
    "residual",
    "run_fixtures",
    "run_identity_suite",
]
