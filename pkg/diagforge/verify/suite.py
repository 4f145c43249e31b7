"""This file contains the identity suite: every fixture is reduced exactly and reported as passed or failed."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from diagforge.config import Settings
from diagforge.verify.fixtures import IdentityFixture, find_witness, load_fixtures, lookup, residual

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of checking one fixture."""

    fixture_id: str
    passed: bool
    # small integer values of the free variables at which the reduced difference is nonzero; None on success
    witness: Optional[Dict[str, int]]
    # wall time of the check in seconds
    seconds: float

    def __post_init__(self):
        """Failed reports must carry a witness."""
        if not self.passed and self.witness is None:
            raise ValueError(f"failed report for {self.fixture_id} without a witness")

    def line(self) -> str:
        """PASS/FAIL line for terminal output."""
        if self.passed:
            return f"PASS {self.fixture_id} ({self.seconds:.3f}s)"
        witness = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"FAIL {self.fixture_id} at {witness or 'any point'} ({self.seconds:.3f}s)"


def check_fixture(fixture: IdentityFixture, seed: int) -> VerifyReport:
    """Checks one fixture exactly."""
    start = time.perf_counter()
    reduced = residual(fixture)
    passed = reduced.remainder.is_zero()
    witness = None if passed else find_witness(fixture, reduced, seed)
    seconds = time.perf_counter() - start
    if passed:
        logger.debug("fixture %s passed in %.3fs", fixture.fixture_id, seconds)
    else:
        logger.warning("fixture %s failed, witness %s", fixture.fixture_id, witness)
    return VerifyReport(fixture.fixture_id, passed, witness, seconds)


def run_fixtures(
    fixtures: Sequence[IdentityFixture], threads: int = 1, seed: Optional[int] = None
) -> List[VerifyReport]:
    """Checks the given fixtures; reports come back in input order regardless of the thread count."""
    if threads < 1:
        raise ValueError(f"threads must be positive, got {threads}")
    seed = Settings.from_env().seed if seed is None else seed
    if threads == 1 or len(fixtures) < 2:
        reports = [check_fixture(f, seed) for f in fixtures]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            reports = list(executor.map(lambda f: check_fixture(f, seed), fixtures))
    failed = sum(1 for r in reports if not r.passed)
    logger.info("identity suite: %d passed, %d failed", len(reports) - failed, failed)
    return reports


def run_identity_suite(
    ids: Optional[Sequence[str]] = None,
    directory: Optional[Path] = None,
    threads: int = 1,
    seed: Optional[int] = None,
) -> List[VerifyReport]:
    """Runs the fixture corpus.

    Args:
        ids: restrict to these fixture ids; all fixtures when None
        directory: fixture directory; the configured one when None
        threads: worker threads
        seed: seed of the witness search; the configured one when None

    Returns:
        one report per fixture, sorted by id unless ids fixes the order

    Raises:
        UnknownFixtureError: an id that is not in the corpus
    """
    settings = Settings.from_env()
    fixtures = load_fixtures(settings.fixture_dir if directory is None else directory)
    if ids is not None:
        fixtures = lookup(fixtures, list(ids))
    return run_fixtures(fixtures, threads, settings.seed if seed is None else seed)
