import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gkm import corpus  # noqa: E402

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def docs():
    return corpus.corpus_documents()


@pytest.fixture(scope="session")
def bundled():
    return {name: corpus.load_bundled(name) for name in corpus.bundled_names()}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, title = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
