from __future__ import annotations

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def report(capsys):
    """Print a line to the terminal even while pytest captures output."""
    def emit(line: str) -> None:
        with capsys.disabled():
            print(f"\n{line}")
    return emit
