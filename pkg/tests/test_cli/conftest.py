from collections.abc import Iterator

import pytest
import structlog


@pytest.fixture(autouse=True)
def reset_logging() -> Iterator[None]:
    """main() binds structlog to the stderr of the running test; undo that afterwards."""
    yield
    structlog.reset_defaults()
