import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from isoseq import construct_family, make_config  # noqa: E402


@pytest.fixture
def square():
    # {0,1} and {2,3} are the diagonals (colour a), the sides are b
    return make_config(4, [(0, 1, "a"), (2, 3, "a"), (0, 2, "b"), (0, 3, "b"), (1, 2, "b"), (1, 3, "b")])


@pytest.fixture
def pentagon():
    return construct_family("pentagon")
