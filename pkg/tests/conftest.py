import json

import pytest

from mocks.problems import PROBLEMS


@pytest.fixture
def problem_file(tmp_path):
    """Write a bundled problem (by name) or a raw dict to a JSON file."""

    def write(problem, name: str = "problem") -> str:
        data = PROBLEMS[problem] if isinstance(problem, str) else problem
        path = tmp_path / f"{problem if isinstance(problem, str) else name}.json"
        path.write_text(json.dumps(data, indent=2))
        return str(path)

    return write
