"""
Write the canonical problem files of mocks/problems.py to resources/problems/.

Usage:
    python -m scripts.generate_problems [output_dir]
"""

import json
import sys
from pathlib import Path

from config.directories import PROBLEMS_DIR
from mocks.problems import PROBLEMS


def write_problems(target: Path) -> list[Path]:
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for name, problem in PROBLEMS.items():
        path = target / f"{name}.json"
        path.write_text(json.dumps(problem, indent=2) + "\n", encoding="utf-8")
        written.append(path)
    return written


def main():
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else PROBLEMS_DIR
    for path in write_problems(target):
        print(f"Wrote {path}")


if __name__ == "__main__":
    main()
