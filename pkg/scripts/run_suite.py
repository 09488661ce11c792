"""
Run every bundled problem twice through the CLI and compare the reports byte for byte.

Usage:
    python -m scripts.run_suite [--seed N] [--keep]

Reports go to reports/<problem>.json (with --keep) and the script exits 1 when
any pair of runs differs.
"""

import argparse
import contextlib
import io
import sys

from config.directories import PROBLEMS_DIR, REPORTS_DIR
from mocks.problems import COMMANDS
from services.cli import run


def run_once(command: str, path: str, seed: int) -> tuple[int, str]:
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = run([command, path, "--seed", str(seed)])
    return code, out.getvalue()


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--keep", action="store_true", help="write the reports to reports/")
    args = parser.parse_args()

    print("=" * 70)
    print(f"DETERMINISM SUITE (seed {args.seed})")
    print("=" * 70)
    mismatches = 0
    for name, command in COMMANDS.items():
        path = PROBLEMS_DIR / f"{name}.json"
        if not path.exists():
            print(f"  {name:<28} missing, run python -m scripts.generate_problems first")
            mismatches += 1
            continue
        first_code, first = run_once(command, str(path), args.seed)
        second_code, second = run_once(command, str(path), args.seed)
        same = first == second and first_code == second_code
        mismatches += not same
        print(f"  {name:<28} {command:<17} exit {first_code}  {'identical' if same else 'DIFFERS'}")
        if args.keep:
            REPORTS_DIR.mkdir(parents=True, exist_ok=True)
            (REPORTS_DIR / f"{name}.json").write_text(first, encoding="utf-8")
    print("=" * 70)
    print("All reports identical" if not mismatches else f"{mismatches} problems differ")
    sys.exit(1 if mismatches else 0)


if __name__ == "__main__":
    main()
