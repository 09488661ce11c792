#!/usr/bin/env python3
"""
gdual - duality checks for algebras in G-graded vector spaces
"""
import sys

from services.cli import run


def main():
    """Run a gdual command"""
    sys.exit(run())


if __name__ == "__main__":
    main()
