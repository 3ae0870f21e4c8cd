#!/usr/bin/env python3
"""
Human-readable verification health check

Runs the full verification report over the configured fixtures and prints a
grouped ✓/✗ summary. Use `ptscatter verify` for machine-readable output.

Usage: scripts/verification-check.py [--config PATH] [--A A --B B]
"""

import sys
import argparse
from pathlib import Path

# Check Python version
if sys.version_info < (3, 9):
    print("Error: Python 3.9+ required", file=sys.stderr)
    sys.exit(1)

SCRIPT_DIR = Path(__file__).parent
BASE_DIR = SCRIPT_DIR.parent
sys.path.insert(0, str(BASE_DIR))

from ptscatter.config import load_config  # noqa: E402
from ptscatter.exceptions import PtscatterError  # noqa: E402
from ptscatter.potential import PotentialParams  # noqa: E402
from ptscatter.verify import FAIL, INFO, PASS, fixture_checks  # noqa: E402


def parse_args():
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(description="Verification health check")
    parser.add_argument("--config", help="YAML file overriding packaged defaults")
    parser.add_argument("--A", type=float, dest="A")
    parser.add_argument("--B", type=float, dest="B")
    return parser.parse_args()


def main():
    """Print the verification report grouped by fixture and return the exit code."""
    args = parse_args()

    try:
        config = load_config(args.config)
        if args.A is not None and args.B is not None:
            fixtures = [PotentialParams(args.A, args.B)]
        else:
            fixtures = [PotentialParams(float(a), float(b)) for a, b in config.get("fixtures", [])]
    except PtscatterError as e:
        print(f"Error loading configuration: {e}", file=sys.stderr)
        return 1

    print("Verification Health Check")
    print("=" * 70)

    failures = []
    for params in fixtures:
        print(f"\nA={params.A:g}, B={params.B:g}:")
        for result in fixture_checks(params, config):
            name = result.name.split(" ", 2)[-1]
            if result.status == PASS:
                print(f"  ✓ {name}: {result.measured:.3g} (limit {result.tolerance:.0e})")
            elif result.status == INFO:
                print(f"  · {name}: {result.measured:.12g} {result.detail}")
            else:
                print(f"  ✗ {name}: {result.measured:.3g} (limit {result.tolerance:.0e}) {result.detail}")
                failures.append(result)

    print()
    if not failures:
        print("✓ All checks passed")
        return 0
    for result in failures:
        print(f"❌ {result.status}: {result.name}")
    return 2


if __name__ == '__main__':
    sys.exit(main())
