#!/usr/bin/env python3
"""
Test runner for cavity-scatter.
"""
import argparse
import subprocess
import sys
from pathlib import Path

# Add project root to Python path
project_root = str(Path(__file__).parent.parent)
sys.path.insert(0, project_root)

SUITES = {
    "unit": "tests/unit_tests/",
    "integration": "tests/integration_tests/",
    "all": "tests/",
}

COVERED_PACKAGES = [
    "specfun",
    "billiard",
    "coupling",
    "resonance",
    "spectral_stats",
    "condition_strategies",
    "registries",
    "adapters",
    "clients",
]

TEST_REQUIREMENTS = ["pytest>=7.0.0", "pytest-cov>=4.0.0", "pytest-mock>=3.10.0", "mpmath>=1.2.0"]


def build_command(suite: str, verbose=False, coverage=False, fast=False):
    """pytest command line for one suite; fast=True skips the tests marked slow."""
    cmd = [sys.executable, "-m", "pytest", SUITES[suite], "-v" if verbose else "-q", "--tb=short"]
    if fast:
        cmd.extend(["-m", "not slow"])
    if coverage:
        cmd.extend(f"--cov={package}" for package in COVERED_PACKAGES)
        cmd.extend(["--cov-report=term-missing", "--cov-report=html:htmlcov"])
    return cmd


def run_suite(suite: str, verbose=False, coverage=False, fast=False) -> bool:
    print(f"Running {suite} tests...")
    result = subprocess.run(build_command(suite, verbose, coverage, fast), cwd=project_root)
    return result.returncode == 0


def install_test_dependencies() -> bool:
    print("Installing test dependencies...")
    cmd = [sys.executable, "-m", "pip", "install", *TEST_REQUIREMENTS]
    return subprocess.run(cmd, cwd=project_root).returncode == 0


def main():
    """Main test runner function."""
    parser = argparse.ArgumentParser(description="Run cavity-scatter tests")
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--unit", action="store_true", help="Run only unit tests")
    group.add_argument("--integration", action="store_true", help="Run only integration tests")
    parser.add_argument("--fast", action="store_true", help="Skip slow tests (large cavities, full ensembles)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Verbose output")
    parser.add_argument("--coverage", "-c", action="store_true", help="Generate coverage report")
    parser.add_argument("--install-deps", action="store_true", help="Install test dependencies")
    args = parser.parse_args()

    if args.install_deps and not install_test_dependencies():
        print("Failed to install test dependencies")
        sys.exit(1)

    suite = "unit" if args.unit else "integration" if args.integration else "all"
    try:
        success = run_suite(suite, args.verbose, args.coverage, args.fast)
    except KeyboardInterrupt:
        print("\nTests interrupted by user")
        sys.exit(1)

    print("\nAll tests passed!" if success else "\nSome tests failed!")
    sys.exit(0 if success else 1)


if __name__ == "__main__":
    main()
