"""Run the acceptance suite and print its per-criterion status lines.

Pass --nightly to include the end-to-end compile-and-grow check.
"""
import argparse
import os
import subprocess
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nightly", action="store_true", help="also run criterion 11")
    args = ap.parse_args()
    env = dict(os.environ)
    if args.nightly:
        env["TILEIU_NIGHTLY"] = "1"
    cmd = [sys.executable, "-m", "pytest", "-q", "-rs", os.path.join(ROOT, "tests", "test_acceptance.py")]
    return subprocess.call(cmd, cwd=ROOT, env=env)


if __name__ == "__main__":
    sys.exit(main())
