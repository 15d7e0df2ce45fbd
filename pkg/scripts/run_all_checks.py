"""Run the full congruence registry the way the paper-desk session does:
seeded from an on-disk cache when available, writing back afterwards.

Typical use:
    python3 scripts/run_all_checks.py --cache-dir ~/.cache/sptlab --jobs 4
"""

import argparse
import sys

from sptlab.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--cache-dir", default=None)
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--nmax", type=int, default=None,
                    help="override every sweep bound (smaller = quicker look)")
    args = ap.parse_args()
    argv = ["check", "all", "--jobs", str(args.jobs), "--format", args.format]
    if args.cache_dir:
        argv += ["--cache-dir", args.cache_dir]
    if args.nmax:
        argv += ["--nmax", str(args.nmax)]
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
