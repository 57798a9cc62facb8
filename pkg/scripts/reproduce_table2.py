"""Latency / time / throughput table on the cycle model.

    python3 scripts/reproduce_table2.py [--clock-mhz 117.809] [--multiplier radix4]
"""
import argparse
import sys

from edccsim.cli import main

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--clock-mhz", default="117.809")
    ap.add_argument("--multiplier", default="radix4")
    ap.add_argument("--output", default="text")
    a = ap.parse_args()
    sys.exit(main(["table2", "--clock-mhz", a.clock_mhz, "--multiplier", a.multiplier, "--output", a.output]))
