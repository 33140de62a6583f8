#!/usr/bin/env python3
"""Print the cross-variant KPI table (deterministic variants exactly,
stochastic variants as 1000-seed ensemble means) and save it to out/."""

import sys

from cobotsim.cli import main

if __name__ == "__main__":
    sys.exit(main(["table2", "--out", "out", *sys.argv[1:]]))
