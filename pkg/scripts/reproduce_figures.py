#!/usr/bin/env python
"""Regenerate every reference figure dataset under one output root.

Equivalent to running `doublewell reproduce figN --out ROOT/figN` for each of
the four presets. Usage: python scripts/reproduce_figures.py [ROOT]
(default ROOT: figures).
"""

import os
import sys

from doublewell.cli import main


def run(root: str = "figures") -> int:
    worst = 0
    for figure in ("fig3", "fig4", "fig5", "fig6"):
        code = main(["reproduce", figure, "--out", os.path.join(root, figure)])
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(run(*sys.argv[1:2]))
