#!/usr/bin/env python3
"""Run every built-in demo pipeline and fail loudly if any check fails."""
import sys

from mph.cli import main

EXAMPLES = ("cube_sphere", "ellipse", "torus")

exit_code = 0
for example in EXAMPLES:
    print(f"=== demo {example} ===")
    exit_code = max(exit_code, main(["demo", example]))
    print()
sys.exit(exit_code)
