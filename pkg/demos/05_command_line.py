"""The same workflow through the command-line front end.

Each call below is equivalent to running ``sierpinski <args>`` in a shell.
Artifacts are written atomically; failures print a JSON error and return a
nonzero code.

Run:  python demos/05_command_line.py [output_dir]
"""

import sys
from pathlib import Path

from sierpinski.cli import main

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

calls = [
    ["witness"],
    ["bound", "--d", "2", "--c", "sqrt3/6"],
    ["stage", "--level", "5", "--out", str(out / "stage5.json")],
    ["certificate", "--x", "xy:0.07,0.04", "--r", "0.2", "--out", str(out / "rescaled.json")],
    ["scan", "--sample-level", "7", "--query-level", "2", "--format", "csv",
     "--out", str(out / "scan.csv")],
    ["render", "stage", "--level", "6", "--out", str(out / "stage6.svg")],
    ["stage", "--level", "30", "--dry-run"],  # rejected: beyond the level cap
]
for argv in calls:
    print("$ sierpinski", " ".join(argv))
    code = main(argv)
    print(f"-> exit {code}\n")
