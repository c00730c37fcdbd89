"""The CLI surface: problem files, trace formats, exit codes.

Equivalent shell usage:
  epscut solve    --problem ball.json --x0 2,0 --record-dist --trace-csv t.csv
  epscut compare  --problem ball.json --x0 2,0 --report-json cmp.json
  epscut diagnose --problem ball.json --x0 2,0 --report-json diag.json

Run:  python demos/05_cli_files.py
"""

import json
import pathlib
import tempfile

from epscut import BallProblem, problem_to_dict
from epscut.cli import main

workdir = pathlib.Path(tempfile.mkdtemp(prefix="epscut-demo-"))
ball = workdir / "ball.json"
ball.write_text(json.dumps(problem_to_dict(BallProblem([0.0, 0.0], 1.0)), indent=2))
print("problem file:", ball)
print(ball.read_text())

trace_csv = workdir / "trace.csv"
report = workdir / "compare.json"

print("--- solve ---")
code = main(["solve", "--problem", str(ball), "--x0", "2,0",
             "--record-dist", "--trace-csv", str(trace_csv)])
print("exit code:", code)
print(trace_csv.read_text())

print("--- compare (shifted vs zero-shift vs single-cut) ---")
code = main(["compare", "--problem", str(ball), "--x0", "2,0",
             "--report-json", str(report)])
print("exit code:", code)
print(report.read_text())
