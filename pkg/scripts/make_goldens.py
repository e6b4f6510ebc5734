"""Regenerate tests/golden/ from the fixture files by driving the CLI in-process.

Only rerun this after an intended output change, and review the diff.
"""

from __future__ import annotations

import contextlib
import io
from pathlib import Path

from ruledmmp.cli import main

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"


def capture(argv: list[str]) -> str:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    assert code == 0, (argv, code)
    return buf.getvalue()


def main_():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name in "abcd":
        inst = str(ROOT / "fixtures" / f"fix_{name}.json")
        trace = GOLDEN / f"trace_{name}.json"
        (GOLDEN / f"run_{name}.txt").write_text(capture(["run", inst, "--out", str(trace)]))
        (GOLDEN / f"verify_{name}.txt").write_text(capture(["verify", inst]))
        (GOLDEN / f"dot_{name}.dot").write_text(capture(["export-dot", inst]))
        (GOLDEN / f"dot_trace_{name}.dot").write_text(capture(["export-dot", str(trace)]))
        print(f"fix_{name}: ok")


if __name__ == "__main__":
    main_()
