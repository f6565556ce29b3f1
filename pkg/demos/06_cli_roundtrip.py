"""
Demo 6: command line round trip

This demo shows:
- generating a matrix file with the spreadseq CLI
- verifying it from disk
- how a single corrupted phase is reported
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

from _common import banner, step


def run(*args):
    cmd = [sys.executable, "-m", "spreadseq", *args]
    print("    $ spreadseq " + " ".join(args))
    out = subprocess.run(cmd, capture_output=True, text=True)
    for line in (out.stdout + out.stderr).strip().splitlines():
        print("      " + line)
    print(f"      (exit {out.returncode})")
    return out.returncode


def main():
    banner("Demo 6: CLI round trip")
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "phi.json"

        step(1, "Generate a p=5 family")
        run("generate", "--variant", "thm-lp", "--p", "5", "--m", "3", "--pi", "3,1,2", "--a", "2,2",
            "--d", "0,3,4;1,0,1;2,1,2;3,2,0;4,4,3", "--oversample", "16", "--out", str(path))

        step(2, "Verify the file")
        run("verify", str(path), "--oversample", "16")

        step(3, "Flip one phase digit and verify again")
        doc = json.loads(path.read_text())
        doc["phases"][7][3] = (doc["phases"][7][3] + 1) % 5
        path.write_text(json.dumps(doc))
        run("verify", str(path), "--oversample", "16")

        step(4, "A parameter that breaks a construction condition")
        run("generate", "--variant", "thm-lp", "--p", "5", "--m", "3", "--pi", "3,1,2", "--a", "0,2",
            "--d", "0,3,4;1,0,1;2,1,2;3,2,0;4,4,3", "--out", str(path))


if __name__ == "__main__":
    main()
