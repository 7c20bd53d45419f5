from __future__ import annotations

import subprocess
import sys

# omega grid shared by the oracle-equivalence and residual batteries
OMEGA_GRID = (-3.0, -2.0, -1.0, -0.5, 0.5, 0.9, 1.5, 2.0, 3.0)


def run_cli(*args: str, check: bool = False) -> subprocess.CompletedProcess:
    """Run the installed CLI in a fresh interpreter, capturing both streams."""
    proc = subprocess.run(
        [sys.executable, "-m", "defectwalk", *args],
        capture_output=True,
        text=True,
        timeout=120,
    )
    if check and proc.returncode != 0:
        raise AssertionError(
            f"cli {' '.join(args)} exited {proc.returncode}\n"
            f"stdout:\n{proc.stdout}\nstderr:\n{proc.stderr}"
        )
    return proc
