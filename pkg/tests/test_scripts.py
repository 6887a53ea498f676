import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize(
    "name,args,expect",
    [
        ("density_oscillation.py", ["--max-exponent", "4"], "4545"),
        ("defect_vs_n.py", ["--lengths", "1000", "--seeds", "1"], "1000"),
        ("solver_residuals.py", ["--n", "5000"], "statistical defect"),
    ],
)
def test_script_runs(name, args, expect):
    proc = subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert expect in proc.stdout
