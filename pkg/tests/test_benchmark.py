import subprocess
import sys
from pathlib import Path

import pytest

from stftinv import _backend

SCRIPT = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"


@pytest.mark.skipif("cython" not in _backend.available(), reason="compiled kernels not built")
def test_benchmark_runs_and_reports_every_kernel():
    proc = subprocess.run([sys.executable, str(SCRIPT), "--sizes", "65", "--repeats", "1"],
                          capture_output=True, text=True, check=True)
    rows = proc.stdout.splitlines()[1:]
    assert [r.split()[0] for r in rows] == ["dft", "dirichlet", "kernel_trapezoid", "kernel_panels"]
