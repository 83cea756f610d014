"""Regenerate the full CSV benchmark into ./bench_out and print the summary tables.

Same as: fibsteg bench --covers <dir> --out bench_out --seed 7
"""
import sys
import tempfile
from pathlib import Path

from fibsteg.bench import BenchConfig, run_bench
from fibsteg.datasets import write_covers

out = Path(sys.argv[1] if len(sys.argv) > 1 else "bench_out")
cover_dir = Path(tempfile.mkdtemp()) / "covers"
write_covers(cover_dir)

paths = run_bench(BenchConfig(cover_dir, out, seed=7))
for name in ("psnr", "rs"):
    print(f"--- {paths[name]}")
    print(paths[name].read_text())
print(f"POV curves in {out / 'pov'}: {len(list((out / 'pov').glob('*.csv')))} files")
