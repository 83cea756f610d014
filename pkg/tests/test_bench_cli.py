import csv
import filecmp
from pathlib import Path

import numpy as np
import pytest

from fibsteg.bench import BenchConfig, BenchConfigError, rate_label, run_bench
from fibsteg.cli import main
from fibsteg.embedders import Method
from fibsteg.pgm import load_pgm, save_pgm


@pytest.fixture(scope="module")
def small_covers(tmp_path_factory, covers):
    d = tmp_path_factory.mktemp("small")
    for name, img in covers.items():
        save_pgm(d / f"{name}.pgm", img[200:264, 200:296])
    return d


def _small_cfg(cover_dir, out, seed=5):
    return BenchConfig(cover_dir, out, seed=seed, pov_step=0.25,
                       rates={m: (0.0, 1.0) for m in Method if m is not Method.PROPOSED_MAPPED}
                       | {Method.PROPOSED_MAPPED: (0.0, 2.0)})


def _tree(root: Path):
    return sorted(p.relative_to(root).as_posix() for p in root.rglob("*") if p.is_file())


def test_bench_is_deterministic(small_covers, tmp_path):
    run_bench(_small_cfg(small_covers, tmp_path / "a"))
    run_bench(_small_cfg(small_covers, tmp_path / "b"))
    files = _tree(tmp_path / "a")
    assert files == _tree(tmp_path / "b")
    assert {"psnr.csv", "capacity.csv", "rs.csv", "dih.csv", "errors.csv"} <= set(files)
    assert len([f for f in files if f.startswith("pov/")]) == 4 * 2 * 3
    _, mismatch, errors = filecmp.cmpfiles(tmp_path / "a", tmp_path / "b", files, shallow=False)
    assert mismatch == [] and errors == []


def test_bench_seed_changes_output(small_covers, tmp_path):
    run_bench(_small_cfg(small_covers, tmp_path / "a", seed=1))
    run_bench(_small_cfg(small_covers, tmp_path / "b", seed=2))
    assert (tmp_path / "a" / "dih.csv").read_bytes() != (tmp_path / "b" / "dih.csv").read_bytes()


def test_bench_tables(small_covers, tmp_path):
    paths = run_bench(_small_cfg(small_covers, tmp_path))
    with open(paths["capacity"]) as fh:
        rows = list(csv.DictReader(fh))
    n = 64 * 96
    full = [r for r in rows if r["method"] == "mapped" and r["rate"] == "2" and r["cover"] != "mean"]
    assert [int(r["bits_embedded"]) for r in full] == [2 * n] * 3
    fib = [r for r in rows if r["method"] == "fib-random" and r["rate"] == "1" and r["cover"] != "mean"]
    assert all(int(r["bits_embedded"]) < n for r in fib)
    with open(paths["psnr"]) as fh:
        psnr_rows = {(r["method"], r["rate"]): r for r in csv.DictReader(fh)}
    assert psnr_rows["lsb-seq", "0"]["psnr_db"] == "inf"
    assert paths["errors"].read_text() == "cover,error\n"


def test_bench_records_unreadable_cover(small_covers, tmp_path):
    d = tmp_path / "covers"
    d.mkdir()
    for p in small_covers.glob("*.pgm"):
        (d / p.name).write_bytes(p.read_bytes())
    (d / "broken.pgm").write_bytes(b"P5\n10 10\n255\nshort")
    paths = run_bench(BenchConfig(d, tmp_path / "out", methods=("lsb-seq",), pov_step=0.5,
                                  rates={"lsb-seq": (1.0,)}))
    with open(paths["errors"]) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["cover", "error"]
    assert [r[0] for r in rows[1:]] == ["broken.pgm"]


def test_bench_config_errors(tmp_path):
    with pytest.raises(BenchConfigError):
        run_bench(BenchConfig(tmp_path, tmp_path / "out"))
    with pytest.raises(BenchConfigError):
        run_bench(BenchConfig(tmp_path / "missing", tmp_path / "out"))
    with pytest.raises(BenchConfigError):
        BenchConfig(tmp_path, tmp_path, rates={"lsb-seq": (1.5,)})


def test_rate_label():
    assert [rate_label(r) for r in (0.0, 0.25, 1.0, 2.0)] == ["0", "0.25", "1", "2"]


# --- CLI -------------------------------------------------------------------

@pytest.fixture
def camera_pgm(tmp_path, camera):
    path = tmp_path / "camera.pgm"
    save_pgm(path, camera)
    return path


def test_cli_capacity(camera_pgm, capsys):
    assert main(["capacity", "--method", "mapped", "--image", str(camera_pgm)]) == 0
    assert capsys.readouterr().out.strip() == "524288"
    assert main(["capacity", "--method", "lsb-seq", "--image", str(camera_pgm)]) == 0
    assert capsys.readouterr().out.strip() == "262144"


@pytest.mark.parametrize("method, extra", [
    ("mapped", []), ("mapped", ["--random-order"]), ("lsb-random", []), ("fib-random", []),
])
def test_cli_embed_extract_roundtrip(camera_pgm, tmp_path, capsys, method, extra):
    msg = tmp_path / "msg.bin"
    msg.write_bytes(b"attack at dawn\x00\xff" * 20)
    stego = tmp_path / "stego.pgm"
    back = tmp_path / "back.bin"
    assert main(["embed", "--method", method, "--cover", str(camera_pgm), "--out", str(stego),
                 "--seed", "0x2a", "--message", str(msg), *extra]) == 0
    assert main(["extract", "--method", method, "--stego", str(stego), "--seed", "42",
                 "--out", str(back), *extra]) == 0
    assert back.read_bytes() == msg.read_bytes()
    capsys.readouterr()
    assert main(["psnr", "--cover", str(camera_pgm), "--stego", str(stego)]) == 0
    header, row = capsys.readouterr().out.splitlines()
    assert header == "mse,psnr_db" and float(row.split(",")[1]) > 40


def test_cli_analyze_constant_image(tmp_path, capsys):
    path = tmp_path / "flat.pgm"
    save_pgm(path, np.full((16, 16), 90, np.uint8))
    assert main(["analyze", "--tool", "rs", "--image", str(path)]) == 0
    assert capsys.readouterr().out == "rm,sm,rm_neg,sm_neg\n100,0,100,0\n"
    out = tmp_path / "pov.csv"
    assert main(["analyze", "--tool", "pov", "--image", str(path), "--step", "0.5", "--csv", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "t,p_value"


def test_cli_rate_embed_writes_pgm(camera_pgm, tmp_path, capsys):
    out = tmp_path / "s.pgm"
    assert main(["embed", "--method", "mapped", "--cover", str(camera_pgm), "--out", str(out),
                 "--rate", "2.0"]) == 0
    assert "bits_embedded=524288" in capsys.readouterr().out
    assert load_pgm(out).shape == (512, 512)


def test_cli_errors(tmp_path, camera_pgm, capsys):
    assert main(["capacity", "--method", "mapped", "--image", str(tmp_path / "nope.pgm")]) == 1
    assert capsys.readouterr().err.startswith("fibsteg: error:")
    flat = tmp_path / "flat.pgm"
    save_pgm(flat, np.full((8, 8), 3, np.uint8))
    assert main(["analyze", "--tool", "dih", "--image", str(flat)]) == 1
    assert main(["embed", "--method", "lsb-seq", "--cover", str(camera_pgm),
                 "--out", str(tmp_path / "x.pgm"), "--rate", "1.5"]) == 1
    with pytest.raises(SystemExit):
        main(["embed", "--method", "bogus", "--cover", "a", "--out", "b", "--rate", "1"])
    with pytest.raises(SystemExit):
        main(["bench", "--covers", ".", "--out", ".", "--seed", "-1"])
