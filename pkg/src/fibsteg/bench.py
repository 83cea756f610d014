"""Benchmark harness: capacity, quality and detectability tables as CSV.

For every cover in ``cover_dir`` (``*.pgm``, sorted by name), every method and
every rate, a rate-mode stego is produced (synthetic message, no header) and
measured. Outputs in ``out_dir``:

    psnr.csv       method, rate -> mean MSE / mean PSNR over covers
    capacity.csv   method, rate, cover -> requested vs embedded bits, plus mean rows
    rs.csv         method, rate -> mean RM, SM, RM-, SM-
    dih.csv        method, rate, cover -> DIH ratio estimate
    pov/pov_<method>_<rate>_<cover>.csv   (t, p_value) curves
    errors.csv     covers that could not be read

Rate 0 is the unmodified cover; it anchors each method's clean row.
"""
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .embedders import EmbedJob, Method, embed, rate_message_length
from .metrics import format_float, psnr
from .pgm import PgmError, load_pgm, save_pgm
from .steganalysis import EstimateUndefinedError, dih_estimate, pov_analyze, rs_analyze

log = logging.getLogger(__name__)

BASELINE_RATES = (0.0, 0.25, 0.5, 0.75, 1.0)
MAPPED_RATES = BASELINE_RATES + (1.5, 2.0)


class BenchConfigError(ValueError):
    pass


def default_rates(method: Method) -> tuple[float, ...]:
    return MAPPED_RATES if method is Method.PROPOSED_MAPPED else BASELINE_RATES


@dataclass
class BenchConfig:
    cover_dir: Path
    out_dir: Path
    seed: int = 0
    methods: tuple[Method, ...] = tuple(Method)
    # per-method override; methods not listed use default_rates()
    rates: dict[Method, tuple[float, ...]] = field(default_factory=dict)
    pov_step: float = 0.01
    save_stegos: bool = False

    def __post_init__(self):
        self.cover_dir = Path(self.cover_dir)
        self.out_dir = Path(self.out_dir)
        self.methods = tuple(Method.parse(m) for m in self.methods)
        self.rates = {Method.parse(m): tuple(r) for m, r in self.rates.items()}
        for m in self.methods:
            for r in self.rates_for(m):
                if not 0 <= r <= m.max_rate:
                    raise BenchConfigError(f"rate {r} outside 0..{m.max_rate} for {m.value}")

    def rates_for(self, method: Method) -> tuple[float, ...]:
        return self.rates.get(method, default_rates(method))


def rate_label(rate: float) -> str:
    return f"{rate:g}"


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _load_covers(cover_dir: Path):
    if not cover_dir.is_dir():
        raise BenchConfigError(f"cover directory {cover_dir} does not exist")
    covers, errors = {}, []
    for path in sorted(cover_dir.glob("*.pgm")):
        try:
            covers[path.stem] = load_pgm(path)
        except (OSError, PgmError) as exc:
            # strerror keeps absolute paths out of the report
            reason = exc.strerror if isinstance(exc, OSError) and exc.strerror else str(exc)
            log.warning("skipping %s: %s", path.name, reason)
            errors.append((path.name, reason))
    if not covers:
        raise BenchConfigError(f"no readable PGM covers in {cover_dir}")
    return covers, errors


def run_bench(cfg: BenchConfig) -> dict[str, Path]:
    """Run the full grid and write the CSV reports; returns report name -> path."""
    covers, errors = _load_covers(cfg.cover_dir)
    out = cfg.out_dir
    (out / "pov").mkdir(parents=True, exist_ok=True)
    if cfg.save_stegos:
        (out / "stego").mkdir(exist_ok=True)

    psnr_rows, cap_rows, rs_rows, dih_rows = [], [], [], []
    for method in sorted(cfg.methods, key=lambda m: m.value):
        for rate in sorted(cfg.rates_for(method)):
            label = rate_label(rate)
            mses, psnrs, rs_acc, requested, embedded = [], [], [], [], []
            for name, cover in covers.items():
                log.info("%s rate %s on %s", method.value, label, name)
                res = embed(cover, EmbedJob(method, seed=cfg.seed, rate=rate))
                stego = res.stego
                if cfg.save_stegos:
                    save_pgm(out / "stego" / f"{method.value}_{label}_{name}.pgm", stego)

                q = psnr(cover, stego)
                mses.append(q.mse)
                psnrs.append(q.psnr_db)
                requested.append(rate_message_length(rate, cover.size))
                embedded.append(res.bits_embedded)
                cap_rows.append([method.value, label, name, requested[-1], embedded[-1]])
                rs_acc.append(rs_analyze(stego).as_row())
                try:
                    est = dih_estimate(stego).ratio
                except EstimateUndefinedError:
                    est = math.nan
                dih_rows.append([method.value, label, name, format_float(est)])

                curve = pov_analyze(stego, cfg.pov_step)
                _write_csv(out / "pov" / f"pov_{method.value}_{label}_{name}.csv", ["t", "p_value"],
                           [[format_float(t), format_float(p)] for t, p in curve.points])

            psnr_rows.append([method.value, label, format_float(float(np.mean(mses))),
                              format_float(float(np.mean(psnrs)))])
            cap_rows.append([method.value, label, "mean", format_float(float(np.mean(requested))),
                             format_float(float(np.mean(embedded)))])
            rs_rows.append([method.value, label]
                           + [format_float(v) for v in np.mean(rs_acc, axis=0)])

    paths = {
        "psnr": out / "psnr.csv",
        "capacity": out / "capacity.csv",
        "rs": out / "rs.csv",
        "dih": out / "dih.csv",
        "errors": out / "errors.csv",
    }
    _write_csv(paths["psnr"], ["method", "rate", "mse", "psnr_db"], psnr_rows)
    _write_csv(paths["capacity"], ["method", "rate", "cover", "requested_bits", "bits_embedded"],
               cap_rows)
    _write_csv(paths["rs"], ["method", "rate", "rm", "sm", "rm_neg", "sm_neg"], rs_rows)
    _write_csv(paths["dih"], ["method", "rate", "cover", "estimate"], dih_rows)
    _write_csv(paths["errors"], ["cover", "error"], errors)
    return paths
