"""Command-line entry point: ``fibsteg <subcommand> ...``."""
from __future__ import annotations

import argparse
import csv
import io
import logging
import sys

from . import bench, embedders, metrics, pgm, steganalysis
from .embedders import Method


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed {text} is not an unsigned 64-bit integer")
    return value


def _method(text: str) -> Method:
    try:
        return Method.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fibsteg", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    methods = ", ".join(m.value for m in Method)

    e = sub.add_parser("embed", help="hide a message or a synthetic payload in a PGM cover")
    e.add_argument("--method", type=_method, required=True, help=methods)
    e.add_argument("--cover", required=True)
    e.add_argument("--out", required=True)
    e.add_argument("--seed", type=_seed, default=0)
    src = e.add_mutually_exclusive_group(required=True)
    src.add_argument("--rate", type=float, help="synthetic payload of ceil(rate*N) bits")
    src.add_argument("--message", help="file whose bytes are embedded MSB-first")
    e.add_argument("--no-header", action="store_true", help="omit the 32-bit length prefix")
    e.add_argument("--random-order", action="store_true", help="keyed pixel order (mapped)")
    e.add_argument("--plane", type=int, default=1, help="Fibonacci plane (fib-random)")

    x = sub.add_parser("extract", help="recover a message from a stego PGM")
    x.add_argument("--method", type=_method, required=True, help=methods)
    x.add_argument("--stego", required=True)
    x.add_argument("--seed", type=_seed, default=0)
    x.add_argument("--out", required=True)
    x.add_argument("--length", type=int, help="payload bits to read; omit to use the header")
    x.add_argument("--random-order", action="store_true")
    x.add_argument("--plane", type=int, default=1)

    a = sub.add_parser("analyze", help="run a steganalysis detector")
    a.add_argument("--tool", choices=("rs", "pov", "dih"), required=True)
    a.add_argument("--image", required=True)
    a.add_argument("--csv", help="write the report here instead of stdout")
    a.add_argument("--step", type=float, default=0.01, help="POV scan step")

    c = sub.add_parser("capacity", help="payload bits a cover can carry")
    c.add_argument("--method", type=_method, required=True, help=methods)
    c.add_argument("--image", required=True)
    c.add_argument("--plane", type=int, default=1)

    q = sub.add_parser("psnr", help="MSE and PSNR between two images")
    q.add_argument("--cover", required=True)
    q.add_argument("--stego", required=True)

    b = sub.add_parser("bench", help="regenerate the capacity/quality/detector tables")
    b.add_argument("--covers", required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--seed", type=_seed, default=0)
    b.add_argument("--pov-step", type=float, default=0.01)
    b.add_argument("--save-stegos", action="store_true")
    return p


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _analyze(args) -> str:
    img = pgm.load_pgm(args.image)
    f = metrics.format_float
    if args.tool == "rs":
        r = steganalysis.rs_analyze(img)
        return _csv_text(["rm", "sm", "rm_neg", "sm_neg"], [[f(v) for v in r.as_row()]])
    if args.tool == "pov":
        curve = steganalysis.pov_analyze(img, args.step)
        return _csv_text(["t", "p_value"], [[f(t), f(p)] for t, p in curve.points])
    return _csv_text(["estimate"], [[f(steganalysis.dih_estimate(img).ratio)]])


def _run(args) -> None:
    if args.command == "embed":
        cover = pgm.load_pgm(args.cover)
        message = None
        if args.message is not None:
            with open(args.message, "rb") as fh:
                message = embedders.bytes_to_bits(fh.read())
        job = embedders.EmbedJob(args.method, seed=args.seed, rate=args.rate, message=message,
                                 header=not args.no_header, random_order=args.random_order,
                                 plane=args.plane)
        res = embedders.embed(cover, job)
        pgm.save_pgm(args.out, res.stego)
        print(f"bits_embedded={res.bits_embedded} pixels_visited={res.pixels_visited} "
              f"pixels_skipped={res.pixels_skipped} pixels_fallback={res.pixels_fallback} "
              f"max_abs_delta={res.max_abs_delta}")
    elif args.command == "extract":
        stego = pgm.load_pgm(args.stego)
        bits = embedders.extract(stego, args.method, args.seed, args.length,
                                 random_order=args.random_order, plane=args.plane)
        with open(args.out, "wb") as fh:
            fh.write(embedders.bits_to_bytes(bits))
        print(f"bits_extracted={len(bits)}")
    elif args.command == "analyze":
        text = _analyze(args)
        if args.csv:
            with open(args.csv, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    elif args.command == "capacity":
        print(embedders.capacity(args.method, pgm.load_pgm(args.image), args.plane))
    elif args.command == "psnr":
        q = metrics.psnr(pgm.load_pgm(args.cover), pgm.load_pgm(args.stego))
        sys.stdout.write(_csv_text(["mse", "psnr_db"], [q.as_row()]))
    elif args.command == "bench":
        cfg = bench.BenchConfig(args.covers, args.out, seed=args.seed, pov_step=args.pov_step,
                                save_stegos=args.save_stegos)
        for name, path in bench.run_bench(cfg).items():
            print(f"{name}: {path}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        _run(args)
    except (OSError, ValueError) as exc:
        print(f"fibsteg: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
