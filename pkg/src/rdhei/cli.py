"""Command-line interface.

Each party's step is its own subcommand and they compose through P5 files::

    rdhei vacate   --in img.pgm --out container.pgm [--report report.json]
    rdhei encrypt  --in container.pgm --key-image HEX16 --out enc.pgm
    rdhei embed    --in enc.pgm --key-data HEX16 --payload file --out marked.pgm
    rdhei extract  --in marked.pgm --key-data HEX16 --out payload.bin
    rdhei recover  --in marked.pgm --key-image HEX16 --out restored.pgm
    rdhei capacity --in enc.pgm
    rdhei bench    CORPUS_DIR --key-image HEX16 --key-data HEX16 --out bench.csv

Exit codes: 0 success, 2 usage, 3 not embeddable, 4 capacity exceeded,
5 corrupt or malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bench
from .bitplane import decompose, recompose
from .container import capacity, vacate
from .crypto import encrypt_image, parse_key
from .embed import embed, extract, recover
from .errors import CapacityExceeded, CorruptionError, FormatError, NotEmbeddable
from .pgm import read_pgm, write_pgm

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_EMBEDDABLE = 3
EXIT_CAPACITY = 4
EXIT_CORRUPT = 5


def _key(text: str) -> int:
    try:
        return parse_key(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _read_stack(path):
    return decompose(read_pgm(path))


def _write_stack(path, ps) -> None:
    write_pgm(path, recompose(ps))


def cmd_vacate(args) -> int:
    container = vacate(read_pgm(args.input))
    _write_stack(args.output, container.serialize())
    if args.report:
        rep = container.capacity_report()
        report = {
            "m": container.m,
            "n": container.n,
            "block_side": container.block_side,
            "l_fix": container.l_fix,
            "overflow_count": container.overflow_count,
            "aux_bits": container.aux_length,
            "occupied_bits": rep.occupied_bits,
            "capacity_bits": rep.capacity_bits,
            "net_er": rep.net_er,
            "planes": [
                {"plane": 8 - idx, "flag": p.flag, "scan_type": int(p.scan_type), "bits": int(p.body.size)}
                for idx, p in enumerate(container.planes)
            ],
        }
        text = json.dumps(report, indent=2)
        if args.report == "-":
            print(text)
        else:
            with open(args.report, "w") as f:
                f.write(text + "\n")
    return EXIT_OK


def cmd_encrypt(args) -> int:
    _write_stack(args.output, encrypt_image(_read_stack(args.input), args.key_image))
    return EXIT_OK


def cmd_embed(args) -> int:
    with open(args.payload, "rb") as f:
        payload = f.read()
    _write_stack(args.output, embed(_read_stack(args.input), payload, args.key_data))
    return EXIT_OK


def cmd_extract(args) -> int:
    data = extract(_read_stack(args.input), args.key_data)
    with open(args.output, "wb") as f:
        f.write(data)
    return EXIT_OK


def cmd_recover(args) -> int:
    write_pgm(args.output, recover(_read_stack(args.input), args.key_image))
    return EXIT_OK


def cmd_capacity(args) -> int:
    rep = capacity(_read_stack(args.input))
    print(f"occupied_bits {rep.occupied_bits}")
    print(f"capacity_bits {rep.capacity_bits}")
    print(f"net_er {rep.net_er:.4f}")
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = bench.run_bench(args.corpus, args.key_image, args.key_data, jobs=args.jobs)
    if args.output == "-":
        bench.write_csv(rows, sys.stdout)
    else:
        with open(args.output, "w", newline="") as f:
            bench.write_csv(rows, f)
    if rows:
        s = bench.summarize(rows)
        fmt = lambda v: "n/a" if v is None else f"{v:.4f}"  # noqa: E731
        print(
            f"images {s['images']}  best {fmt(s['best'])}  worst {fmt(s['worst'])}  "
            f"average {fmt(s['average'])}  not_embeddable {s['not_embeddable']}  errors {s['errors']}",
            file=sys.stderr,
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdhei", description="Reversible data hiding in encrypted grayscale images."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("vacate", cmd_vacate, "compress prediction-error planes to vacate room")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--report", help="write a JSON report to this path ('-' for stdout)")

    p = add("encrypt", cmd_encrypt, "encrypt a container with the image key (self-inverse)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--key-image", type=_key, required=True)
    p.add_argument("--out", dest="output", required=True)

    p = add("embed", cmd_embed, "embed a payload into an encrypted container")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--key-data", type=_key, required=True)
    p.add_argument("--payload", required=True)
    p.add_argument("--out", dest="output", required=True)

    p = add("extract", cmd_extract, "extract the payload with the data key")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--key-data", type=_key, required=True)
    p.add_argument("--out", dest="output", required=True)

    p = add("recover", cmd_recover, "recover the original image with the image key")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--key-image", type=_key, required=True)
    p.add_argument("--out", dest="output", required=True)

    p = add("capacity", cmd_capacity, "print occupied bits, capacity and net ER")
    p.add_argument("--in", dest="input", required=True)

    p = add("bench", cmd_bench, "run the full pipeline over a directory of PGM images")
    p.add_argument("corpus")
    p.add_argument("--key-image", type=_key, default=_key("0123456789abcdef"))
    p.add_argument("--key-data", type=_key, default=_key("fedcba9876543210"))
    p.add_argument("--out", dest="output", default="-")
    p.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotEmbeddable as exc:
        print(f"rdhei: {exc}", file=sys.stderr)
        return EXIT_NOT_EMBEDDABLE
    except CapacityExceeded as exc:
        print(f"rdhei: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (CorruptionError, FormatError) as exc:
        print(f"rdhei: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except (FileNotFoundError, IsADirectoryError, NotADirectoryError, ValueError) as exc:
        print(f"rdhei: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
