"""Corpus benchmark: full pipeline per image, with a best/worst/average summary."""
from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .container import vacate
from .crypto import encrypt_image
from .embed import embed, extract, recover
from .errors import NotEmbeddable, RDHError
from .metrics import SSIM_WINDOW, psnr, ssim
from .pgm import read_pgm

COLUMNS = [
    "file", "status", "m", "n", "occupied_bits", "payload_bits", "net_er",
    "overflow_count", "block_side", "l_fix", "plane_flags", "roundtrip_ok",
    "psnr", "ssim", "seconds",
]

OK = "ok"
NOT_EMBEDDABLE = "not_embeddable"


@dataclass
class BenchRow:
    file: str
    status: str
    m: int | None = None
    n: int | None = None
    occupied_bits: int | None = None
    payload_bits: int | None = None
    net_er: float | None = None
    overflow_count: int | None = None
    block_side: int | None = None
    l_fix: int | None = None
    plane_flags: str = ""
    roundtrip_ok: bool | None = None
    psnr: float | None = None
    ssim: float | None = None
    seconds: float | None = None


def bench_image(path, key_image: int, key_data: int) -> BenchRow:
    """Run vacate, encrypt, embed a capacity-filling payload, recover and extract."""
    name = Path(path).name
    t0 = time.perf_counter()
    try:
        img = read_pgm(path)
    except (OSError, RDHError) as exc:
        return BenchRow(name, f"error: {exc}")
    m, n = img.shape
    row = BenchRow(name, OK, m, n)
    try:
        container = vacate(img)
    except NotEmbeddable as exc:
        row.status = NOT_EMBEDDABLE
        row.occupied_bits = exc.occupied
        row.payload_bits = 0
        row.net_er = 0.0
        row.seconds = time.perf_counter() - t0
        return row
    except (ValueError, RDHError) as exc:
        row.status = f"error: {exc}"
        return row

    report = container.capacity_report()
    rng = np.random.default_rng(key_data)
    payload = rng.integers(0, 256, report.capacity_bits // 8, dtype=np.uint8).tobytes()
    marked = embed(encrypt_image(container.serialize(), key_image), payload, key_data)
    restored = recover(marked, key_image)
    recovered_payload = extract(marked, key_data)

    row.occupied_bits = report.occupied_bits
    row.payload_bits = report.capacity_bits
    row.net_er = report.net_er
    row.overflow_count = container.overflow_count
    row.block_side = container.block_side
    row.l_fix = container.l_fix
    row.plane_flags = "".join(str(f) for f in container.flags)
    row.roundtrip_ok = bool(np.array_equal(restored, img) and recovered_payload == payload)
    row.psnr = psnr(img, restored)
    row.ssim = ssim(img, restored) if min(m, n) >= SSIM_WINDOW else None
    row.seconds = time.perf_counter() - t0
    if not row.roundtrip_ok:
        row.status = "error: round trip mismatch"
    return row


def corpus_files(corpus_dir) -> list[Path]:
    return sorted(p for p in Path(corpus_dir).iterdir() if p.is_file() and p.suffix.lower() == ".pgm")


def run_bench(corpus_dir, key_image: int, key_data: int, jobs: int = 1) -> list[BenchRow]:
    files = corpus_files(corpus_dir)
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(bench_image, files, [key_image] * len(files), [key_data] * len(files)))
    return [bench_image(f, key_image, key_data) for f in files]


def summarize(rows: list[BenchRow]) -> dict:
    """Best, worst and average net ER over embeddable images, plus failure counts."""
    ok = [r for r in rows if r.status == OK]
    ers = [r.net_er for r in ok]
    return {
        "best": max(ers) if ers else None,
        "worst": min(ers) if ers else None,
        "average": sum(ers) / len(ers) if ers else None,
        "not_embeddable": sum(r.status == NOT_EMBEDDABLE for r in rows),
        "errors": sum(r.status.startswith("error") for r in rows),
        "images": len(rows),
    }


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return "inf" if value == float("inf") else f"{value:.6f}"
    return value


def write_csv(rows: list[BenchRow], fh) -> None:
    writer = csv.DictWriter(fh, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _cell(v) for k, v in asdict(row).items()})
    if not rows:
        return
    summary = summarize(rows)
    for label in ("best", "worst", "average"):
        writer.writerow({"file": f"#{label}", "status": "summary", "net_er": _cell(summary[label])})
    writer.writerow({"file": "#not_embeddable", "status": "summary",
                     "net_er": summary["not_embeddable"]})

