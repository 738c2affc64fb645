import csv
import io

import numpy as np

from conftest import smooth_image
from rdhei.bench import COLUMNS, NOT_EMBEDDABLE, OK, run_bench, summarize, write_csv
from rdhei.cli import main
from rdhei.pgm import write_pgm

KI, KD = 0x0123456789ABCDEF, 0x0FEDCBA987654321


def make_corpus(path, smooth=10, noise=True):
    rng = np.random.default_rng(42)
    for i in range(smooth):
        write_pgm(path / f"smooth_{i:02d}.pgm", smooth_image(rng, 48, 64, noise=0.0))
    if noise:
        write_pgm(path / "noise.pgm", rng.integers(0, 256, (48, 64), dtype=np.uint8))


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_smooth_corpus_with_noise(tmp_path):
    make_corpus(tmp_path)
    rows = run_bench(tmp_path, KI, KD)
    assert [r.file for r in rows] == sorted(p.name for p in tmp_path.glob("*.pgm"))
    smooth = [r for r in rows if r.file.startswith("smooth")]
    assert all(r.status == OK and r.roundtrip_ok and r.psnr == float("inf") for r in smooth)
    assert all(abs(r.ssim - 1) < 1e-12 for r in smooth)
    summary = summarize(rows)
    assert summary["average"] > 4
    noise = next(r for r in rows if r.file == "noise.pgm")
    assert noise.status == NOT_EMBEDDABLE or noise.net_er < 0.05
    assert summary["not_embeddable"] == sum(r.status == NOT_EMBEDDABLE for r in rows)


def test_csv_layout_and_determinism(tmp_path):
    make_corpus(tmp_path, smooth=3)
    out = []
    for jobs in (1, 2):
        buf = io.StringIO()
        write_csv(run_bench(tmp_path, KI, KD, jobs=jobs), buf)
        out.append(parse_csv(buf.getvalue()))
    strip = [[{k: v for k, v in row.items() if k != "seconds"} for row in rows] for rows in out]
    assert strip[0] == strip[1]
    rows = out[0]
    assert list(rows[0].keys()) == COLUMNS
    labels = [r["file"] for r in rows[-4:]]
    assert labels == ["#best", "#worst", "#average", "#not_embeddable"]
    assert int(rows[-1]["net_er"]) == sum(r["status"] == NOT_EMBEDDABLE for r in rows[:-4])


def test_empty_directory_header_only(tmp_path):
    out = tmp_path / "bench.csv"
    (tmp_path / "corpus").mkdir()
    assert main(["bench", str(tmp_path / "corpus"), "--out", str(out)]) == 0
    assert out.read_text() == ",".join(COLUMNS) + "\n"


def test_unreadable_file_reported_per_row(tmp_path):
    make_corpus(tmp_path, smooth=1, noise=False)
    (tmp_path / "broken.pgm").write_bytes(b"not a pgm")
    rows = run_bench(tmp_path, KI, KD)
    assert rows[0].file == "broken.pgm" and rows[0].status.startswith("error")
    assert rows[1].status == OK
