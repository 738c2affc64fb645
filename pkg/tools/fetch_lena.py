"""Rebuild tests/data/lena.pgm from the scipy 0.16.1 source archive on PyPI.

Modern scipy and scikit-image no longer ship the 512x512 grayscale Lena; the
old ``scipy/misc/lena.dat`` pickle is the classic copy.
"""
import io
import pickle
import re
import sys
import tarfile
import urllib.request
from pathlib import Path

import numpy as np

INDEX = "https://pypi.org/simple/scipy/"
MEMBER = "scipy-0.16.1/scipy/misc/lena.dat"


def main(out="tests/data/lena.pgm"):
    page = urllib.request.urlopen(INDEX).read().decode()
    href = re.search(r'href="([^"]*scipy-0\.16\.1\.tar\.gz)[^"]*"', page).group(1)
    url = urllib.request.urljoin(INDEX, href)
    archive = tarfile.open(fileobj=io.BytesIO(urllib.request.urlopen(url).read()))
    raw = archive.extractfile(MEMBER).read()
    img = np.asarray(pickle.loads(raw, encoding="latin1")).astype(np.uint8)
    m, n = img.shape
    Path(out).write_bytes(b"P5\n%d %d\n255\n" % (n, m) + img.tobytes())
    print(f"wrote {out} ({m}x{n})")


if __name__ == "__main__":
    main(*sys.argv[1:])
