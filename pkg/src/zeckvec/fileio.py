"""Atomic file output: write to a sibling temp file, then rename into place."""

import os


def atomic_write_text(path: str, text: str):
    tmp = "%s.tmp.%d" % (path, os.getpid())
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)
