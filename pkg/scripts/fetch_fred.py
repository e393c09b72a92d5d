#!/usr/bin/env python3
"""Replace the reconstructed oil-price fixtures with a real FRED download.

Not part of the library or the test path (the suite runs offline
against the vendored files); run this once from a machine with network
access, then commit the refreshed CSVs and update the checksums in
fixtures/README.md.

Usage: python3 scripts/fetch_fred.py
"""

from __future__ import annotations

import csv
import io
import pathlib
import urllib.request

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
FRED = "https://fred.stlouisfed.org/graph/fredgraph.csv?id={sid}"

SERIES = {
    # series id -> (output file, first date to keep, last date to keep)
    "OILPRICE": ("oilprice_raw.csv", "1947-01-01", "2013-09-01"),
    "GDPDEF": ("gdpdef.csv", "1947-01-01", "2013-07-01"),
}


def fetch(sid: str) -> list[tuple[str, str]]:
    with urllib.request.urlopen(FRED.format(sid=sid), timeout=60) as resp:
        text = resp.read().decode("utf-8")
    rows = list(csv.reader(io.StringIO(text)))
    return [(r[0], r[1]) for r in rows[1:] if len(r) >= 2]


def main() -> None:
    for sid, (name, first, last) in SERIES.items():
        rows = [(d, v) for d, v in fetch(sid) if first <= d <= last and v not in (".", "")]
        out = FIXTURES / name
        with open(out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["DATE", sid])
            writer.writerows(rows)
        print(f"{out}: {len(rows)} rows from FRED {sid}")


if __name__ == "__main__":
    main()
