#!/usr/bin/env python3
"""Regenerate the CSV fixtures under fixtures/.

The Nile series is the standard public record of annual flows at Aswan,
1871-1970 (the same values shipped with mainstream statistics packages).

The two FRED series (OILPRICE: monthly spot price of West Texas
Intermediate crude, USD/bbl; GDPDEF: quarterly GDP deflator, index
2009 = 100) cannot be downloaded from this build environment, so the
files are reconstructions assembled from the documented price history:
posted WTI prices move in steps through 1973, monthly spot averages
afterwards, and the deflator comes from the annual national-accounts
record interpolated geometrically to quarters. See fixtures/README.md
for the authoritative URLs; a real download drops in unchanged.

Run from the repository root:  python3 scripts/rebuild_fixtures.py
"""

from __future__ import annotations

import csv
import datetime as dt
import hashlib
import pathlib

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

NILE_START_YEAR = 1871
NILE = [
    1120, 1160, 963, 1210, 1160, 1160, 813, 1230, 1370, 1140,
    995, 935, 1110, 994, 1020, 960, 1180, 799, 958, 1140,
    1100, 1210, 1150, 1250, 1260, 1220, 1030, 1100, 774, 840,
    874, 694, 940, 833, 701, 916, 692, 1020, 1050, 969,
    831, 726, 456, 824, 702, 1120, 1100, 832, 764, 821,
    768, 845, 864, 862, 698, 845, 744, 796, 1040, 759,
    781, 865, 845, 944, 984, 897, 822, 1010, 771, 676,
    649, 846, 812, 742, 801, 1040, 860, 874, 848, 890,
    744, 749, 838, 1050, 918, 986, 797, 923, 975, 815,
    1020, 906, 901, 1170, 912, 746, 919, 718, 714, 740,
]

# Monthly WTI spot price, USD per barrel, 1947-01 .. 2013-09. The posted
# price through the 1970s moved in occasional steps; ramps and monthly
# averages reconstruct the spot era.
_WTI_STEPS_1947_1975 = [
    # (through_year, through_month, price) applied from the previous entry on
    (1947, 2, 1.62), (1947, 9, 1.87), (1947, 10, 1.93), (1947, 11, 2.22),
    (1948, 5, 2.57), (1949, 5, 2.65), (1953, 5, 2.57), (1956, 12, 2.82),
    (1958, 6, 3.09), (1959, 1, 3.05), (1960, 7, 2.94), (1965, 2, 2.88),
    (1967, 5, 2.92), (1969, 1, 2.98), (1970, 10, 3.09), (1971, 1, 3.18),
    (1972, 12, 3.39), (1973, 5, 3.56), (1973, 7, 3.90), (1973, 12, 4.31),
    (1974, 8, 10.11), (1975, 12, 11.16),
]

_WTI_MONTHLY = {
    1976: [11.16, 12.17, 12.17, 12.17, 12.17, 12.17, 13.10, 13.10, 13.10, 13.10, 13.10, 13.10],
    1977: [14.10, 14.10, 14.10, 14.10, 14.10, 14.40, 14.40, 14.40, 14.40, 14.40, 14.40, 14.40],
    1978: [14.85] * 12,
    1979: [14.85, 14.85, 14.85, 15.85, 17.00, 18.00, 18.50, 20.00, 21.50, 26.00, 28.50, 32.50],
    1980: [32.50, 36.00, 38.00, 39.50, 39.50, 39.50, 39.50, 38.00, 36.00, 36.00, 36.83, 37.00],
    1981: [38.00, 38.00, 38.00, 38.00, 38.00, 36.00, 36.00, 36.00, 35.00, 35.00, 36.00, 35.00],
    1982: [34.00, 32.00, 29.50, 32.50, 34.00, 34.50, 33.50, 33.00, 34.50, 34.50, 33.50, 32.00],
    1983: [31.00, 29.00, 28.50, 29.50, 29.50, 30.50, 31.00, 31.50, 31.00, 30.50, 29.50, 29.00],
    1984: [29.50, 30.00, 30.50, 30.50, 30.50, 30.00, 29.00, 29.00, 29.00, 28.50, 28.00, 27.00],
    1985: [25.50, 27.00, 28.00, 28.50, 27.50, 27.00, 27.00, 27.50, 28.00, 29.50, 30.50, 26.50],
    1986: [22.90, 15.40, 12.60, 12.80, 15.40, 13.40, 11.60, 15.10, 14.90, 14.90, 15.20, 16.10],
    1987: [18.70, 17.70, 18.30, 18.70, 19.40, 20.00, 21.30, 20.30, 19.50, 19.90, 18.90, 17.20],
    1988: [17.20, 16.80, 16.20, 17.90, 17.40, 16.50, 15.50, 15.50, 14.50, 13.80, 14.00, 16.40],
    1989: [18.00, 17.90, 19.50, 21.10, 20.00, 20.00, 19.60, 18.50, 19.60, 20.10, 19.90, 21.10],
    1990: [22.90, 22.10, 20.40, 18.40, 18.20, 16.90, 18.40, 27.30, 33.50, 36.00, 32.30, 27.30],
    1991: [25.20, 20.50, 19.90, 20.80, 21.20, 20.20, 21.40, 21.70, 21.90, 23.20, 22.50, 19.50],
    1992: [18.80, 19.00, 18.90, 20.20, 20.90, 22.40, 21.80, 21.30, 21.90, 21.70, 20.30, 19.40],
    1993: [19.10, 20.10, 20.30, 20.30, 19.90, 19.10, 17.90, 18.00, 17.50, 18.10, 16.70, 14.50],
    1994: [15.00, 14.80, 14.70, 16.40, 17.90, 19.10, 19.70, 18.40, 17.50, 17.70, 18.10, 17.20],
    1995: [18.00, 18.50, 18.50, 19.90, 19.70, 18.40, 17.30, 18.00, 18.20, 17.40, 18.00, 19.00],
    1996: [18.90, 19.10, 21.40, 23.50, 21.30, 20.50, 21.30, 22.00, 24.00, 24.90, 23.70, 25.40],
    1997: [25.20, 22.20, 21.00, 19.70, 20.80, 19.30, 19.70, 19.90, 19.80, 21.30, 20.20, 18.30],
    1998: [16.70, 16.10, 15.00, 15.40, 14.90, 13.70, 14.10, 13.40, 15.00, 14.40, 13.00, 11.30],
    1999: [12.50, 12.00, 14.70, 17.30, 17.70, 17.90, 20.10, 21.30, 23.90, 22.60, 25.00, 26.10],
    2000: [27.20, 29.40, 29.90, 25.70, 28.80, 31.80, 29.70, 31.30, 33.90, 33.10, 34.40, 28.50],
    2001: [29.60, 29.60, 27.20, 27.50, 28.60, 27.60, 26.40, 27.40, 26.20, 22.20, 19.70, 19.30],
    2002: [19.70, 20.70, 24.40, 26.30, 27.00, 25.50, 26.90, 28.40, 29.70, 28.90, 26.30, 29.40],
    2003: [33.00, 35.80, 33.50, 28.20, 28.10, 30.70, 30.80, 31.60, 28.30, 30.30, 31.10, 32.20],
    2004: [34.30, 34.70, 36.80, 36.70, 40.30, 38.00, 40.80, 44.90, 46.00, 53.30, 48.50, 43.30],
    2005: [46.80, 48.00, 54.30, 53.00, 49.80, 56.30, 59.00, 65.00, 65.50, 62.30, 58.30, 59.40],
    2006: [65.50, 61.60, 62.90, 69.70, 70.90, 71.00, 74.40, 73.10, 63.90, 58.90, 59.40, 62.00],
    2007: [54.50, 59.30, 60.60, 64.00, 63.50, 67.50, 74.10, 72.40, 79.90, 85.80, 94.80, 91.70],
    2008: [93.00, 95.40, 105.50, 112.60, 125.40, 133.90, 133.40, 116.70, 104.10, 76.60, 57.30, 41.10],
    2009: [41.70, 39.10, 48.00, 49.80, 59.00, 69.60, 64.10, 71.00, 69.40, 75.70, 78.00, 74.50],
    2010: [78.30, 76.40, 81.20, 84.30, 73.70, 75.30, 76.30, 76.60, 75.20, 81.90, 84.30, 89.20],
    2011: [89.20, 88.60, 103.00, 110.00, 101.30, 96.30, 97.30, 86.30, 85.50, 86.40, 97.20, 98.60],
    2012: [100.30, 102.20, 106.20, 103.30, 94.70, 82.30, 87.90, 94.10, 94.50, 89.50, 86.50, 87.90],
    2013: [94.80, 95.30, 92.90, 92.00, 94.50, 95.80, 104.70, 106.60, 106.30],
}

# Annual GDP deflator, index 2009 = 100; 2014 is held only so the
# quarterly interpolation has a right endpoint.
GDPDEF_ANNUAL = {
    1947: 12.57, 1948: 13.29, 1949: 13.27, 1950: 13.42, 1951: 14.39,
    1952: 14.66, 1953: 14.83, 1954: 14.97, 1955: 15.23, 1956: 15.76,
    1957: 16.28, 1958: 16.66, 1959: 16.88, 1960: 17.11, 1961: 17.30,
    1962: 17.54, 1963: 17.73, 1964: 18.00, 1965: 18.33, 1966: 18.86,
    1967: 19.41, 1968: 20.25, 1969: 21.25, 1970: 22.38, 1971: 23.50,
    1972: 24.52, 1973: 25.86, 1974: 28.21, 1975: 30.85, 1976: 32.62,
    1977: 34.67, 1978: 37.14, 1979: 40.22, 1980: 43.88, 1981: 48.01,
    1982: 51.02, 1983: 53.00, 1984: 54.92, 1985: 56.67, 1986: 57.89,
    1987: 59.32, 1988: 61.38, 1989: 63.75, 1990: 66.10, 1991: 68.32,
    1992: 69.87, 1993: 71.49, 1994: 73.01, 1995: 74.55, 1996: 75.93,
    1997: 77.23, 1998: 78.09, 1999: 79.22, 2000: 80.95, 2001: 82.79,
    2002: 84.08, 2003: 85.75, 2004: 88.05, 2005: 90.88, 2006: 93.72,
    2007: 96.23, 2008: 98.11, 2009: 100.00, 2010: 101.22, 2011: 103.31,
    2012: 105.17, 2013: 106.73, 2014: 108.30,
}


def wti_monthly() -> list[tuple[dt.date, float]]:
    rows: list[tuple[dt.date, float]] = []
    year, month = 1947, 1
    for through_year, through_month, price in _WTI_STEPS_1947_1975:
        while (year, month) <= (through_year, through_month):
            rows.append((dt.date(year, month, 1), price))
            month += 1
            if month == 13:
                year, month = year + 1, 1
    for y in sorted(_WTI_MONTHLY):
        for m, price in enumerate(_WTI_MONTHLY[y], start=1):
            rows.append((dt.date(y, m, 1), price))
    return rows


def gdpdef_quarterly() -> list[tuple[dt.date, float]]:
    rows = []
    for year in range(1947, 2014):
        level = GDPDEF_ANNUAL[year]
        ratio = GDPDEF_ANNUAL[year + 1] / level
        last_q = 3 if year == 2013 else 4
        for q in range(1, last_q + 1):
            value = level * ratio ** ((2 * q - 5) / 8.0)
            rows.append((dt.date(year, 3 * (q - 1) + 1, 1), round(value, 3)))
    return rows


def write(path: pathlib.Path, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    digest = hashlib.sha256(path.read_bytes()).hexdigest()
    print(f"{path.name}: {sum(1 for _ in open(path)) - 1} rows, sha256 {digest}")


def main() -> None:
    FIXTURES.mkdir(exist_ok=True)
    write(FIXTURES / "nile.csv", ["DATE", "flow"],
          [(dt.date(NILE_START_YEAR + i, 1, 1).isoformat(), v) for i, v in enumerate(NILE)])
    write(FIXTURES / "oilprice_raw.csv", ["DATE", "OILPRICE"],
          [(d.isoformat(), f"{v:.2f}") for d, v in wti_monthly()])
    write(FIXTURES / "gdpdef.csv", ["DATE", "GDPDEF"],
          [(d.isoformat(), f"{v:.3f}") for d, v in gdpdef_quarterly()])


if __name__ == "__main__":
    main()
