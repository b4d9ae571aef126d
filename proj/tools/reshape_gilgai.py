#!/usr/bin/env python3
"""Reshape the wide gilgai soil survey table into long (ph, depth) rows.

The wide table has one row per sampling site and one pH column per depth.
The default column names follow the common R distribution of the data set
(ph00, ph30, ph80 for the 0-10, 30-40 and 80-90 cm layers). Rows with a
missing pH value at a depth are dropped for that depth only and reported.

    python3 tools/reshape_gilgai.py gilgai.csv data/gilgai_long.csv
    ginijel test --input data/gilgai_long.csv --x-col ph --y-col depth
"""

import argparse
import csv
import sys

DEFAULT_COLUMNS = {"ph00": "0-10", "ph30": "30-40", "ph80": "80-90"}


def parse_mapping(specs):
    mapping = {}
    for spec in specs:
        col, sep, label = spec.partition("=")
        if not sep or not col or not label:
            raise SystemExit(f"bad --column '{spec}', expected NAME=LABEL")
        mapping[col] = label
    return mapping


def reshape(reader, mapping):
    header = reader.fieldnames or []
    missing = [c for c in mapping if c not in header]
    if missing:
        raise SystemExit(f"input lacks column(s): {', '.join(missing)}; have {', '.join(header)}")
    rows, dropped = [], 0
    for site in reader:
        for col, label in mapping.items():
            raw = (site.get(col) or "").strip()
            if raw in ("", "NA", "NaN"):
                dropped += 1
                continue
            rows.append((float(raw), label))
    return rows, dropped


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("wide", help="wide CSV, one row per site")
    ap.add_argument("long", help="output CSV with columns ph,depth")
    ap.add_argument("--column", action="append", default=[], metavar="NAME=LABEL",
                    help="pH column and its depth label (repeatable; replaces the defaults)")
    ap.add_argument("--expect-sites", type=int, default=365,
                    help="warn when the site count differs (0 disables)")
    args = ap.parse_args(argv)

    mapping = parse_mapping(args.column) if args.column else DEFAULT_COLUMNS
    with open(args.wide, newline="", encoding="utf-8-sig") as f:
        sample = f.read(4096)
        f.seek(0)
        dialect = csv.Sniffer().sniff(sample, delimiters=",;\t")
        reader = csv.DictReader(f, dialect=dialect)
        rows, dropped = reshape(reader, mapping)
        sites = reader.line_num - 1

    if args.expect_sites and sites != args.expect_sites:
        print(f"warning: {sites} sites, expected {args.expect_sites}", file=sys.stderr)
    with open(args.long, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["ph", "depth"])
        for ph, depth in rows:
            w.writerow([repr(ph), depth])
    print(f"{sites} sites -> {len(rows)} rows ({dropped} missing values dropped)", file=sys.stderr)


if __name__ == "__main__":
    main()
