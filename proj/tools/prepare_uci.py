#!/usr/bin/env python3
# Copyright 2026 The VAW2 Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Converts raw UCI downloads into the CSVs read by vaw2_bench.

Every output has a header row, comma separators, and the label in the last
column. Inputs are looked up in --raw-dir under their UCI file names:

  airfoil   airfoil_self_noise.dat     5 features, scaled sound pressure
  bias      Bias_correction_ucl.csv    21 features, Next_Tmin
  concrete  Concrete_Data.csv          8 features, compressive strength
            (export of Concrete_Data.xls; the .xls is read directly when
            pandas and xlrd are installed)
  naval     data.txt                   15 features, lever position

Missing inputs are skipped with a warning.
"""

import argparse
import csv
import math
import pathlib
import re
import sys


def write_csv(path, header, rows):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {path}: {len(rows)} rows x {len(header) - 1} features")


def read_whitespace(path):
    rows = []
    with open(path) as f:
        for line in f:
            if line.strip():
                rows.append([float(v) for v in line.split()])
    return rows


def airfoil(raw, out):
    rows = read_whitespace(raw / "airfoil_self_noise.dat")
    header = ["frequency", "angle", "chord", "velocity", "thickness", "sound_pressure"]
    write_csv(out / "airfoil.csv", header, rows)


def concrete(raw, out):
    csv_path = raw / "Concrete_Data.csv"
    if csv_path.exists():
        with open(csv_path, newline="") as f:
            table = list(csv.reader(f))
        rows = [[float(v) for v in r] for r in table[1:] if r]
    else:
        import pandas  # only needed for the .xls original

        rows = pandas.read_excel(raw / "Concrete_Data.xls").to_numpy().tolist()
    header = [f"x{i}" for i in range(8)] + ["strength"]
    write_csv(out / "concrete.csv", header, rows)


def naval(raw, out):
    rows = read_whitespace(raw / "data.txt")
    # Column 0 is the lever position (label). Two sensor columns are constant
    # across the file and are dropped, leaving 15 features.
    width = len(rows[0])
    constant = {c for c in range(width) if len({r[c] for r in rows}) == 1}
    keep = [c for c in range(1, width) if c not in constant]
    header = [f"x{c}" for c in keep] + ["lever_position"]
    write_csv(out / "naval.csv", header, [[r[c] for c in keep] + [r[0]] for r in rows])


def bias(raw, out):
    with open(raw / "Bias_correction_ucl.csv", newline="") as f:
        reader = csv.DictReader(f)
        records = [r for r in reader if r["station"].strip() and r["Date"].strip()]
        fields = reader.fieldnames
    features = [c for c in fields if c not in ("station", "Date", "Next_Tmax", "Next_Tmin")]
    # Gaps are filled with the column mean of the present values.
    columns = features + ["Next_Tmin"]
    means = {}
    for c in columns:
        present = [float(r[c]) for r in records if r[c].strip()]
        means[c] = math.fsum(present) / len(present)
    rows = [[float(r[c]) if r[c].strip() else means[c] for c in columns] for r in records]
    header = [re.sub(r"\W+", "_", c) for c in columns]
    write_csv(out / "bias.csv", header, rows)


CONVERTERS = {"airfoil": airfoil, "bias": bias, "concrete": concrete, "naval": naval}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--raw-dir", type=pathlib.Path, required=True)
    parser.add_argument("--out-dir", type=pathlib.Path, required=True)
    parser.add_argument("datasets", nargs="*", default=sorted(CONVERTERS))
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    status = 0
    for name in args.datasets:
        try:
            CONVERTERS[name](args.raw_dir, args.out_dir)
        except (FileNotFoundError, ImportError) as e:
            print(f"skipping {name}: {e}", file=sys.stderr)
            status = 2
    return status


if __name__ == "__main__":
    sys.exit(main())
