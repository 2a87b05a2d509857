"""
CSV emission for sweep results.

Layout: ``#`` comment lines with the sweep name, the units and the fully resolved sweep document as JSON, then a
header row and one row per grid point. Floats are written with 17 significant digits so that identical inputs
give identical files.
"""

import csv
import io
import json

from sweeps.runner import SweepResult

__all__ = ("write_sweep_csv", "sweep_csv_text", "format_cell")

UNITS_NOTE = "lengths in mm, classical amplitudes in 1e6 V/m, correction amplitudes in 10 V/m, couplings in 1/mm"


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, float)):
        return format(value, ".17g")
    return str(value)


def write_sweep_csv(result: SweepResult, fp):
    spec = result.spec
    fp.write(f"# pbg sweep: {spec.name}\n")
    fp.write(f"# units: {UNITS_NOTE}\n")
    fp.write(f"# document: {json.dumps(json.loads(spec.json()), sort_keys=True)}\n")
    writer = csv.writer(fp, lineterminator="\n")
    columns = result.columns
    writer.writerow(columns)
    for record in result.records():
        writer.writerow([format_cell(record.get(column)) for column in columns])


def sweep_csv_text(result: SweepResult) -> str:
    buf = io.StringIO()
    write_sweep_csv(result, buf)
    return buf.getvalue()
