"""
ABOUTME: Resonance tables as CSV: one row per mode with frequency and eigenvalue.
ABOUTME: Used for solver output and as the reference input of length scaling.
"""

import csv
import io
import pathlib

from vocalis.common.errors import ParseError
from vocalis.features.helmholtz.models import Method, Mode, ResonanceSet

RESONANCE_HEADER = ("mode", "frequency_Hz", "re_lambda", "im_lambda")


def format_resonances(rs: ResonanceSet, delimiter: str = ",") -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter=delimiter, lineterminator="\n")
    writer.writerow(RESONANCE_HEADER)
    for i, mode in enumerate(rs.modes, start=1):
        writer.writerow([i, f"{mode.frequency:.4f}", f"{mode.lam.real:.6f}", f"{mode.lam.imag:.6f}"])
    return buffer.getvalue()


def load_resonances(path, method: Method = Method.H_R) -> ResonanceSet:
    """Read a resonance CSV written by :func:`format_resonances`."""
    path = pathlib.Path(path)
    if not path.is_file():
        raise ParseError("Resonance file not found", str(path))
    with open(path, "r", encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))
    if not rows or tuple(cell.strip() for cell in rows[0]) != RESONANCE_HEADER:
        raise ParseError(f"Expected header {','.join(RESONANCE_HEADER)}", str(path), 1)

    modes = []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(RESONANCE_HEADER):
            raise ParseError(f"Expected {len(RESONANCE_HEADER)} columns, got {len(row)}", str(path), line_no)
        try:
            lam = complex(float(row[2]), float(row[3]))
        except ValueError as e:
            raise ParseError(f"Bad number: {e}", str(path), line_no) from e
        modes.append(Mode(lam))
    modes.sort(key=lambda m: m.frequency)
    return ResonanceSet(method, tuple(modes), {"source": str(path)})
