"""
Display utilities for comparison tables.

This module renders a FormantTable as CSV, TSV or a rich table.
"""

from rich.table import Table

from vocalis.common.output import delimited, render_text
from vocalis.features.compare.models import FormantTable
from vocalis.features.helmholtz.models import Method

TABLE_HEADER = ("vowel", "method", "F1_Hz", "F2_Hz")
DISTANCE_HEADER = ("vowel", "method", "distance_Hz")


def format_formant_table(table: FormantTable, title: str = "Formants and resonances") -> Table:
    """
    Format a comparison as a Rich table.

    Args:
        table: The comparison rows
        title: Title for the table

    Returns:
        Table: A Rich Table object
    """
    rich_table = Table(title=f"{title} ({len(table)} rows)")
    rich_table.add_column("Vowel", style="cyan")
    rich_table.add_column("Method")
    rich_table.add_column("F1 (Hz)", justify="right")
    rich_table.add_column("F2 (Hz)", justify="right")
    for row in table.rows:
        rich_table.add_row(row.vowel, row.method.value, f"{row.f1:.1f}", f"{row.f2:.1f}")
    return rich_table


def emit(table: FormantTable, fmt: str = "csv") -> str:
    """Deterministic text rendering, rows ordered by vowel then method."""
    if fmt == "pretty":
        return render_text(format_formant_table(table))
    rows = [(r.vowel, r.method.value, f"{r.f1:.1f}", f"{r.f2:.1f}") for r in table.rows]
    return delimited(rows, TABLE_HEADER, "\t" if fmt == "tsv" else ",")


def emit_distances(table: FormantTable, fmt: str = "csv") -> str:
    """Distance of each method to the recorded formants, per vowel with audio."""
    distances = table.distances_to_audio()
    rows = [
        (vowel, method.value, f"{distance:.1f}")
        for vowel in sorted(distances)
        for method, distance in sorted(distances[vowel].items(), key=lambda item: Method(item[0]).rank)
    ]
    if fmt == "pretty":
        rich_table = Table(title="Distance to recorded formants")
        for column in ("Vowel", "Method", "Distance (Hz)"):
            rich_table.add_column(column)
        for row in rows:
            rich_table.add_row(*row)
        return render_text(rich_table)
    return delimited(rows, DISTANCE_HEADER, "\t" if fmt == "tsv" else ",")
