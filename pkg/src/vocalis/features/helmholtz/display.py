"""
Display utilities for resonances.
"""

from rich.table import Table

from vocalis.common.output import render_text
from vocalis.features.helmholtz.io import format_resonances
from vocalis.features.helmholtz.models import ResonanceSet


def format_resonance_table(rs: ResonanceSet, title: str = None) -> Table:
    """Rich table of one resonance set, lowest mode first."""
    table = Table(title=title or f"{rs.method.value} resonances")
    table.add_column("Mode", justify="right", style="cyan")
    table.add_column("Frequency (Hz)", justify="right")
    table.add_column("Bandwidth (Hz)", justify="right")
    table.add_column("Re λ", justify="right", style="dim")

    for i, mode in enumerate(rs.modes, start=1):
        table.add_row(str(i), f"{mode.frequency:.1f}", f"{mode.bandwidth:.2f}", f"{mode.lam.real:.3f}")
    if "gamma" in rs.metadata:
        table.caption = f"length scale γ = {rs.metadata['gamma']:.6f}"
    return table


def resonance_text(rs: ResonanceSet, fmt: str = "csv") -> str:
    """Resonances rendered for ``--format``: csv, tsv or pretty."""
    if fmt == "pretty":
        return render_text(format_resonance_table(rs))
    return format_resonances(rs, "\t" if fmt == "tsv" else ",")
