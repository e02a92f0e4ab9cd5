"""
Display utilities for geometry.

This module provides functions for formatting mesh summaries.
"""

from rich.table import Table

from vocalis.features.geometry.models import BoundaryTag, TetMesh


def format_mesh_table(mesh: TetMesh, title: str = "Mesh") -> Table:
    """
    Format a mesh summary as a Rich table.

    Args:
        mesh: The validated mesh
        title: Title for the table

    Returns:
        Table: A Rich Table object
    """
    info = mesh.summary()
    table = Table(title=title)
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", justify="right")

    table.add_row("vertices", str(info["vertices"]))
    table.add_row("tetrahedra", str(info["tets"]))
    table.add_row("volume (m^3)", f"{info['volume']:.6e}")
    for tag in BoundaryTag:
        name = tag.name.lower()
        table.add_row(f"{name} triangles (tag {int(tag)})", str(info[f"{name}_triangles"]))
        table.add_row(f"{name} area (m^2)", f"{info[f'{name}_area']:.6e}")
    if mesh.repaired:
        table.add_row("re-oriented tetrahedra", str(mesh.repaired), style="yellow")
    return table


def mesh_info_lines(mesh: TetMesh, delimiter: str = ",") -> str:
    info = mesh.summary()
    rows = [f"{key}{delimiter}{value}" for key, value in info.items()]
    rows.append(f"repaired{delimiter}{mesh.repaired}")
    return "\n".join([f"quantity{delimiter}value", *rows]) + "\n"
