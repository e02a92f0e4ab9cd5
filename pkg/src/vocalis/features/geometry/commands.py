"""
Command handlers for geometry files.
"""

import argparse

from vocalis.cli.commands import register_command
from vocalis.common.errors import EXIT_OK
from vocalis.common.output import emit_text, render_text
from vocalis.features.geometry.display import format_mesh_table, mesh_info_lines
from vocalis.features.geometry.io import format_area_function, format_mesh, load_mesh
from vocalis.features.geometry.primitives import TUBE_SHAPES, make_cylinder_mesh, make_tube


def mesh_info_command(args: argparse.Namespace) -> int:
    """Validate a mesh and print its summary."""
    mesh = load_mesh(args.mesh)
    if args.format == "pretty":
        emit_text(render_text(format_mesh_table(mesh, title=str(args.mesh))), args.out)
    else:
        emit_text(mesh_info_lines(mesh, "\t" if args.format == "tsv" else ","), args.out)
    return EXIT_OK


def make_tube_command(args: argparse.Namespace) -> int:
    af = make_tube(args.shape, args.length, args.area, args.segments)
    emit_text(format_area_function(af), args.out)
    return EXIT_OK


def make_cylinder_mesh_command(args: argparse.Namespace) -> int:
    mesh = make_cylinder_mesh(args.length, args.radius, args.h)
    emit_text(format_mesh(mesh), args.out)
    return EXIT_OK


def _configure_mesh_info(parser: argparse.ArgumentParser):
    parser.add_argument("--mesh", required=True, help="Tetrahedral mesh file")
    parser.add_argument("--format", choices=("pretty", "csv", "tsv"), default="pretty")
    parser.add_argument("--out", help="Write to PATH instead of standard output")


def _configure_make_tube(parser: argparse.ArgumentParser):
    parser.add_argument("--shape", choices=TUBE_SHAPES, default="cylinder")
    parser.add_argument("--length", type=float, default=0.175, help="Tube length, m")
    parser.add_argument("--area", type=float, default=3e-4, help="Reference area A0, m^2")
    parser.add_argument("--segments", type=int, default=20)
    parser.add_argument("--out", help="Write to PATH instead of standard output")


def _configure_make_cylinder_mesh(parser: argparse.ArgumentParser):
    parser.add_argument("--length", type=float, default=0.175, help="Cylinder length, m")
    parser.add_argument("--radius", type=float, default=0.01, help="Cylinder radius, m")
    parser.add_argument("--h", type=float, default=0.004, help="Target element size, m")
    parser.add_argument("--out", help="Write to PATH instead of standard output")


def register_geometry_commands():
    """Register geometry-related commands."""
    register_command("mesh-info", mesh_info_command, "Validate a mesh and summarize it", _configure_mesh_info)
    register_command("make-tube", make_tube_command, "Write an analytic area function", _configure_make_tube)
    register_command(
        "make-cylinder-mesh", make_cylinder_mesh_command, "Write a tagged cylinder mesh", _configure_make_cylinder_mesh
    )
