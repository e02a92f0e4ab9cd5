"""
Command handlers for 3D Helmholtz resonances.
"""

import argparse

from vocalis.cli.commands import register_command
from vocalis.cli.options import add_acoustic_options, add_output_options, with_overrides
from vocalis.common.errors import EXIT_OK
from vocalis.common.output import emit_text
from vocalis.features.geometry.io import load_mesh
from vocalis.features.helmholtz.display import resonance_text
from vocalis.features.helmholtz.models import EigenSettings, HelmholtzParams
from vocalis.features.helmholtz.solver import resonances


def helmholtz_command(args: argparse.Namespace) -> int:
    """Compute H_R for a mesh."""
    params = with_overrides(HelmholtzParams.from_settings(args.settings), args, "c", "alpha", "glottis_admittance")
    eigen = with_overrides(EigenSettings.from_settings(args.settings), args, "k")
    mesh = load_mesh(args.mesh)
    rs = resonances(mesh, params, eigen.k, eigen)
    emit_text(resonance_text(rs, args.format), args.out)
    return EXIT_OK


def _configure_helmholtz(parser: argparse.ArgumentParser):
    parser.add_argument("--mesh", required=True, help="Tetrahedral mesh file")
    add_acoustic_options(parser)
    add_output_options(parser)


def register_helmholtz_commands():
    """Register Helmholtz commands."""
    register_command("helmholtz", helmholtz_command, "Helmholtz resonances of a tetrahedral mesh", _configure_helmholtz)
