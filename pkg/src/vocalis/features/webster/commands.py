"""
Command handlers for Webster resonances.
"""

import argparse

from vocalis.cli.commands import console, register_command
from vocalis.cli.options import add_acoustic_options, add_output_options, with_overrides
from vocalis.common.errors import EXIT_OK
from vocalis.common.output import emit_text
from vocalis.features.geometry.io import load_area_function
from vocalis.features.helmholtz.display import resonance_text
from vocalis.features.helmholtz.io import load_resonances
from vocalis.features.helmholtz.models import EigenSettings
from vocalis.features.webster.models import WebsterParams
from vocalis.features.webster.solver import scale_to_helmholtz, webster_resonances


def _params(args: argparse.Namespace):
    params = with_overrides(WebsterParams.from_settings(args.settings), args, "c", "alpha", "glottis_admittance")
    eigen = with_overrides(EigenSettings.from_settings(args.settings), args, "k")
    return params, eigen


def webster_eigen_command(args: argparse.Namespace) -> int:
    """Compute W_R for an area function."""
    params, eigen = _params(args)
    af = load_area_function(args.area)
    rs = webster_resonances(af, params, eigen.k, eigen)
    emit_text(resonance_text(rs, args.format), args.out)
    return EXIT_OK


def webster_scale_command(args: argparse.Namespace) -> int:
    """Scale the centerline to reference resonances and report S_R."""
    params, eigen = _params(args)
    af = load_area_function(args.area)
    reference = load_resonances(args.ref_resonances)
    gamma, rs = scale_to_helmholtz(af, reference, params, eigen)
    console.print(f"[cyan]length scale γ = {gamma:.6f}[/cyan]")
    emit_text(resonance_text(rs, args.format), args.out)
    return EXIT_OK


def _configure_eigen(parser: argparse.ArgumentParser):
    parser.add_argument("--area", required=True, help="Area function file")
    add_acoustic_options(parser)
    add_output_options(parser)


def _configure_scale(parser: argparse.ArgumentParser):
    _configure_eigen(parser)
    parser.add_argument(
        "--ref-resonances", required=True, dest="ref_resonances", help="CSV of reference resonances (helmholtz output)"
    )


def register_webster_commands():
    """Register Webster commands."""
    register_command("webster-eigen", webster_eigen_command, "Webster resonances of an area function", _configure_eigen)
    register_command(
        "webster-scale", webster_scale_command, "Length-scaled Webster resonances matching a reference", _configure_scale
    )
