"""
Command handlers for time-domain synthesis.
"""

import argparse
from dataclasses import replace

from rich.table import Table

from vocalis.cli.commands import console, register_command
from vocalis.cli.options import add_output_options
from vocalis.common.errors import EXIT_OK
from vocalis.common.output import delimited, emit_text, render_text
from vocalis.features.formant.models import FormantSettings
from vocalis.features.formant.wavio import write_wav
from vocalis.features.geometry.io import load_area_function
from vocalis.features.glottis.models import TwoMassParams
from vocalis.features.glottis.twomass import TwoMassGlottis
from vocalis.features.synth.experiments import formant_shift_experiment
from vocalis.features.synth.models import OUTPUT_KINDS, WALL_KINDS, TubeParams, WallModel
from vocalis.features.synth.sources import rosenberg_flow
from vocalis.features.synth.tube import simulate


def _tube_params(args: argparse.Namespace) -> TubeParams:
    params = TubeParams.from_settings(args.settings)
    changes = {}
    if args.fs is not None:
        changes["fs"] = args.fs
    if args.segments is not None:
        changes["n_segments"] = args.segments
    if getattr(args, "walls", None) is not None:
        changes["walls"] = replace(params.walls, kind=args.walls)
    if getattr(args, "output", None) is not None:
        changes["output"] = args.output
    if getattr(args, "no_feedback", False):
        changes["glottal_feedback"] = False
    return replace(params, **changes) if changes else params


def synth_command(args: argparse.Namespace) -> int:
    """Synthesize a vowel from an area function and write it as WAV."""
    params = _tube_params(args)
    af = load_area_function(args.area)
    if args.source == "pulses":
        source = rosenberg_flow(params.fs, args.duration, f0=args.f0)
    else:
        glottis = TwoMassParams.from_settings(args.settings)
        if args.p_sub is not None:
            glottis = replace(glottis, p_sub=args.p_sub)
        source = TwoMassGlottis(glottis, params.fs)
    wave = simulate(af, source, params, args.duration)
    write_wav(wave, args.out)
    console.print(f"[green]Wrote {wave.duration:.3f} s at {params.fs:g} Hz to {args.out}[/green]")
    return EXIT_OK


def wall_shift_command(args: argparse.Namespace) -> int:
    """First formants with rigid and with vibrating walls."""
    params = _tube_params(args)
    af = load_area_function(args.area)
    result = formant_shift_experiment(af, params, FormantSettings.from_settings(args.settings), args.duration, args.click_rate)
    rows = [
        ("rigid", f"{result.f1_rigid:.1f}", f"{result.f2_rigid:.1f}"),
        ("vibrating", f"{result.f1_vibrating:.1f}", f"{result.f2_vibrating:.1f}"),
    ]
    if args.format == "pretty":
        table = Table(title=f"Wall shift for {args.area}")
        for column in ("Walls", "F1 (Hz)", "F2 (Hz)"):
            table.add_column(column, justify="right")
        for row in rows:
            table.add_row(*row)
        table.caption = f"F1 shift {100.0 * result.relative_shift:+.2f} %"
        emit_text(render_text(table), args.out)
    else:
        emit_text(delimited(rows, ("walls", "F1_Hz", "F2_Hz"), "\t" if args.format == "tsv" else ","), args.out)
    return EXIT_OK


def _configure_tube(parser: argparse.ArgumentParser):
    parser.add_argument("--area", required=True, help="Area function file")
    parser.add_argument("--duration", type=float, default=0.5, help="Seconds to synthesize")
    parser.add_argument("--fs", type=float, help="Sample rate, Hz")
    parser.add_argument("--segments", type=int, help="Number of tube segments")


def _configure_synth(parser: argparse.ArgumentParser):
    _configure_tube(parser)
    parser.add_argument("--f0", type=float, default=100.0, help="Pitch of prescribed pulses, Hz")
    parser.add_argument("--walls", choices=WALL_KINDS)
    parser.add_argument("--output", choices=OUTPUT_KINDS, help="Lip flow derivative or lip flow")
    parser.add_argument("--source", choices=("twomass", "pulses"), default="twomass")
    parser.add_argument("--p-sub", type=float, dest="p_sub", help="Subglottal pressure, Pa")
    parser.add_argument("--no-feedback", action="store_true", dest="no_feedback", help="Ignore tract pressure at the glottis")
    parser.add_argument("--out", required=True, help="WAV file to write")


def _configure_wall_shift(parser: argparse.ArgumentParser):
    _configure_tube(parser)
    parser.add_argument("--click-rate", type=float, default=20.0, dest="click_rate", help="Excitation clicks per second")
    add_output_options(parser, default_format="pretty")


def register_synth_commands():
    """Register synthesis commands."""
    register_command("synth", synth_command, "Synthesize a vowel WAV from an area function", _configure_synth)
    register_command("wall-shift", wall_shift_command, "Compare F1 with rigid and vibrating walls", _configure_wall_shift)
