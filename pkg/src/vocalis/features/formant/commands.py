"""
Command handlers for formant analysis.
"""

import argparse
from dataclasses import replace

from rich.table import Table

from vocalis.cli.commands import register_command
from vocalis.cli.options import add_output_options
from vocalis.common.errors import EXIT_OK
from vocalis.common.output import delimited, emit_text, render_text
from vocalis.features.formant.lpc import average_formants, formants_from_wave
from vocalis.features.formant.models import FormantSettings
from vocalis.features.formant.wavio import read_wav


def formants_command(args: argparse.Namespace) -> int:
    """Estimate formants of one or more recordings; several files are averaged."""
    settings = FormantSettings.from_settings(args.settings)
    if args.resample_to is not None:
        settings = replace(settings, resample_to=args.resample_to)
    estimate = average_formants([formants_from_wave(read_wav(path), args.n, settings) for path in args.wav])

    rows = [(f"F{i}", f"{f:.1f}", f"{b:.1f}") for i, (f, b) in enumerate(zip(estimate.frequencies, estimate.bandwidths), 1)]
    if args.format == "pretty":
        table = Table(title=f"Formants ({len(args.wav)} file{'s' if len(args.wav) > 1 else ''})")
        for column in ("Formant", "Frequency (Hz)", "Bandwidth (Hz)"):
            table.add_column(column, justify="right")
        for row in rows:
            table.add_row(*row)
        emit_text(render_text(table), args.out)
    else:
        emit_text(delimited(rows, ("formant", "frequency_Hz", "bandwidth_Hz"), "\t" if args.format == "tsv" else ","), args.out)
    return EXIT_OK


def _configure_formants(parser: argparse.ArgumentParser):
    parser.add_argument("--wav", required=True, nargs="+", help="16-bit PCM mono WAV file(s)")
    parser.add_argument("-n", type=int, default=2, help="Number of formants")
    parser.add_argument("--resample-to", type=float, dest="resample_to", help="Downsample faster recordings to this rate, Hz")
    add_output_options(parser)


def register_formant_commands():
    """Register formant commands."""
    register_command("formants", formants_command, "LPC formants of recorded vowels", _configure_formants)
