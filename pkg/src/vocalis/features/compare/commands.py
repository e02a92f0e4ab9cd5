"""
Command handlers for the method comparison.
"""

import argparse

from vocalis.cli.commands import console, register_command
from vocalis.cli.options import add_output_options
from vocalis.common.errors import EXIT_OK, EXIT_SOLVER
from vocalis.common.output import emit_text
from vocalis.features.compare.display import emit, emit_distances


def compare_command(args: argparse.Namespace) -> int:
    """Run every method for every vowel of a config and print the table."""
    from vocalis.features.compare.api import get_compare_api

    result = get_compare_api().compare_file(args.config, jobs=args.jobs)
    text = emit(result.table, args.format)
    if args.distances:
        text += "\n" + emit_distances(result.table, args.format)
    emit_text(text, args.out)

    if not result.complete:
        for failure in result.failures:
            console.print(f"[red]{failure}[/red]")
        return EXIT_SOLVER
    return EXIT_OK


def _configure_compare(parser: argparse.ArgumentParser):
    parser.add_argument("--config", required=True, help="Comparison config file")
    parser.add_argument("--jobs", type=int, default=1, help="Vowels processed concurrently")
    parser.add_argument("--distances", action="store_true", help="Also report distances to recorded formants")
    add_output_options(parser)


def register_compare_commands():
    """Register comparison commands."""
    register_command("compare", compare_command, "Compare resonances and formants across methods", _configure_compare)
