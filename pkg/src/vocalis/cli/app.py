"""
Command line application for Vocalis: builds the parser from the command registry and dispatches.
"""

import argparse
from typing import List, Optional

from loguru import logger

from vocalis.__version__ import __version__ as VERSION
from vocalis.cli.commands import commands, register_core_commands, route_command
from vocalis.common.config import load_settings
from vocalis.common.errors import EXIT_CONFIG, handle_error
from vocalis.features.compare.commands import register_compare_commands
from vocalis.features.formant.commands import register_formant_commands
from vocalis.features.geometry.commands import register_geometry_commands
from vocalis.features.helmholtz.commands import register_helmholtz_commands
from vocalis.features.synth.commands import register_synth_commands
from vocalis.features.webster.commands import register_webster_commands


def register_all_commands():
    """Registers all core and feature commands."""
    if commands:
        return
    logger.debug("Registering all commands...")
    register_core_commands()
    register_geometry_commands()
    register_helmholtz_commands()
    register_webster_commands()
    register_synth_commands()
    register_formant_commands()
    register_compare_commands()


def build_parser() -> argparse.ArgumentParser:
    register_all_commands()
    parser = argparse.ArgumentParser(
        prog="vocalis",
        description="Vocalis - vocal-tract resonances and formants from 3D, 1D and time-domain models",
        epilog="Run 'vocalis help' for a list of commands.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug output to stderr")
    parser.add_argument("--log-file", dest="log_file", help="Also log to this file")
    parser.add_argument("--settings", dest="settings_file", help="INI file overriding the shipped defaults")

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    for name, info in sorted(commands.items()):
        sub = subparsers.add_parser(name, help=info["help"], description=info["help"])
        if info["configure"] is not None:
            info["configure"](sub)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv`` and run the command, returning the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 for --help/--version
        return int(e.code or 0)

    if args.command is None:
        parser.print_help()
        return EXIT_CONFIG

    try:
        args.settings = load_settings(args.settings_file)
        return route_command(args)
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        return 130
    except Exception as e:
        return handle_error(e)
