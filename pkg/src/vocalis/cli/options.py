"""
Options shared by several commands.
"""

import argparse
from dataclasses import replace
from typing import Any, Dict

FORMATS = ("csv", "tsv", "pretty")


def add_output_options(parser: argparse.ArgumentParser, default_format: str = "csv"):
    parser.add_argument("--format", choices=FORMATS, default=default_format, help="Output format")
    parser.add_argument("--out", help="Write to PATH instead of standard output")


def add_acoustic_options(parser: argparse.ArgumentParser):
    """Overrides of the [acoustics] and [eigen] settings."""
    parser.add_argument("--c", type=float, help="Speed of sound, m/s")
    parser.add_argument("--alpha", type=float, help="Wall dissipation coefficient")
    parser.add_argument("--glottis-admittance", type=float, dest="glottis_admittance", help="Glottis-plane coefficient")
    parser.add_argument("-k", type=int, help="Number of resonances")


def overrides(args: argparse.Namespace, *names: str) -> Dict[str, Any]:
    return {name: getattr(args, name) for name in names if getattr(args, name, None) is not None}


def with_overrides(params, args: argparse.Namespace, *names: str):
    """``params`` with every option in ``names`` that was given on the command line."""
    values = overrides(args, *names)
    return replace(params, **values) if values else params
