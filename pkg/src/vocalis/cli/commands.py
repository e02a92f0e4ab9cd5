"""
Command routing system for Vocalis.
"""

import argparse
from typing import Callable, Optional

from loguru import logger
from rich.console import Console
from rich.table import Table

from vocalis.common.errors import EXIT_OK

# Human-facing output; data goes through the commands' own writers
console = Console(stderr=True)

# Command registry
commands = {}

CommandFunc = Callable[[argparse.Namespace], int]
ConfigureFunc = Callable[[argparse.ArgumentParser], None]


def register_command(name: str, func: CommandFunc, help_text: str, configure: Optional[ConfigureFunc] = None):
    """Register a command with the command system.

    ``configure`` adds the command's options to its argparse subparser.
    """
    commands[name] = {"func": func, "help": help_text, "configure": configure}
    logger.debug(f"Registered command: {name} -> {func.__module__}.{func.__name__}")


def route_command(args: argparse.Namespace) -> int:
    """Route parsed arguments to the handler of ``args.command``."""
    cmd_name = args.command
    if cmd_name not in commands:
        logger.warning(f"Unknown command: '{cmd_name}'")
        console.print(f"[red]Unknown command: {cmd_name}[/red]")
        console.print("Run [bold]vocalis help[/bold] for available commands.")
        return 2
    logger.debug(f"Routing command: '{cmd_name}'")
    return commands[cmd_name]["func"](args)


def show_all_commands():
    """Show all available commands."""
    table = Table(title="Available Commands")
    table.add_column("Command", style="cyan")
    table.add_column("Description")

    for cmd_name, cmd_info in sorted(commands.items()):
        table.add_row(cmd_name, cmd_info["help"])

    console.print(table)


def help_command(args: argparse.Namespace) -> int:
    """Show help for commands."""
    topic = getattr(args, "topic", None)
    if topic:
        if topic in commands:
            console.print(f"[bold cyan]{topic}[/bold cyan]: {commands[topic]['help']}")
            return EXIT_OK
        console.print(f"[red]Unknown command: {topic}[/red]")
        return 2
    show_all_commands()
    return EXIT_OK


def _configure_help(parser: argparse.ArgumentParser):
    parser.add_argument("topic", nargs="?", help="Command to describe")


def register_core_commands():
    register_command("help", help_command, "Show help for commands", _configure_help)
