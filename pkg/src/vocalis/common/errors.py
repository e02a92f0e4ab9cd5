"""
ABOUTME: Custom exceptions and error handling for Vocalis.
ABOUTME: Defines the VocalisError hierarchy, CLI exit codes and utilities for logging/displaying errors.
"""

from typing import Optional

from loguru import logger
from rich.console import Console
from rich.panel import Panel

# Errors go to stderr so that stdout stays a clean data stream
console = Console(stderr=True)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3


class VocalisError(Exception):
    """Base class for all Vocalis exceptions."""

    exit_code = EXIT_SOLVER


class ConfigurationError(VocalisError):
    """Error related to configuration."""

    exit_code = EXIT_CONFIG


class ParseError(VocalisError):
    """Malformed input file."""

    exit_code = EXIT_CONFIG

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(f"{location}{message}")
        self.path = path
        self.line = line


class ValidationError(VocalisError):
    """Input parsed but violates a domain invariant."""

    exit_code = EXIT_CONFIG


class MeshError(ValidationError):
    """Tetrahedral mesh violates orientation, incidence or tagging rules."""


class SolverError(VocalisError):
    """Numerical solve failed."""


class SingularMatrixError(SolverError):
    """LU factorization met a zero pivot."""

    def __init__(self, message: str, pivot: Optional[int] = None):
        if pivot is not None:
            message = f"{message} (pivot {pivot})"
        super().__init__(message)
        self.pivot = pivot


class ConvergenceError(SolverError):
    """Iteration cap reached before the residual tolerance."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (achieved residual {residual:.3e})")
        self.residual = residual


class ScalingError(SolverError):
    """Length scaling could not bracket a root."""


class InstabilityError(SolverError):
    """Time stepping produced a non-finite state."""

    def __init__(self, message: str, step: int):
        super().__init__(f"{message} at step {step}")
        self.step = step


class FormantError(VocalisError):
    """Formant estimation failed."""


class DegenerateFrameError(FormantError):
    """Analysis frame carries no energy."""


def exit_code_for(error: BaseException) -> int:
    """Map an exception onto the CLI exit status."""
    if isinstance(error, VocalisError):
        return error.exit_code
    if isinstance(error, (FileNotFoundError, PermissionError, IsADirectoryError)):
        return EXIT_CONFIG
    return EXIT_SOLVER


def log_error(error, level="ERROR"):
    """Log an error using Loguru."""
    if isinstance(error, VocalisError):
        # Domain errors carry their own message; a traceback adds nothing
        logger.log(level, f"{error.__class__.__name__}: {error}")
    elif isinstance(error, Exception):
        logger.opt(exception=error).log(level, str(error))
    else:
        logger.log(level, str(error))


def display_error(error, title="Error"):
    """Display an error to the user."""
    panel = Panel(
        f"{error}",
        title=f"[bold red]{title}[/bold red]",
        subtitle=f"[red]{error.__class__.__name__}[/red]",
        border_style="red",
    )
    console.print(panel)


def handle_error(error) -> int:
    """Handle an error by logging and displaying it. Returns the exit code to use."""
    log_error(error)
    display_error(error)
    return exit_code_for(error)
