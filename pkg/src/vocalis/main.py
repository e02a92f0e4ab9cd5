"""
Vocalis - vocal-tract resonance and formant toolkit.
"""

import os
import sys
from typing import List, Optional

from loguru import logger

from vocalis.cli.app import run

LOG_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}"


def configure_logging(verbose: bool = False, log_file: Optional[str] = None):
    """Configure Loguru sinks: stderr, plus a rotating file when requested."""
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "WARNING", format=LOG_FORMAT, colorize=False)

    log_file = log_file or os.getenv("VOCALIS_LOG_FILE")
    if log_file:
        logger.add(
            log_file,
            level="DEBUG",
            rotation="10 MB",  # Rotate when file reaches 10 MB
            retention="1 week",  # Keep logs for 1 week
            compression="zip",  # Compress rotated files
            format=LOG_FORMAT,
        )
        logger.info(f"Logging configured. File logging level: DEBUG at {log_file}")


def _pre_scan(argv: List[str]):
    """Logging options are needed before the parser exists."""
    verbose = "-v" in argv or "--verbose" in argv
    log_file = None
    for i, arg in enumerate(argv):
        if arg == "--log-file" and i + 1 < len(argv):
            log_file = argv[i + 1]
        elif arg.startswith("--log-file="):
            log_file = arg.split("=", 1)[1]
    return verbose, log_file


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # --- Configure Logging FIRST ---
    configure_logging(*_pre_scan(argv))
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
