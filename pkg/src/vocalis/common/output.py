"""
ABOUTME: Destination handling for command output.
ABOUTME: Text goes to standard output unless an --out path is given.
"""

import io
import pathlib
import sys
from typing import Optional

from loguru import logger
from rich.console import Console


def emit_text(text: str, out: Optional[str] = None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = pathlib.Path(out)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {path}")


def delimited(rows, header, delimiter: str = ",") -> str:
    """Header plus rows joined by ``delimiter``, one line each, newline terminated."""
    lines = [delimiter.join(header)]
    lines.extend(delimiter.join(str(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def render_text(renderable, width: int = 100) -> str:
    """Plain-text rendering of a rich renderable, without colour codes."""
    console = Console(file=io.StringIO(), width=width, color_system=None, force_terminal=False)
    console.print(renderable)
    return console.file.getvalue()
