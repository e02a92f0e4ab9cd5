"""
ABOUTME: Readers and writers for the ASCII area-function and tagged tet-mesh formats.
ABOUTME: Parse failures raise ParseError with file and line; invariant failures raise ValidationError.
"""

import io
import os
import pathlib
from typing import Iterator, List, TextIO, Tuple, Union

import numpy as np
from loguru import logger

from vocalis.common.errors import ParseError, ValidationError
from vocalis.features.geometry.models import AreaFunction, TetMesh, circular_circumference

PathLike = Union[str, os.PathLike]


def _fmt(value: float) -> str:
    # repr of a Python float is the shortest string that reads back bit-identically
    return repr(float(value))


def _content_lines(stream: TextIO, source: str) -> Iterator[Tuple[int, List[str]]]:
    """Yield (line number, tokens) for every non-empty, non-comment line."""
    number = 0
    while True:
        try:
            raw = stream.readline()
        except UnicodeDecodeError as e:
            raise ParseError(f"not valid UTF-8: {e.reason}", path=source, line=number + 1) from None
        if not raw:
            return
        number += 1
        text = raw.split("#", 1)[0].strip()
        if text:
            yield number, text.split()


def _open(path: PathLike) -> TextIO:
    path = pathlib.Path(path)
    if not path.is_file():
        raise ParseError("file not found", path=str(path))
    return open(path, "r", encoding="utf-8")


def parse_area_function(stream: TextIO, source: str = "<stream>") -> AreaFunction:
    """Parse ``s A [W [Sigma]]`` rows."""
    s, area, circumference, sigma = [], [], [], []
    for number, tokens in _content_lines(stream, source):
        if not 2 <= len(tokens) <= 4:
            raise ParseError(f"expected 2 to 4 columns, found {len(tokens)}", path=source, line=number)
        try:
            values = [float(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-numeric value in '{' '.join(tokens)}'", path=source, line=number) from None
        s.append(values[0])
        area.append(values[1])
        circumference.append(values[2] if len(values) > 2 else float(circular_circumference(max(values[1], 0.0))))
        sigma.append(values[3] if len(values) > 3 else 1.0)

    if not s:
        raise ParseError("no samples", path=source)
    try:
        return AreaFunction(np.array(s), np.array(area), np.array(circumference), np.array(sigma))
    except ValidationError as e:
        raise ValidationError(f"{source}: {e}") from e


def load_area_function(path: PathLike) -> AreaFunction:
    """Load and validate an area-function file."""
    with _open(path) as stream:
        af = parse_area_function(stream, source=str(path))
    logger.debug(f"Loaded area function {path}: {len(af)} samples, L={af.length:.4f} m")
    return af


def format_area_function(af: AreaFunction) -> str:
    out = io.StringIO()
    out.write("# s[m] A[m^2] W[m] Sigma\n")
    for row in zip(af.s, af.area, af.circumference, af.sigma):
        out.write(" ".join(_fmt(v) for v in row) + "\n")
    return out.getvalue()


def write_area_function(af: AreaFunction, path: PathLike) -> None:
    pathlib.Path(path).write_text(format_area_function(af), encoding="utf-8")


def _section_header(lines: Iterator[Tuple[int, List[str]]], name: str, source: str) -> int:
    try:
        number, tokens = next(lines)
    except StopIteration:
        raise ParseError(f"missing '{name}' section", path=source) from None
    if len(tokens) != 2 or tokens[0] != name:
        raise ParseError(f"expected '{name} <count>', found '{' '.join(tokens)}'", path=source, line=number)
    try:
        count = int(tokens[1])
    except ValueError:
        raise ParseError(f"invalid {name} count '{tokens[1]}'", path=source, line=number) from None
    if count < 0:
        raise ParseError(f"negative {name} count", path=source, line=number)
    return count


def _section_rows(lines, count: int, width: int, kind, name: str, source: str) -> np.ndarray:
    rows = []
    for _ in range(count):
        try:
            number, tokens = next(lines)
        except StopIteration:
            raise ParseError(f"'{name}' section ended after {len(rows)} of {count} rows", path=source) from None
        if len(tokens) != width:
            raise ParseError(f"{name} row needs {width} values, found {len(tokens)}", path=source, line=number)
        try:
            rows.append([kind(t) for t in tokens])
        except ValueError:
            raise ParseError(f"invalid {name} row '{' '.join(tokens)}'", path=source, line=number) from None
    return np.array(rows, dtype=float if kind is float else np.int64).reshape(count, width)


def parse_mesh(stream: TextIO, source: str = "<stream>") -> TetMesh:
    """Parse the ``vertices``/``tets``/``boundary`` section format."""
    lines = _content_lines(stream, source)
    vertices = _section_rows(lines, _section_header(lines, "vertices", source), 3, float, "vertices", source)
    tets = _section_rows(lines, _section_header(lines, "tets", source), 4, int, "tets", source)
    boundary = _section_rows(lines, _section_header(lines, "boundary", source), 4, int, "boundary", source)
    for number, tokens in lines:
        raise ParseError(f"unexpected trailing content '{' '.join(tokens)}'", path=source, line=number)
    try:
        return TetMesh(vertices, tets, boundary[:, :3], boundary[:, 3])
    except ValidationError as e:
        raise type(e)(f"{source}: {e}") from e


def load_mesh(path: PathLike) -> TetMesh:
    """Load and validate a tagged tetrahedral mesh."""
    with _open(path) as stream:
        mesh = parse_mesh(stream, source=str(path))
    logger.debug(f"Loaded mesh {path}: {mesh.n_vertices} vertices, {mesh.n_tets} tets")
    return mesh


def format_mesh(mesh: TetMesh) -> str:
    out = io.StringIO()
    out.write(f"vertices {mesh.n_vertices}\n")
    for x, y, z in mesh.vertices:
        out.write(f"{_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
    out.write(f"tets {mesh.n_tets}\n")
    for tet in mesh.tets.tolist():
        out.write(" ".join(str(i) for i in tet) + "\n")
    out.write(f"boundary {mesh.boundary_tris.shape[0]}\n")
    for tri, tag in zip(mesh.boundary_tris.tolist(), mesh.boundary_tags.tolist()):
        out.write(f"{tri[0]} {tri[1]} {tri[2]} {tag}\n")
    return out.getvalue()


def write_mesh(mesh: TetMesh, path: PathLike) -> None:
    pathlib.Path(path).write_text(format_mesh(mesh), encoding="utf-8")
