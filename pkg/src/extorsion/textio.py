"""Ring/ideal/matrix file formats.

Matrix file::

    ring QQ[x,y] order grevlex
    matrix 2 3
    x; y; 0
    0; x^2; 1/2*y

Ideal file: the ring header followed by polynomials, one per line (commas
also separate).  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from typing import List, Tuple

from .ideal import Ideal
from .matrix import Matrix
from .ring import ParseError, Ring, parse_polynomial, parse_ring


def _lines(text: str) -> List[Tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        out.append((no, line))
    return out


def _header(lines) -> Tuple[Ring, int]:
    for idx, (no, line) in enumerate(lines):
        if line.strip():
            return parse_ring(line, no), idx + 1
    raise ParseError("missing ring header", 1, 1)


def parse_matrix_file(text: str) -> Matrix:
    lines = _lines(text)
    ring, idx = _header(lines)
    while idx < len(lines) and not lines[idx][1].strip():
        idx += 1
    if idx >= len(lines):
        raise ParseError("missing 'matrix r c' line", lines[-1][0] + 1 if lines else 2, 1)
    no, line = lines[idx]
    m = re.fullmatch(r"\s*matrix\s+(\d+)\s+(\d+)\s*", line)
    if not m:
        raise ParseError("expected 'matrix r c'", no, 1)
    r, c = int(m.group(1)), int(m.group(2))
    idx += 1
    rows = []
    for _ in range(r):
        if idx >= len(lines):
            raise ParseError(f"expected {r} matrix rows", lines[-1][0] + 1, 1)
        no, line = lines[idx]
        idx += 1
        cells = [s for s in line.split(";")] if c else []
        if c == 0 and line.strip():
            raise ParseError("row has entries but the matrix has no columns", no, 1)
        if len(cells) != c:
            raise ParseError(f"expected {c} entries, found {len(cells)}", no, 1)
        row = []
        offset = 0
        for cell in cells:
            lead = len(cell) - len(cell.lstrip())
            try:
                row.append(parse_polynomial(ring, cell.strip(), no))
            except ParseError as exc:
                raise ParseError(str(exc).split(": ", 1)[1], no, offset + lead + exc.column) from None
            offset += len(cell) + 1
        rows.append(row)
    for no, line in lines[idx:]:
        if line.strip():
            raise ParseError("trailing content after matrix", no, 1)
    return Matrix.from_rows(ring, rows, c)


def format_matrix_file(m: Matrix) -> str:
    out = [m.ring.header(), f"matrix {m.nrows} {m.ncols}"]
    for row in m.rows:
        out.append("; ".join(str(p) for p in row))
    return "\n".join(out) + "\n"


def parse_ideal_file(text: str) -> Ideal:
    lines = _lines(text)
    ring, idx = _header(lines)
    gens = []
    for no, line in lines[idx:]:
        if not line.strip():
            continue
        offset = 0
        for cell in line.split(","):
            if cell.strip():
                lead = len(cell) - len(cell.lstrip())
                try:
                    gens.append(parse_polynomial(ring, cell.strip(), no))
                except ParseError as exc:
                    raise ParseError(str(exc).split(": ", 1)[1], no, offset + lead + exc.column) from None
            offset += len(cell) + 1
    return Ideal(gens, ring)


def format_ideal_file(ideal: Ideal) -> str:
    gens = [str(g) for g in ideal.generators if not g.is_zero()] or ["0"]
    return "\n".join([ideal.ring.header()] + gens) + "\n"
