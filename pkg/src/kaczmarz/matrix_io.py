"""MatrixMarket readers and writers, plus plain-text vectors.

Coordinate files follow the format's conventions: 1-based indices,
duplicate entries summed, symmetric storage expanded to general on load.
Parse failures carry the offending line number.  Matrices at or above the
density threshold materialize dense; sparser ones load as CSR.
"""

from __future__ import annotations

import os

import numpy as np

from .matrix import Matrix

DENSE_DENSITY_THRESHOLD = 0.05

_BANNER = "%%matrixmarket"
_FORMATS = ("coordinate", "array")
_FIELDS = ("real", "integer", "pattern")
_SYMMETRIES = ("general", "symmetric")


class MatrixMarketError(ValueError):
    """Malformed MatrixMarket content, with file and line context."""

    def __init__(self, path, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = path
        self.lineno = lineno


def _parse_header(path, line: str):
    tokens = line.strip().lower().split()
    if len(tokens) != 5 or tokens[0] != _BANNER or tokens[1] != "matrix":
        raise MatrixMarketError(path, 1, "malformed banner; expected '%%MatrixMarket matrix ...'")
    fmt, field, symmetry = tokens[2], tokens[3], tokens[4]
    if fmt not in _FORMATS:
        raise MatrixMarketError(path, 1, f"unsupported format {fmt!r}")
    if field not in _FIELDS:
        raise MatrixMarketError(path, 1, f"unsupported field {field!r}")
    if symmetry not in _SYMMETRIES:
        raise MatrixMarketError(path, 1, f"unsupported symmetry {symmetry!r}")
    return fmt, field, symmetry


def _data_lines(path, lines):
    """Yield (lineno, line) skipping comments and blanks after the banner."""
    for lineno, raw in lines:
        stripped = raw.strip()
        if not stripped or stripped.startswith("%"):
            continue
        yield lineno, stripped


def _parse_float(path, lineno, token) -> float:
    try:
        value = float(token)
    except ValueError:
        raise MatrixMarketError(path, lineno, f"not a number: {token!r}") from None
    if not np.isfinite(value):
        raise MatrixMarketError(path, lineno, f"non-finite value: {token!r}")
    return value


def read_matrix_market(path, dense_threshold: float = DENSE_DENSITY_THRESHOLD) -> Matrix:
    """Load a real matrix from a MatrixMarket file."""
    with open(path, "r", encoding="ascii") as handle:
        lines = list(enumerate(handle, start=1))
    if not lines:
        raise MatrixMarketError(path, 1, "empty file")
    fmt, field, symmetry = _parse_header(path, lines[0][1])
    body = _data_lines(path, lines[1:])

    try:
        size_lineno, size_line = next(body)
    except StopIteration:
        raise MatrixMarketError(path, len(lines), "missing size line") from None
    size_tokens = size_line.split()
    expected = 3 if fmt == "coordinate" else 2
    if len(size_tokens) != expected or not all(t.lstrip("+").isdigit() for t in size_tokens):
        raise MatrixMarketError(path, size_lineno, f"malformed size line: {size_line!r}")
    dims = [int(t) for t in size_tokens]
    rows, cols = dims[0], dims[1]
    if rows < 1 or cols < 1:
        raise MatrixMarketError(path, size_lineno, "matrix dimensions must be positive")

    if fmt == "coordinate":
        declared = dims[2]
        ii, jj, vv = [], [], []
        count = 0
        for lineno, line in body:
            tokens = line.split()
            want = 2 if field == "pattern" else 3
            if len(tokens) != want:
                raise MatrixMarketError(path, lineno, f"expected {want} fields, got {len(tokens)}")
            try:
                i, j = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise MatrixMarketError(path, lineno, "entry indices must be integers") from None
            if not (1 <= i <= rows and 1 <= j <= cols):
                raise MatrixMarketError(
                    path, lineno, f"entry ({i}, {j}) outside declared {rows}x{cols} bounds"
                )
            v = 1.0 if field == "pattern" else _parse_float(path, lineno, tokens[2])
            ii.append(i - 1)
            jj.append(j - 1)
            vv.append(v)
            if symmetry == "symmetric":
                if j > i:
                    raise MatrixMarketError(
                        path, lineno, "symmetric storage must hold the lower triangle"
                    )
                if i != j:
                    ii.append(j - 1)
                    jj.append(i - 1)
                    vv.append(v)
            count += 1
        if count != declared:
            raise MatrixMarketError(
                path, len(lines), f"declared {declared} entries but found {count}"
            )
        distinct = len({(i, j) for i, j in zip(ii, jj)})
        if distinct / (rows * cols) >= dense_threshold:
            dense = np.zeros((rows, cols))
            np.add.at(dense, (np.asarray(ii, dtype=np.intp), np.asarray(jj, dtype=np.intp)),
                      np.asarray(vv))
            return Matrix.from_dense(dense)
        return Matrix.from_coo(ii, jj, vv, shape=(rows, cols))

    # array format: column-major dense values
    if symmetry == "symmetric" and rows != cols:
        raise MatrixMarketError(path, size_lineno, "symmetric array storage needs a square matrix")
    values = []
    linenos = []
    for lineno, line in body:
        for token in line.split():
            values.append(_parse_float(path, lineno, token))
            linenos.append(lineno)
    if symmetry == "symmetric":
        want = rows * (rows + 1) // 2
    else:
        want = rows * cols
    if len(values) != want:
        raise MatrixMarketError(path, len(lines), f"expected {want} array values, got {len(values)}")
    dense = np.zeros((rows, cols))
    if symmetry == "symmetric":
        pos = 0
        for j in range(cols):
            for i in range(j, rows):
                dense[i, j] = values[pos]
                dense[j, i] = values[pos]
                pos += 1
    else:
        dense = np.asarray(values).reshape((cols, rows)).T.copy()
    return Matrix.from_dense(dense)


def write_matrix_market(m: Matrix, path) -> None:
    """Write coordinate/real/general with full round-trip precision."""
    if m.is_sparse:
        coo = m._csr.tocoo()
        ii, jj, vv = coo.row, coo.col, coo.data
    else:
        dense = m.to_dense()
        ii, jj = np.nonzero(dense)
        vv = dense[ii, jj]
    with open(path, "w", encoding="ascii") as handle:
        handle.write("%%MatrixMarket matrix coordinate real general\n")
        handle.write(f"{m.rows} {m.cols} {len(vv)}\n")
        for i, j, v in zip(ii, jj, vv):
            handle.write(f"{i + 1} {j + 1} {float(v)!r}\n")


def read_vector(path) -> np.ndarray:
    """Read a vector: MatrixMarket array with one column, or one value per line."""
    with open(path, "r", encoding="ascii") as handle:
        lines = list(enumerate(handle, start=1))
    if not lines:
        raise MatrixMarketError(path, 1, "empty file")
    first = lines[0][1].strip().lower()
    if first.startswith(_BANNER):
        fmt, field, symmetry = _parse_header(path, lines[0][1])
        if fmt != "array" or field == "pattern":
            raise MatrixMarketError(path, 1, "vector files must be array format with values")
        body = _data_lines(path, lines[1:])
        size_lineno, size_line = next(body, (len(lines), ""))
        tokens = size_line.split()
        if len(tokens) != 2 or not all(t.isdigit() for t in tokens):
            raise MatrixMarketError(path, size_lineno, f"malformed size line: {size_line!r}")
        rows, cols = int(tokens[0]), int(tokens[1])
        if cols != 1:
            raise MatrixMarketError(path, size_lineno, "vector files must have one column")
        values = [_parse_float(path, lineno, line.split()[0]) for lineno, line in body]
        if len(values) != rows:
            raise MatrixMarketError(path, len(lines), f"expected {rows} values, got {len(values)}")
        return np.asarray(values)
    values = []
    for lineno, raw in lines:
        stripped = raw.strip()
        if not stripped or stripped.startswith(("%", "#")):
            continue
        values.append(_parse_float(path, lineno, stripped))
    if not values:
        raise MatrixMarketError(path, len(lines), "no values found")
    return np.asarray(values)


def write_vector(v: np.ndarray, path) -> None:
    """One value per line, full round-trip precision."""
    v = np.asarray(v, dtype=np.float64)
    with open(path, "w", encoding="ascii") as handle:
        for value in v:
            handle.write(f"{float(value)!r}\n")


def load_suitesparse(path) -> Matrix:
    """Load a SuiteSparse benchmark matrix (no download; path supplied)."""
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    return read_matrix_market(path)
