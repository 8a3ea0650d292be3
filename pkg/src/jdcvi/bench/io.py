"""Dataset CSV reading and writing.

Files carry a header row, one decimal column per feature and optionally a
trailing integer column named ``label``. Floats are written with
``repr`` so a save/load round trip is bit exact.
"""

import csv
from importlib import resources
from pathlib import Path

import numpy as np

from ..core import Dataset
from ..exceptions import DimensionMismatchError, ParseError

LABEL_COLUMN = "label"


def save_csv(ds, path):
    path = Path(path)
    n_features = ds.d
    header = [f"x{j}" for j in range(n_features)]
    if ds.labels is not None:
        header.append(LABEL_COLUMN)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for i in range(ds.n):
            row = [repr(float(v)) for v in ds.points[i]]
            if ds.labels is not None:
                row.append(str(int(ds.labels[i])))
            writer.writerow(row)


def load_csv(path, name=None):
    """Read a dataset; label ids are renumbered to ``0..L-1`` in sorted order."""
    path = Path(path)
    try:
        fh = path.open(newline="", encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot open file: {exc.strerror}", path=path) from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("file is empty", path=path) from None
        header = [h.strip() for h in header]
        has_label = bool(header) and header[-1].lower() == LABEL_COLUMN
        width = len(header)
        n_features = width - 1 if has_label else width
        if n_features < 1:
            raise ParseError("no feature columns in header", path=path, row=1)
        rows, labels = [], []
        for row_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != width:
                raise DimensionMismatchError(
                    f"expected {width} fields, found {len(row)}", path=path, row=row_no
                )
            values = []
            for col, cell in enumerate(row[:n_features], start=1):
                try:
                    values.append(float(cell))
                except ValueError:
                    raise ParseError(
                        f"not a number: {cell!r}", path=path, row=row_no, column=col
                    ) from None
                if not np.isfinite(values[-1]):
                    raise ParseError(
                        f"non-finite value {cell!r}", path=path, row=row_no, column=col
                    )
            rows.append(values)
            if has_label:
                cell = row[-1].strip()
                try:
                    labels.append(int(cell))
                except ValueError:
                    raise ParseError(
                        f"label is not an integer: {cell!r}",
                        path=path,
                        row=row_no,
                        column=width,
                    ) from None
    if not rows:
        raise ParseError("no data rows", path=path)
    label_arr = None
    if has_label:
        _, label_arr = np.unique(np.array(labels, dtype=np.int64), return_inverse=True)
    return Dataset(np.array(rows), label_arr, name=name or path.stem)


def iris_path():
    """Path of the bundled Iris CSV (150 x 4 with labels)."""
    return Path(str(resources.files("jdcvi.data").joinpath("iris.csv")))


def load_iris():
    return load_csv(iris_path(), name="iris")


def load_partition_csv(path):
    """Read a single-column (or ``label``-terminated) CSV of cluster ids."""
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("file is empty", path=path) from None
        col = len(header) - 1
        ids = []
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise DimensionMismatchError(
                    f"expected {len(header)} fields, found {len(row)}", path=path, row=row_no
                )
            try:
                ids.append(int(row[col]))
            except ValueError:
                raise ParseError(
                    f"cluster id is not an integer: {row[col]!r}",
                    path=path,
                    row=row_no,
                    column=col + 1,
                ) from None
    return np.array(ids, dtype=np.int64)
