# -*- coding: utf-8 -*-

"""
Typed tabular dataset.

A :class:`Dataset` stores every cell as a float: numeric attributes hold their
value, nominal attributes hold the index of their category, missing cells are
``NaN``. Exactly one nominal attribute plays the target role. Datasets are
immutable; every operation returns a new one.

Ingestion reads CSV with :mod:`pandas` and ARFF with :mod:`scipy.io.arff`.
"""

import typing as T
import dataclasses
from pathlib import Path

import numpy as np
import pandas as pd

from .constants import AttributeKindEnum, AttributeRoleEnum, MISSING_TOKEN, EPS
from .exc import DataError
from .lazy_imports import arff


@dataclasses.dataclass(frozen=True)
class AttributeMeta:
    """
    Name, kind and role of one column. Nominal attributes carry their ordered
    category list; the position in that list is the encoded cell value.
    """

    name: str
    kind: AttributeKindEnum
    categories: tuple[str, ...] = ()
    role: AttributeRoleEnum = AttributeRoleEnum.regular

    def __post_init__(self):
        if self.kind is AttributeKindEnum.nominal:
            if len(self.categories) == 0:
                raise DataError(f"nominal attribute {self.name!r} has no category")
            if len(set(self.categories)) != len(self.categories):
                raise DataError(
                    f"nominal attribute {self.name!r} has duplicate categories"
                )
        elif self.categories:
            raise DataError(f"numeric attribute {self.name!r} cannot have categories")

    @property
    def is_nominal(self) -> bool:
        return self.kind is AttributeKindEnum.nominal

    @property
    def is_target(self) -> bool:
        return self.role is AttributeRoleEnum.target

    def as_regular(self) -> "AttributeMeta":
        return dataclasses.replace(self, role=AttributeRoleEnum.regular)


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr)
    arr.setflags(write=False)
    return arr


@dataclasses.dataclass(frozen=True, eq=False)
class Dataset:
    """
    Attribute-typed table with one nominal target column.

    :param attributes: column metadata, in column order.
    :param values: ``(n_instances, n_attributes)`` float matrix.
    :param provenance: free text label, e.g. ``"D_1 level 2"``.
    :param row_origin: source row id of every instance; bootstrapping repeats ids.
    """

    attributes: tuple[AttributeMeta, ...]
    values: np.ndarray
    provenance: str = ""
    row_origin: np.ndarray | None = None

    def __post_init__(self):
        attributes = tuple(self.attributes)
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise DataError(f"values must be a 2-D matrix, got {values.ndim}-D")
        if values.shape[1] != len(attributes):
            raise DataError(
                f"every row must have {len(attributes)} cells, got {values.shape[1]}"
            )
        names = [a.name for a in attributes]
        if len(set(names)) != len(names):
            raise DataError(f"attribute names must be unique: {names}")
        targets = [a for a in attributes if a.is_target]
        if len(targets) != 1:
            raise DataError(f"exactly one target attribute required, got {len(targets)}")
        if not targets[0].is_nominal:
            raise DataError(f"target {targets[0].name!r} must be nominal")
        for j, a in enumerate(attributes):
            if a.is_nominal:
                col = values[:, j]
                present = col[~np.isnan(col)]
                if present.size and (
                    np.any(present != np.floor(present))
                    or present.min() < 0
                    or present.max() >= len(a.categories)
                ):
                    raise DataError(f"category index out of range in {a.name!r}")
        row_origin = self.row_origin
        if row_origin is None:
            row_origin = np.arange(values.shape[0], dtype=np.int64)
        row_origin = np.asarray(row_origin, dtype=np.int64)
        if row_origin.shape != (values.shape[0],):
            raise DataError("row_origin must have one entry per instance")
        object.__setattr__(self, "attributes", attributes)
        object.__setattr__(self, "values", _readonly(values))
        object.__setattr__(self, "row_origin", _readonly(row_origin))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.attributes == other.attributes and np.array_equal(
            self.values, other.values, equal_nan=True
        )

    __hash__ = None

    # --- shape
    @property
    def n_instances(self) -> int:
        return self.values.shape[0]

    @property
    def names(self) -> list[str]:
        return [a.name for a in self.attributes]

    def index_of(self, name: str) -> int:
        for j, a in enumerate(self.attributes):
            if a.name == name:
                return j
        raise DataError(f"unknown attribute {name!r}")

    # --- target
    @property
    def target_index(self) -> int:
        for j, a in enumerate(self.attributes):
            if a.is_target:
                return j
        raise AssertionError("unreachable")  # pragma: no cover

    @property
    def target(self) -> AttributeMeta:
        return self.attributes[self.target_index]

    @property
    def classes(self) -> tuple[str, ...]:
        return self.target.categories

    def target_codes(self) -> np.ndarray:
        col = self.values[:, self.target_index]
        if np.isnan(col).any():
            raise DataError(f"target {self.target.name!r} has missing cells")
        return col.astype(np.int64)

    def class_counts(self) -> np.ndarray:
        return np.bincount(self.target_codes(), minlength=len(self.classes))

    # --- regular attributes
    @property
    def regular_indices(self) -> list[int]:
        return [j for j, a in enumerate(self.attributes) if not a.is_target]

    @property
    def regular_attributes(self) -> tuple[AttributeMeta, ...]:
        return tuple(a for a in self.attributes if not a.is_target)

    @property
    def regular_names(self) -> list[str]:
        return [a.name for a in self.regular_attributes]

    def regular_values(self) -> np.ndarray:
        return self.values[:, self.regular_indices]

    @property
    def has_missing(self) -> bool:
        return bool(np.isnan(self.values).any())

    # --- derived datasets
    def take_rows(self, indices: T.Sequence[int], provenance: str | None = None) -> "Dataset":
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(
            attributes=self.attributes,
            values=self.values[indices],
            provenance=self.provenance if provenance is None else provenance,
            row_origin=self.row_origin[indices],
        )

    def with_provenance(self, provenance: str) -> "Dataset":
        return dataclasses.replace(self, provenance=provenance)

    def label_of(self, code: int) -> str:
        return self.classes[code]


# ------------------------------------------------------------------------------
# Ingestion
# ------------------------------------------------------------------------------
def _sort_categories(values: T.Iterable[str]) -> tuple[str, ...]:
    uniq = set(values)
    numbers = pd.to_numeric(pd.Series(sorted(uniq), dtype=object), errors="coerce")
    if len(uniq) and not numbers.isna().any():
        return tuple(sorted(uniq, key=lambda v: (float(v), v)))
    return tuple(sorted(uniq))


def read_frame(path: Path | str, delimiter: str = ",") -> pd.DataFrame:
    """
    Read a delimited text file into a frame of raw string cells; the first row
    is the header. Rows with too many or too few cells are rejected.
    """
    path = Path(path)
    try:
        raw = pd.read_csv(
            path,
            sep=delimiter,
            header=None,
            dtype=str,
            keep_default_na=False,
            encoding="utf-8",
        )
    except pd.errors.ParserError as e:
        raise DataError(f"ragged rows in {path}: {e}") from e
    except pd.errors.EmptyDataError as e:
        raise DataError(f"no header row in {path}") from e
    except (OSError, UnicodeDecodeError) as e:
        raise DataError(f"unreadable file {path}: {e}") from e
    header = [
        name.strip() if isinstance(name, str) else ""
        for name in raw.iloc[0].tolist()
    ]
    header = [name or f"Unnamed: {i}" for i, name in enumerate(header)]
    if len(set(header)) != len(header):
        raise DataError(f"duplicate column names in {path}: {header}")
    body = raw.iloc[1:].reset_index(drop=True)
    body.columns = header
    short = body.isna().any(axis=1).to_numpy()
    if short.any():
        line = int(np.flatnonzero(short)[0]) + 2
        raise DataError(f"ragged rows in {path}: line {line} has too few cells")
    return body


def read_arff_frame(path: Path | str, missing_token: str = MISSING_TOKEN) -> tuple[pd.DataFrame, list[str]]:
    """
    Read an attribute-relation file into a frame of raw string cells.

    :returns: the frame and the names of the attributes the file declares nominal.
    """
    path = Path(path)
    try:
        data, meta = arff.loadarff(str(path))
    except (OSError, UnicodeDecodeError) as e:
        raise DataError(f"unreadable file {path}: {e}") from e
    except ValueError as e:  # scipy raises its ParseArffError, a ValueError
        raise DataError(f"malformed arff file {path}: {e}") from e
    columns = {}
    nominal = []
    for name in meta.names():
        kind, _ = meta[name]
        col = data[name]
        if kind == "nominal":
            nominal.append(name)
            cells = [v.decode("utf-8") if isinstance(v, bytes) else str(v) for v in col]
        else:
            cells = [missing_token if np.isnan(v) else repr(float(v)) for v in col]
        columns[name] = cells
    return pd.DataFrame(columns, dtype=str), nominal


def dataset_from_frame(
    frame: pd.DataFrame,
    target: str,
    missing_token: str = MISSING_TOKEN,
    nominal_columns: T.Iterable[str] = (),
    provenance: str = "",
) -> Dataset:
    """
    Type the columns of a raw string frame and encode them.

    A column is numeric when every non-missing cell parses as a number, unless
    it is listed in ``nominal_columns``. The target is always nominal. Empty
    cells and ``missing_token`` cells are missing.
    """
    if target not in frame.columns:
        raise DataError(f"target column {target!r} absent, columns: {list(frame.columns)}")
    nominal_columns = set(nominal_columns)
    unknown = nominal_columns.difference(frame.columns)
    if unknown:
        raise DataError(f"nominal override names unknown columns: {sorted(unknown)}")

    attributes = []
    columns = []
    for name in frame.columns:
        cells = frame[name].astype(str).str.strip()
        missing = ((cells == "") | (cells == missing_token)).to_numpy()
        present = cells[~missing]
        is_target = name == target
        numbers = pd.to_numeric(present, errors="coerce")
        if not is_target and name not in nominal_columns and not numbers.isna().any():
            col = np.full(len(cells), np.nan)
            col[~missing] = numbers.to_numpy(dtype=np.float64)
            attributes.append(AttributeMeta(name=name, kind=AttributeKindEnum.numeric))
        else:
            if is_target and missing.any():
                line = int(np.flatnonzero(missing)[0]) + 2
                raise DataError(f"target column {target!r} has a missing cell at line {line}")
            categories = _sort_categories(present.tolist())
            if not categories:
                raise DataError(f"nominal column {name!r} has no value")
            lookup = {c: float(i) for i, c in enumerate(categories)}
            col = np.full(len(cells), np.nan)
            col[~missing] = present.map(lookup).to_numpy(dtype=np.float64)
            attributes.append(
                AttributeMeta(
                    name=name,
                    kind=AttributeKindEnum.nominal,
                    categories=categories,
                    role=AttributeRoleEnum.target if is_target else AttributeRoleEnum.regular,
                )
            )
        columns.append(col)
    values = np.column_stack(columns) if columns else np.empty((len(frame), 0))
    return Dataset(attributes=tuple(attributes), values=values, provenance=provenance)


def load_csv(
    path: Path | str,
    target: str,
    delimiter: str = ",",
    missing_token: str = MISSING_TOKEN,
    nominal_columns: T.Iterable[str] = (),
) -> Dataset:
    """
    Load a CSV file with a header row into a :class:`Dataset`.

    Missing cells of regular attributes are kept as missing, see
    :func:`impute_missing`. A missing target cell is an error.
    """
    frame = read_frame(path, delimiter=delimiter)
    return dataset_from_frame(
        frame,
        target=target,
        missing_token=missing_token,
        nominal_columns=nominal_columns,
        provenance=f"D_un {Path(path).name}",
    )


def load_arff(
    path: Path | str,
    target: str,
    missing_token: str = MISSING_TOKEN,
) -> Dataset:
    frame, nominal = read_arff_frame(path, missing_token=missing_token)
    return dataset_from_frame(
        frame,
        target=target,
        missing_token=missing_token,
        nominal_columns=[n for n in nominal if n != target],
        provenance=f"D_un {Path(path).name}",
    )


# ------------------------------------------------------------------------------
# Cleaning and encoding
# ------------------------------------------------------------------------------
def impute_missing(d: Dataset) -> Dataset:
    """
    Replace missing numeric cells by the attribute mean and missing nominal
    cells by the attribute mode (lowest category index on ties).
    """
    if np.isnan(d.values[:, d.target_index]).any():
        raise DataError(f"target {d.target.name!r} has missing cells")
    if not d.has_missing:
        return d
    values = np.array(d.values)
    for j, a in enumerate(d.attributes):
        col = values[:, j]
        missing = np.isnan(col)
        if not missing.any():
            continue
        if missing.all():
            raise DataError(f"attribute {a.name!r} is entirely missing")
        present = col[~missing]
        if a.is_nominal:
            fill = float(np.argmax(np.bincount(present.astype(np.int64))))
        else:
            fill = float(present.mean())
        col[missing] = fill
    return Dataset(
        attributes=d.attributes,
        values=values,
        provenance=d.provenance,
        row_origin=d.row_origin,
    )


def encode_numeric(d: Dataset) -> np.ndarray:
    """
    Instance-major numeric matrix of the regular attributes. Nominal cells
    are already category indices, so this is a projection plus a check.
    """
    x = d.regular_values()
    if np.isnan(x).any():
        raise DataError("encode_numeric requires a dataset without missing cells")
    return np.array(x)


@dataclasses.dataclass(frozen=True, eq=False)
class AttributeMatrix:
    """
    Transposed view: one row per regular attribute, one column per instance.

    :param means: per-attribute mean used by the normalization (zeros if off).
    :param stds: per-attribute std used by the normalization (ones if off,
        zero for constant rows).
    """

    names: tuple[str, ...]
    rows: np.ndarray
    means: np.ndarray
    stds: np.ndarray
    normalized: bool

    @property
    def n_rows(self) -> int:
        return self.rows.shape[0]

    def retranspose(self) -> np.ndarray:
        """
        Instance-major matrix with the normalization undone.
        """
        if not self.normalized:
            return np.array(self.rows.T)
        scale = np.where(self.stds > 0, self.stds, 0.0)
        return (self.rows * scale[:, None] + self.means[:, None]).T


def transpose(d: Dataset, normalize: bool = True) -> AttributeMatrix:
    """
    Turn attributes into points: row ``i`` is the encoded value vector of
    regular attribute ``i`` over all instances. With ``normalize`` each row is
    z-scored (population std); constant rows become all zeros.
    """
    x = encode_numeric(d)
    if x.shape[1] == 0:
        raise DataError("transpose needs at least one regular attribute")
    rows = x.T.copy()
    n_rows = rows.shape[0]
    if normalize and rows.shape[1] > 0:
        means = rows.mean(axis=1)
        stds = rows.std(axis=1)
        constant = stds <= EPS * np.maximum(1.0, np.abs(means))
        stds = np.where(constant, 0.0, stds)
        safe = np.where(constant, 1.0, stds)
        rows = (rows - means[:, None]) / safe[:, None]
        rows[constant] = 0.0
    else:
        means = np.zeros(n_rows)
        stds = np.ones(n_rows)
    rows.setflags(write=False)
    return AttributeMatrix(
        names=tuple(d.regular_names),
        rows=rows,
        means=means,
        stds=stds,
        normalized=normalize,
    )


def project_attributes(d: Dataset, names: T.Iterable[str], provenance: str | None = None) -> Dataset:
    """
    Keep the named regular attributes plus the target, in the dataset's
    column order. Rows, row order and target values are untouched.
    """
    names = list(names)
    if not names:
        raise DataError("project_attributes needs at least one attribute name")
    known = {a.name: a for a in d.attributes}
    for name in names:
        if name not in known:
            raise DataError(f"unknown attribute {name!r}")
        if known[name].is_target:
            raise DataError(f"cannot project the target {name!r} as a regular attribute")
    wanted = set(names)
    keep = [j for j, a in enumerate(d.attributes) if a.is_target or a.name in wanted]
    return Dataset(
        attributes=tuple(d.attributes[j] for j in keep),
        values=d.values[:, keep],
        provenance=d.provenance if provenance is None else provenance,
        row_origin=d.row_origin,
    )
