"""
Typed, count-weighted training relations.

A :class:`Dataset` is an immutable table whose rows carry a positive integer
count. Raw data loads with every count equal to 1; generalization merges rows
and accumulates the counts, so every score computed downstream weights a row
by its count.

Nominal values compare case-insensitively and ignoring whitespace. Each
dataset keeps a single representative spelling per value (the first one seen),
so plain ``==`` works on values taken from the same dataset, and
:func:`value_key` is used wherever values from different sources meet.
"""
from __future__ import annotations

import csv
import io
import math
import re
from collections.abc import Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

from .errors import DatasetError

NOMINAL = "nominal"
NUMERIC = "numeric"
REGULAR = "regular"
CLASS = "class"

_CURRENCY = re.compile(r"^[\$€£¥₹]")


def value_key(value):
    """Comparison key for an attribute value."""
    if isinstance(value, str):
        return "".join(value.split()).casefold()
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    return value


def name_key(name: str) -> str:
    return name.strip().casefold()


def parse_number(text: str) -> float:
    """Parse ``"$ 30000"``, ``"$120,000"`` or ``"7.5"`` into a float."""
    s = text.strip()
    s = _CURRENCY.sub("", s)
    s = s.replace(",", "").replace(" ", "")
    try:
        x = float(s)
    except ValueError:
        raise DatasetError(f"cannot parse {text!r} as a number") from None
    if not math.isfinite(x):
        raise DatasetError(f"non-finite number {text!r}")
    return x


def format_value(value) -> str:
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return str(value)


@dataclass(frozen=True)
class AttributeDescriptor:
    name: str
    kind: str = NOMINAL
    role: str = REGULAR

    def __post_init__(self):
        if self.kind not in (NOMINAL, NUMERIC):
            raise DatasetError(f"attribute {self.name!r}: unknown kind {self.kind!r}")
        if self.role not in (REGULAR, CLASS):
            raise DatasetError(f"attribute {self.name!r}: unknown role {self.role!r}")
        if not self.name or not self.name.strip():
            raise DatasetError("attribute name must be nonempty")

    @property
    def is_class(self) -> bool:
        return self.role == CLASS

    @property
    def is_numeric(self) -> bool:
        return self.kind == NUMERIC


class ClassDistribution(Mapping):
    """Ordered mapping ``class label -> count`` with only positive entries.

    Entry order is the class declaration order of the originating dataset;
    :meth:`majority` breaks ties by that order.
    """

    __slots__ = ("_counts", "_order")

    def __init__(self, counts=(), order: Sequence | None = None):
        pairs = counts.items() if isinstance(counts, Mapping) else counts
        raw: dict = {}
        for label, c in pairs:
            if c < 0:
                raise DatasetError(f"negative count for class {label!r}")
            raw[label] = raw.get(label, 0) + c
        if order is not None:
            ordered = {k: raw[k] for k in order if raw.get(k, 0) > 0}
            ordered.update((k, c) for k, c in raw.items() if c > 0 and k not in ordered)
            raw = ordered
        self._counts = {k: c for k, c in raw.items() if c > 0}
        if not self._counts:
            raise DatasetError("class distribution needs at least one positive count")
        self._order = tuple(order) if order is not None else tuple(self._counts)

    def __getitem__(self, label):
        return self._counts[label]

    def __iter__(self) -> Iterator:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return dict(self._counts) == dict(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._counts.items()))

    def __add__(self, other: "ClassDistribution") -> "ClassDistribution":
        merged = dict(self._counts)
        for k, c in other.items():
            merged[k] = merged.get(k, 0) + c
        order = self._order + tuple(k for k in other.order if k not in self._order)
        return ClassDistribution(merged, order=order)

    @property
    def total(self) -> int:
        return sum(self._counts.values())

    @property
    def order(self) -> tuple:
        """Class declaration order used for tie-breaking."""
        return self._order

    def majority(self):
        best, best_count = None, -1
        for label, c in self._counts.items():
            if c > best_count:
                best, best_count = label, c
        return best

    @property
    def majority_count(self) -> int:
        return self._counts[self.majority()]

    def __repr__(self) -> str:
        return "ClassDistribution(" + self.format() + ")"

    def format(self) -> str:
        inner = ", ".join(f"{format_value(k)}:{c}" for k, c in self._counts.items())
        return "{" + inner + "}"


class Dataset:
    """Immutable count-weighted relation over a typed schema."""

    __slots__ = ("schema", "tuples", "counts", "class_order", "_index")

    def __init__(
        self,
        schema: Sequence[AttributeDescriptor],
        tuples: Iterable[Sequence],
        counts: Iterable[int] | None = None,
        class_order: Sequence | None = None,
    ):
        schema = tuple(schema)
        index = {}
        for i, a in enumerate(schema):
            k = name_key(a.name)
            if k in index:
                raise DatasetError(f"duplicate attribute name {a.name!r}")
            index[k] = i
        if sum(a.is_class for a in schema) > 1:
            raise DatasetError("schema declares more than one class attribute")
        rows = [tuple(t) for t in tuples]
        for r in rows:
            if len(r) != len(schema):
                raise DatasetError(
                    f"row has {len(r)} values but schema has {len(schema)} attributes"
                )
        counts = tuple(int(c) for c in counts) if counts is not None else (1,) * len(rows)
        if len(counts) != len(rows):
            raise DatasetError("counts and tuples differ in length")
        if any(c < 1 for c in counts):
            raise DatasetError("tuple counts must be >= 1")

        # one spelling per nominal value
        canon: list[dict] = [{} for _ in schema]
        fixed = []
        for r in rows:
            out = []
            for j, v in enumerate(r):
                if schema[j].is_numeric and not schema[j].is_class:
                    out.append(float(v))
                else:
                    out.append(canon[j].setdefault(value_key(v), v))
            fixed.append(tuple(out))

        self.schema = schema
        self.tuples = tuple(fixed)
        self.counts = counts
        self._index = index
        ci = self._class_index()
        if ci is None:
            self.class_order = ()
        else:
            seen = {}
            for v in class_order or ():
                seen.setdefault(value_key(v), canon[ci].get(value_key(v), v))
            for r in self.tuples:
                seen.setdefault(value_key(r[ci]), r[ci])
            self.class_order = tuple(seen.values())

    # -- schema access -------------------------------------------------
    def _class_index(self):
        for i, a in enumerate(self.schema):
            if a.is_class:
                return i
        return None

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.schema)

    def index(self, name: str) -> int:
        try:
            return self._index[name_key(name)]
        except KeyError:
            raise DatasetError(f"unknown attribute {name!r}") from None

    def has_attribute(self, name: str) -> bool:
        return name_key(name) in self._index

    def attribute(self, name: str) -> AttributeDescriptor:
        return self.schema[self.index(name)]

    @property
    def class_attribute(self) -> AttributeDescriptor | None:
        i = self._class_index()
        return None if i is None else self.schema[i]

    @property
    def class_index(self) -> int:
        i = self._class_index()
        if i is None:
            raise DatasetError("no class attribute designated")
        return i

    def regular_attributes(self) -> list[str]:
        return [a.name for a in self.schema if not a.is_class]

    # -- data access ---------------------------------------------------
    def __len__(self) -> int:
        return len(self.tuples)

    @property
    def total_count(self) -> int:
        return sum(self.counts)

    def column(self, name: str) -> list:
        j = self.index(name)
        return [t[j] for t in self.tuples]

    def distinct(self, name: str) -> list:
        """Distinct values of an attribute in first-seen order."""
        j = self.index(name)
        return list(dict.fromkeys(t[j] for t in self.tuples))

    def rows(self) -> Iterator[dict]:
        for t in self.tuples:
            yield dict(zip(self.names, t))

    def subset(self, indices: Iterable[int]) -> "Dataset":
        idx = list(indices)
        return self._replace(
            tuples=[self.tuples[i] for i in idx], counts=[self.counts[i] for i in idx]
        )

    def with_class(self, name: str) -> "Dataset":
        """Copy of this dataset with ``name`` as the class attribute."""
        target = self.index(name)
        schema = [
            AttributeDescriptor(a.name, a.kind, CLASS if i == target else REGULAR)
            for i, a in enumerate(self.schema)
        ]
        keep_order = self._class_index() == target
        return Dataset(
            schema, self.tuples, self.counts, self.class_order if keep_order else None
        )

    def _replace(self, schema=None, tuples=None, counts=None) -> "Dataset":
        return Dataset(
            self.schema if schema is None else schema,
            self.tuples if tuples is None else tuples,
            self.counts if counts is None else counts,
            self.class_order,
        )

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.schema == other.schema
            and self.tuples == other.tuples
            and self.counts == other.counts
        )

    def __hash__(self):
        return hash((self.schema, self.tuples, self.counts))

    def __repr__(self) -> str:
        return f"Dataset({len(self)} tuples, total_count={self.total_count}, attributes={list(self.names)})"

    def to_csv(self, count_column: str | None = "count") -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        header = list(self.names) + ([count_column] if count_column else [])
        w.writerow(header)
        for t, c in zip(self.tuples, self.counts):
            w.writerow([format_value(v) for v in t] + ([c] if count_column else []))
        return buf.getvalue()


# -- schema / data loading ---------------------------------------------

def parse_schema(text: str) -> list[AttributeDescriptor]:
    """Parse ``name:kind[:class]`` lines; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(":")]
        if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2].lower() != CLASS):
            raise DatasetError(f"schema line {lineno}: expected name:kind[:class], got {raw!r}")
        role = CLASS if len(parts) == 3 else REGULAR
        out.append(AttributeDescriptor(parts[0], parts[1].lower(), role))
    if not out:
        raise DatasetError("schema declares no attributes")
    return out


def load_dataset(
    source: str,
    schema: Sequence[AttributeDescriptor],
    count_column: str | None = None,
) -> Dataset:
    """Load comma-separated text with a header row into a :class:`Dataset`.

    Header columns are matched to schema attributes by name (case-insensitive)
    and may appear in any order. ``count_column``, when given, names an extra
    column holding per-row counts (as written by :meth:`Dataset.to_csv`).
    """
    schema = list(schema)
    keys = [name_key(a.name) for a in schema]
    if len(set(keys)) != len(keys):
        dup = next(k for k in keys if keys.count(k) > 1)
        raise DatasetError(f"duplicate attribute name {dup!r}")
    reader = csv.reader(io.StringIO(source.strip("﻿")), skipinitialspace=True)
    rows = [r for r in reader if any(f.strip() for f in r)]
    if not rows:
        raise DatasetError("input has no header row")
    header = [name_key(h) for h in rows[0]]
    body = rows[1:]
    if not body:
        raise DatasetError("zero-row input")
    positions = {}
    for k, a in zip(keys, schema):
        if k not in header:
            raise DatasetError(f"column {a.name!r} missing from header")
        positions[k] = header.index(k)
    count_pos = None
    if count_column is not None:
        if name_key(count_column) not in header:
            raise DatasetError(f"count column {count_column!r} missing from header")
        count_pos = header.index(name_key(count_column))

    tuples, counts = [], []
    for lineno, row in enumerate(body, 2):
        if len(row) != len(header):
            raise DatasetError(
                f"line {lineno}: row has {len(row)} fields, header has {len(header)} columns"
            )
        values = []
        for k, a in zip(keys, schema):
            field = row[positions[k]].strip()
            if a.is_numeric:
                try:
                    values.append(parse_number(field))
                except DatasetError as e:
                    raise DatasetError(f"line {lineno}, column {a.name!r}: {e}") from None
            else:
                values.append(field)
        tuples.append(values)
        if count_pos is not None:
            try:
                counts.append(int(row[count_pos]))
            except ValueError:
                raise DatasetError(f"line {lineno}: bad count {row[count_pos]!r}") from None
    return Dataset(schema, tuples, counts if count_pos is not None else None)


def infer_schema(source: str, class_attr: str | None = None) -> list[AttributeDescriptor]:
    """Guess a schema: a column is numeric when every field parses as a number."""
    rows = [r for r in csv.reader(io.StringIO(source), skipinitialspace=True) if r]
    if not rows:
        raise DatasetError("input has no header row")
    out = []
    for j, name in enumerate(rows[0]):
        name = name.strip()
        kind = NUMERIC
        for r in rows[1:]:
            try:
                parse_number(r[j])
            except (DatasetError, IndexError):
                kind = NOMINAL
                break
        role = CLASS if class_attr and name_key(name) == name_key(class_attr) else REGULAR
        if role == CLASS:
            kind = NOMINAL
        out.append(AttributeDescriptor(name, kind, role))
    return out


def read_dataset(
    path: str | Path,
    schema_path: str | Path | None = None,
    class_attr: str | None = None,
    count_column: str | None = None,
) -> Dataset:
    """Read a CSV file; the schema defaults to a ``.schema`` sidecar file."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if schema_path is None:
        sidecar = path.with_suffix(".schema")
        schema_path = sidecar if sidecar.exists() else None
    if schema_path is not None:
        schema = parse_schema(Path(schema_path).read_text(encoding="utf-8"))
    else:
        schema = infer_schema(text, class_attr)
    d = load_dataset(text, schema, count_column=count_column)
    if class_attr is not None:
        d = d.with_class(class_attr)
    return d


# -- row operations -----------------------------------------------------

def aggregate_merge(d: Dataset, sum_attrs: Iterable[str] = ()) -> Dataset:
    """Merge rows equal on every attribute outside ``sum_attrs``.

    Counts are summed, as are the values of the ``sum_attrs`` columns.
    First-seen row order is kept.
    """
    sum_idx = {d.index(a) for a in sum_attrs}
    groups: dict = {}
    order = []
    for t, c in zip(d.tuples, d.counts):
        key = tuple(value_key(v) for j, v in enumerate(t) if j not in sum_idx)
        if key not in groups:
            groups[key] = [list(t), c]
            order.append(key)
        else:
            g = groups[key]
            g[1] += c
            for j in sum_idx:
                g[0][j] += t[j]
    return d._replace(tuples=[groups[k][0] for k in order], counts=[groups[k][1] for k in order])


def merge_identical_tuples(d: Dataset) -> Dataset:
    """Collapse identical rows into one row carrying the summed count."""
    return aggregate_merge(d)


def project(d: Dataset, keep: Sequence[str], sum_attrs: Iterable[str] = (), class_attr: str | None = None) -> Dataset:
    """Keep the named columns (in the given order), then re-merge.

    ``class_attr`` selects the class of the result; by default the current
    class is kept if it survives the projection, otherwise the first kept
    attribute becomes the class.
    """
    idx = [d.index(a) for a in keep]
    if len(set(idx)) != len(idx):
        raise DatasetError("projection names an attribute twice")
    if class_attr is None:
        ci = d._class_index()
        class_pos = idx.index(ci) if ci in idx else 0
    else:
        ci = d.index(class_attr)
        if ci not in idx:
            raise DatasetError(f"class attribute {class_attr!r} not among kept attributes")
        class_pos = idx.index(ci)
    schema = [
        AttributeDescriptor(d.schema[j].name, d.schema[j].kind, CLASS if p == class_pos else REGULAR)
        for p, j in enumerate(idx)
    ]
    same_class = idx[class_pos] == d._class_index()
    out = Dataset(
        schema,
        [[t[j] for j in idx] for t in d.tuples],
        d.counts,
        d.class_order if same_class else None,
    )
    return aggregate_merge(out, [a for a in sum_attrs if out.has_attribute(a)])


def class_distribution(d: Dataset) -> ClassDistribution:
    """Count-weighted class tally of ``d``."""
    ci = d.class_index
    tally: dict = {}
    for t, c in zip(d.tuples, d.counts):
        tally[t[ci]] = tally.get(t[ci], 0) + c
    return ClassDistribution(tally, order=d.class_order)


def rename_attribute(d: Dataset, old: str, new: str) -> Dataset:
    j = d.index(old)
    if d.has_attribute(new) and d.index(new) != j:
        raise DatasetError(f"attribute {new!r} already exists")
    schema = list(d.schema)
    schema[j] = AttributeDescriptor(new, schema[j].kind, schema[j].role)
    return d._replace(schema=schema)


def concat(a: Dataset, b: Dataset) -> Dataset:
    """Rows of ``a`` followed by rows of ``b`` (same schema)."""
    if [name_key(x) for x in a.names] != [name_key(x) for x in b.names]:
        raise DatasetError("cannot concatenate datasets with different schemas")
    return a._replace(tuples=a.tuples + b.tuples, counts=a.counts + b.counts)


def partition(d: Dataset, attr: str) -> dict[Hashable, Dataset]:
    """Split ``d`` by the values of a nominal attribute, first-seen order."""
    j = d.index(attr)
    groups: dict = {}
    for i, t in enumerate(d.tuples):
        groups.setdefault(t[j], []).append(i)
    return {v: d.subset(ix) for v, ix in groups.items()}
