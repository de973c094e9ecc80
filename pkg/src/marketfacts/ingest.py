"""File-based ingestion of daily OHLC CSV data (stooq/yahoo layouts) into
validated :class:`~marketfacts.timeseries.PriceSeries`."""

from __future__ import annotations

import csv
import datetime as _dt
import json
from dataclasses import dataclass, field

from .errors import DuplicateDate, EmptyWindow, SchemaError
from .timeseries import PriceSeries


@dataclass(frozen=True)
class CsvSpec:
    """Column layout of a daily price file.

    With ``header_present`` the columns are named; without a header,
    ``date_column`` and ``price_column`` are zero-based column indices
    given as strings (e.g. "0").
    """

    date_column: str = "Date"
    price_column: str = "Open"
    date_format: str = "%Y-%m-%d"
    delimiter: str = ","
    header_present: bool = True


@dataclass(frozen=True)
class IngestReport:
    """Row accounting of one file read; rows_in = used + skipped + out_of_window."""

    rows_in: int
    rows_used: int
    rows_skipped: int
    rows_out_of_window: int


def _parse_date(text: str):
    return _dt.datetime.strptime(text.strip(), "%Y-%m-%d").date()


def read_prices_report(
    path,
    spec: CsvSpec = CsvSpec(),
    from_date=None,
    to_date=None,
) -> tuple[PriceSeries, IngestReport]:
    """Parse, window-filter and validate a daily price file.

    Window boundaries are inclusive; ``from_date``/``to_date`` may be ISO
    date strings or ``datetime.date``.  Rows whose price is missing,
    unparseable or non-positive (or whose date is unparseable) are skipped
    and counted.  Duplicate dates are an error, not a dedup.
    """
    if isinstance(from_date, str):
        from_date = _parse_date(from_date)
    if isinstance(to_date, str):
        to_date = _parse_date(to_date)
    if from_date is not None and to_date is not None and from_date > to_date:
        raise ValueError(f"window start {from_date} after end {to_date}")

    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter=spec.delimiter)
        rows = list(reader)

    start = 0
    if spec.header_present:
        if not rows:
            raise SchemaError(f"{path}: empty file, no header")
        header = [h.strip() for h in rows[0]]
        try:
            date_idx = header.index(spec.date_column)
        except ValueError:
            raise SchemaError(
                f"{path}: column {spec.date_column!r} not in header {header}"
            ) from None
        try:
            price_idx = header.index(spec.price_column)
        except ValueError:
            raise SchemaError(
                f"{path}: column {spec.price_column!r} not in header {header}"
            ) from None
        start = 1
    else:
        try:
            date_idx = int(spec.date_column)
            price_idx = int(spec.price_column)
        except ValueError:
            raise SchemaError(
                "without a header, date_column and price_column must be indices"
            ) from None

    rows_in = rows_used = rows_skipped = rows_out = 0
    seen: dict = {}  # date -> line number
    records = []
    for lineno, row in enumerate(rows[start:], start=start + 1):
        if not row or all(not cell.strip() for cell in row):
            continue
        rows_in += 1
        if max(date_idx, price_idx) >= len(row):
            rows_skipped += 1
            continue
        try:
            date = _dt.datetime.strptime(
                row[date_idx].strip(), spec.date_format
            ).date()
        except ValueError:
            rows_skipped += 1
            continue
        try:
            price = float(row[price_idx])
        except ValueError:
            rows_skipped += 1
            continue
        if not price > 0.0:
            rows_skipped += 1
            continue
        if date in seen:
            raise DuplicateDate(
                f"{path}: date {date} on lines {seen[date]} and {lineno}"
            )
        seen[date] = lineno
        if (from_date is not None and date < from_date) or (
            to_date is not None and date > to_date
        ):
            rows_out += 1
            continue
        rows_used += 1
        records.append((date, price))

    if not records:
        raise EmptyWindow(
            f"{path}: no usable rows in window [{from_date}, {to_date}]"
        )
    records.sort(key=lambda rec: rec[0])
    series = PriceSeries(
        dates=tuple(d for d, _ in records),
        prices=[p for _, p in records],
        label=str(path),
    )
    report = IngestReport(
        rows_in=rows_in,
        rows_used=rows_used,
        rows_skipped=rows_skipped,
        rows_out_of_window=rows_out,
    )
    return series, report


def read_prices(path, spec: CsvSpec = CsvSpec(), from_date=None, to_date=None) -> PriceSeries:
    series, _ = read_prices_report(path, spec, from_date, to_date)
    return series


@dataclass(frozen=True)
class ManifestEntry:
    """One (label, file, window) item of a batch-analysis manifest."""

    label: str
    path: str
    from_date: str | None = None
    to_date: str | None = None
    price_column: str | None = None


def load_manifest(path) -> list[ManifestEntry]:
    """Read a JSON manifest: a list of {label, path, from, to, price_column}."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, list):
        raise SchemaError(f"{path}: manifest must be a JSON list")
    entries = []
    for i, item in enumerate(doc):
        if not isinstance(item, dict) or "label" not in item or "path" not in item:
            raise SchemaError(f"{path}: entry {i} needs 'label' and 'path'")
        entries.append(
            ManifestEntry(
                label=str(item["label"]),
                path=str(item["path"]),
                from_date=item.get("from"),
                to_date=item.get("to"),
                price_column=item.get("price_column"),
            )
        )
    return entries
