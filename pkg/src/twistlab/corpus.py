"""Curve corpus ingestion: CSV files with header label,a1,a2,a3,a4,a6."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .curve import WeierstrassCurve
from .errors import CurveParseError

_HEADER = ["label", "a1", "a2", "a3", "a4", "a6"]


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    curve: WeierstrassCurve


def _parse_rows(reader: csv.reader, source: str) -> list[CorpusEntry]:
    try:
        header = next(reader)
    except StopIteration:
        raise CurveParseError(f"{source}: empty corpus file") from None
    if [h.strip() for h in header] != _HEADER:
        raise CurveParseError(
            f"{source}: expected header {','.join(_HEADER)}, got {','.join(header)}"
        )
    entries: list[CorpusEntry] = []
    seen: set[str] = set()
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != 6:
            raise CurveParseError(f"{source}:{lineno}: expected 6 columns, got {len(row)}")
        label = row[0].strip()
        if not label:
            raise CurveParseError(f"{source}:{lineno}: empty label")
        if label in seen:
            raise CurveParseError(f"{source}:{lineno}: duplicate label {label!r}")
        seen.add(label)
        try:
            coeffs = [Fraction(v.strip()) for v in row[1:]]
        except (ValueError, ZeroDivisionError) as exc:
            raise CurveParseError(f"{source}:{lineno}: bad coefficient: {exc}") from exc
        E = WeierstrassCurve(*coeffs)
        if E.disc == 0:
            raise CurveParseError(f"{source}:{lineno}: curve {label!r} is singular")
        entries.append(CorpusEntry(label, E))
    return entries


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    """Read and validate a corpus CSV file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CurveParseError(f"cannot read corpus {path}: {exc}") from exc
    return _parse_rows(csv.reader(io.StringIO(text)), str(path))


def fixture_corpus() -> list[CorpusEntry]:
    """The bundled corpus of worked-example curves."""
    text = resources.files("twistlab.data").joinpath("fixture_corpus.csv").read_text()
    return _parse_rows(csv.reader(io.StringIO(text)), "fixture_corpus.csv")
