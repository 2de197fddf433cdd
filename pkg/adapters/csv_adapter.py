"""
File adapter for level lists, spacings and histograms in CSV (or the JSON mirror written by the tool).
"""

import csv
import json
import logging
import math
from pathlib import Path
from typing import Dict, List

import numpy as np

from errors import DomainError, OutputError
from spectral_stats import SpacingHistogram

from .adapter import IngestedLevels, LevelAdapter, LevelUnit

logger = logging.getLogger(__name__)

# Column names recognised for single-column level files, in order of preference
LEVEL_COLUMNS = ("value", "level", "f_GHz", "re_k_per_m", "k_per_m", "energy_per_m2")


def _parse_float(text: str, path: Path, row: int) -> float:
    try:
        return float(text)
    except (TypeError, ValueError):
        raise OutputError(f"{path}: row {row}: '{text}' is not a number")


class CsvLevelAdapter(LevelAdapter):
    """
    Adapter for comma-separated files with an optional header row.
    Files ending in .json are read as a list of records with the same field names.
    """

    def read_levels(self, path: Path, unit: LevelUnit) -> IngestedLevels:
        path = Path(path)
        rows = self._read_rows(path)
        if not rows:
            raise OutputError(f"{path}: no levels found")

        column = 0
        start = 0
        try:
            float(rows[0][0])
        except ValueError:
            header = [name.strip() for name in rows[0]]
            column = next((header.index(name) for name in LEVEL_COLUMNS if name in header), 0)
            start = 1

        values: List[float] = []
        for number, row in enumerate(rows[start:], start=start + 1):
            if column >= len(row):
                raise OutputError(f"{path}: row {number}: missing column {column + 1}")
            values.append(_parse_float(row[column], path, number))

        arr = np.asarray(values, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise DomainError(f"{path}: levels must be finite")
        if np.any(arr < 0):
            raise DomainError(f"{path}: levels must be non-negative")
        logger.info(f"Read {arr.size} levels in {unit.value} from {path}")
        return IngestedLevels(source=path, unit=unit, values=np.sort(arr))

    def read_spacings(self, path: Path) -> np.ndarray:
        path = Path(path)
        records = self._read_records(path)
        spacings = np.array([self._field(r, "s", path, i) for i, r in enumerate(records, start=2)], dtype=float)
        if np.any(spacings < 0):
            raise DomainError(f"{path}: spacings must be non-negative")
        return spacings

    def read_histogram(self, path: Path) -> SpacingHistogram:
        path = Path(path)
        records = self._read_records(path)
        if not records:
            raise OutputError(f"{path}: histogram has no bins")
        lo = [self._field(r, "bin_lo", path, i) for i, r in enumerate(records, start=2)]
        hi = [self._field(r, "bin_hi", path, i) for i, r in enumerate(records, start=2)]
        densities = [self._field(r, "density", path, i) for i, r in enumerate(records, start=2)]
        if any(a != b for a, b in zip(hi[:-1], lo[1:])):
            raise OutputError(f"{path}: histogram bins are not contiguous")
        edges = np.array(lo + [hi[-1]], dtype=float)
        return SpacingHistogram(bin_edges=edges, densities=np.array(densities, dtype=float), sample_count=0)

    # ========== FILE ACCESS ==========

    def _read_rows(self, path: Path) -> List[List[str]]:
        try:
            with open(path, "r", encoding="utf-8", newline="") as handle:
                return [row for row in csv.reader(handle) if row and any(cell.strip() for cell in row)]
        except OSError as e:
            raise OutputError(f"Failed to read {path}: {str(e)}")

    def _read_records(self, path: Path) -> List[Dict[str, object]]:
        try:
            with open(path, "r", encoding="utf-8", newline="") as handle:
                if path.suffix.lower() == ".json":
                    records = json.load(handle)
                    if not isinstance(records, list):
                        raise OutputError(f"{path}: expected a list of records")
                    return records
                return list(csv.DictReader(handle))
        except OSError as e:
            raise OutputError(f"Failed to read {path}: {str(e)}")
        except json.JSONDecodeError as e:
            raise OutputError(f"{path}: invalid JSON: {str(e)}")

    @staticmethod
    def _field(record: Dict[str, object], name: str, path: Path, row: int) -> float:
        if name not in record:
            raise OutputError(f"{path}: row {row}: missing field '{name}'")
        value = record[name]
        if isinstance(value, bool):
            raise OutputError(f"{path}: row {row}: '{name}' must be a number, got {value}")
        if isinstance(value, (int, float)):
            number = float(value)
        else:
            number = _parse_float(value, path, row)
        if not math.isfinite(number):
            raise DomainError(f"{path}: row {row}: '{name}' is not finite")
        return number

    def read_fields(self, path: Path) -> List[str]:
        """Header names of a CSV file, or the keys of the first record of a JSON file."""
        path = Path(path)
        if path.suffix.lower() == ".json":
            records = self._read_records(path)
            return list(records[0]) if records and isinstance(records[0], dict) else []
        rows = self._read_rows(path)
        return [name.strip() for name in rows[0]] if rows else []
